//! Combinatorial modules `(A)/(B)` over monoid rings: graded pieces,
//! annihilators, prime filtrations and restriction of scalars.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::diophantine::{minimal_solutions, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::ideal::{contract, intersect_shifts, FractionalIdeal, Inclusion, MonoidIdeal};
use crate::lattice::{quotient_presentation, GroupElement};
use crate::monoid::{fmt_vector, MonoidPresentation};
use crate::vector::{self, Vector};

/// The module `(A)/(B)` spanned by the monomials `t^g`, `g ∈ A ∖ B`,
/// regarded over `Z[P]/(K)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombinatorialModule {
    #[serde(skip)]
    parent: MonoidPresentation,
    numerator: FractionalIdeal,
    denominator: FractionalIdeal,
    relative_to: MonoidIdeal,
}

impl CombinatorialModule {
    /// Checks `B ⊆ A` and `A + K ⊆ B`.
    pub fn new(numerator: FractionalIdeal, denominator: FractionalIdeal, relative_to: MonoidIdeal) -> Result<Self> {
        let parent = numerator.parent().clone();
        if denominator.parent() != &parent || relative_to.parent() != &parent {
            return Err(Error::ParentMismatch);
        }
        if let Some(b) = denominator.generators().iter().find(|b| !numerator.contains(b)) {
            return Err(Error::Invalid(format!(
                "denominator generator {} is not in the numerator",
                fmt_vector(b)
            )));
        }
        let m = CombinatorialModule {
            parent,
            numerator,
            denominator,
            relative_to,
        };
        if !m.is_annihilated_by(&m.relative_to) {
            return Err(Error::NotAnnihilated);
        }
        Ok(m)
    }

    /// `Z[P]` itself.
    pub fn free(p: &MonoidPresentation) -> Self {
        CombinatorialModule {
            parent: p.clone(),
            numerator: FractionalIdeal::whole(p),
            denominator: FractionalIdeal::empty(p),
            relative_to: MonoidIdeal::empty(p),
        }
    }

    /// `Z[P]/(K)` as a module over itself.
    pub fn quotient_ring(k: &MonoidIdeal) -> Self {
        let p = k.parent();
        CombinatorialModule {
            parent: p.clone(),
            numerator: FractionalIdeal::whole(p),
            denominator: k.as_fractional().clone(),
            relative_to: k.clone(),
        }
    }

    pub fn parent(&self) -> &MonoidPresentation {
        &self.parent
    }

    pub fn numerator(&self) -> &FractionalIdeal {
        &self.numerator
    }

    pub fn denominator(&self) -> &FractionalIdeal {
        &self.denominator
    }

    pub fn relative_to(&self) -> &MonoidIdeal {
        &self.relative_to
    }

    /// The same `(A)/(B)` regarded over `Z[P]/(K')`.
    pub fn with_relative(&self, k: &MonoidIdeal) -> Result<Self> {
        Self::new(self.numerator.clone(), self.denominator.clone(), k.clone())
    }

    /// `A + K ⊆ B`.
    pub fn is_annihilated_by(&self, k: &MonoidIdeal) -> bool {
        self.numerator.generators().iter().all(|a| {
            k.generators()
                .iter()
                .all(|kg| self.denominator.contains(&vector::add(a, kg)))
        })
    }

    /// Rank of the degree-`g` piece: 1 iff `g ∈ A ∖ B`.
    pub fn graded_piece(&self, g: &[i64]) -> usize {
        usize::from(self.numerator.contains(g) && !self.denominator.contains(g))
    }

    pub fn is_zero(&self) -> bool {
        self.numerator
            .generators()
            .iter()
            .all(|a| self.denominator.contains(a))
    }

    /// Numerator generators not already in the denominator: a minimal
    /// generating set of the module, in (weight, lex) order.
    pub fn minimal_generators(&self) -> Vec<Vector> {
        self.numerator
            .generators()
            .iter()
            .filter(|a| !self.denominator.contains(a))
            .cloned()
            .collect()
    }

    /// `(E/(J)E)`: the quotient by `J`, i.e. `(A)/(B ∪ (A + J))`, over
    /// `Z[P]/(J ∪ K)`.
    pub fn quotient_by(&self, j: &MonoidIdeal) -> Result<Self> {
        let aj = self.numerator.sumset(j.as_fractional())?;
        let b = self.denominator.union(&aj)?;
        let k = self.relative_to.union(j)?;
        Self::new(self.numerator.clone(), b, k)
    }

    /// `{p ∈ P : g + p ∈ B} ∪ K` for `g ∈ A ∖ B`.
    pub fn element_annihilator(&self, g: &[i64]) -> Result<MonoidIdeal> {
        if self.graded_piece(g) == 0 {
            return Err(Error::DegreeNotPresent(g.to_vec()));
        }
        annihilator(&self.parent, &self.denominator, &self.relative_to, g)
    }

    /// Elements of `A ∖ B` of weight at most `bound`.
    pub fn support_up_to_weight(&self, bound: i64) -> Vec<Vector> {
        self.numerator
            .elements_up_to_weight(bound)
            .into_iter()
            .filter(|v| !self.denominator.contains(v))
            .collect()
    }
}

fn annihilator(p: &MonoidPresentation, b: &FractionalIdeal, k: &MonoidIdeal, g: &[i64]) -> Result<MonoidIdeal> {
    let mut gens: Vec<Vector> = k.generators().to_vec();
    for bg in b.generators() {
        for m in intersect_shifts(g, bg, p)? {
            gens.push(vector::sub(&m, g));
        }
    }
    MonoidIdeal::new(p, gens)
}

/// For a proper non-prime ideal `I`: elements `p, q ∉ I` with `p + q ∈ I`.
///
/// The complement of `I` is a face iff the submonoid generated by the
/// generators outside `I` misses `I`. A minimal element of that
/// intersection is found exactly, then peeled one generator at a time until
/// the running sum first enters `I`.
pub fn non_primality_witness(i: &MonoidIdeal) -> Result<Option<(Vector, Vector)>> {
    let p = i.parent();
    let outside: Vec<Vector> = p
        .generators()
        .iter()
        .filter(|g| !i.contains(g))
        .cloned()
        .collect();
    let mut columns = outside.clone();
    columns.extend(p.generators().iter().map(|g| vector::neg(g)));
    let mut best: Option<(i64, Vector, Vec<u32>)> = None;
    for k in i.generators() {
        for s in minimal_solutions(p.ambient_rank(), &columns, k, DEFAULT_BUDGET)? {
            let mut x = p.zero();
            for (g, &c) in outside.iter().zip(&s) {
                x = vector::add(&x, &vector::scale(g, c as i64));
            }
            let w = p.weight(&x);
            let better = match &best {
                None => true,
                Some((bw, bx, _)) => vector::weight_lex(w, &x, *bw, bx).is_lt(),
            };
            if better {
                best = Some((w, x, s[..outside.len()].to_vec()));
            }
        }
    }
    let Some((_, _, coeffs)) = best else {
        return Ok(None);
    };
    let mut running = p.zero();
    for (g, &c) in outside.iter().zip(&coeffs) {
        for _ in 0..c {
            let next = vector::add(&running, g);
            if i.contains(&next) {
                return Ok(Some((running, g.clone())));
            }
            running = next;
        }
    }
    unreachable!("the minimal element lies in the ideal")
}

/// One step of a prime filtration: the quotient `N_i / N_{i-1}` is
/// `Z[P]/(prime)` shifted to `witness`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationStep {
    pub prime: MonoidIdeal,
    pub witness: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeFiltration {
    pub module: CombinatorialModule,
    pub steps: Vec<FiltrationStep>,
}

impl PrimeFiltration {
    /// Replays the steps against the module: each witness must be a nonzero
    /// element whose annihilator is the recorded prime, and adjoining all
    /// witnesses must exhaust the module. Returns the first problem found.
    pub fn replay(&self) -> std::result::Result<(), String> {
        let e = &self.module;
        let mut b = e.denominator.clone();
        for (n, step) in self.steps.iter().enumerate() {
            let w = &step.witness;
            if !e.numerator.contains(w) || b.contains(w) {
                return Err(format!("step {n}: witness {} is zero in the module", fmt_vector(w)));
            }
            let ann = annihilator(&e.parent, &b, &e.relative_to, w).map_err(|x| x.to_string())?;
            if !ann.same_set(&step.prime) {
                return Err(format!("step {n}: annihilator {ann:?} differs from {:?}", step.prime));
            }
            if !step.prime.is_prime() {
                return Err(format!("step {n}: {:?} is not prime", step.prime));
            }
            b = b
                .union(&FractionalIdeal::new(&e.parent, vec![w.clone()]).map_err(|x| x.to_string())?)
                .map_err(|x| x.to_string())?;
        }
        if let Some(a) = e.numerator.generators().iter().find(|a| !b.contains(a)) {
            return Err(format!("{} survives all steps", fmt_vector(a)));
        }
        Ok(())
    }

    pub fn primes(&self) -> Vec<MonoidIdeal> {
        self.steps.iter().map(|s| s.prime.clone()).collect()
    }
}

/// Filtration `0 = N_0 ⊂ ... ⊂ N_n = E` with `N_i/N_{i-1} ≅ Z[P]/(𝔭_i)`.
///
/// Repeatedly takes the first minimal generator `g` of what is left; while
/// its annihilator is not prime, replaces `g` by `g + p` for a witness
/// `p, q ∉ ann(g)`, `p + q ∈ ann(g)`, which strictly enlarges the
/// annihilator. The prime step is recorded and `g + P` is added to the
/// denominator.
pub fn prime_filtration(e: &CombinatorialModule) -> Result<PrimeFiltration> {
    let p = &e.parent;
    let mut b = e.denominator.clone();
    let mut steps = Vec::new();
    while let Some(start) = e.numerator.generators().iter().find(|a| !b.contains(a)) {
        let mut g = start.clone();
        let ann = loop {
            let ann = annihilator(p, &b, &e.relative_to, &g)?;
            match non_primality_witness(&ann)? {
                None => break ann,
                Some((bump, _)) => g = vector::add(&g, &bump),
            }
        };
        b = b.union(&FractionalIdeal::new(p, vec![g.clone()])?)?;
        steps.push(FiltrationStep { prime: ann, witness: g });
    }
    Ok(PrimeFiltration {
        module: e.clone(),
        steps,
    })
}

/// One summand of a restriction of scalars: the part of `E` living on the
/// coset `coset_rep + ι(P^gp)`, pulled back to `P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictedSummand {
    pub coset_rep: Vector,
    pub module: CombinatorialModule,
}

/// Decomposes a combinatorial `Z[Q]/(K)`-module along `ι: P -> Q` into
/// combinatorial `Z[P]/(K ∩ P)`-modules, one per coset of `ι(P^gp)` in
/// `Q^gp` meeting `A ∖ B`.
///
/// Needs `ι(P^gp)` of finite index and `Q ⊆ C(ι(P))`; then
/// `Q = T + ι(P)` for the finite set `T` of partial sums `sum d_j h_j` with
/// `d_j` below the least `m_j` such that `m_j h_j ∈ ι(P)`. Both `m_j` and
/// `|T|` are capped by `coset_bound`.
pub fn restrict_scalars(e: &CombinatorialModule, inc: &Inclusion, coset_bound: u64) -> Result<Vec<RestrictedSummand>> {
    let q = inc.target();
    let p = inc.source();
    if e.parent() != q {
        return Err(Error::ParentMismatch);
    }
    if p.gp_rank() != q.gp_rank() {
        return Err(Error::BoundExceeded {
            what: "coset enumeration (infinitely many cosets)",
            bound: coset_bound,
        });
    }
    let ip_gens: Vec<Vector> = p.generators().iter().map(|g| inc.apply(g)).collect();
    let image = MonoidPresentation::new(q.ambient_rank(), ip_gens)?;
    let mut multiples = Vec::new();
    for h in q.generators() {
        let m = (1..=coset_bound as i64)
            .find(|&m| image.contains(&vector::scale(h, m)))
            .ok_or(Error::BoundExceeded {
                what: "coset enumeration",
                bound: coset_bound,
            })?;
        multiples.push(m);
    }
    let mut shifts: Vec<Vector> = vec![q.zero()];
    for (h, &m) in q.generators().iter().zip(&multiples) {
        let mut next = Vec::new();
        for t in &shifts {
            for d in 0..m {
                next.push(vector::add(t, &vector::scale(h, d)));
            }
        }
        next.sort();
        next.dedup();
        if next.len() as u64 > coset_bound {
            return Err(Error::BoundExceeded {
                what: "coset enumeration",
                bound: coset_bound,
            });
        }
        shifts = next;
    }

    let sub: Vec<Vector> = p
        .gp_lattice()
        .basis()
        .iter()
        .map(|b| q.gp_coords(&inc.apply(b)).expect("image in Q^gp"))
        .collect();
    let cosets = quotient_presentation(q.gp_rank(), &sub);
    let key = |v: &[i64]| cosets.project(&q.gp_coords(v).expect("in Q^gp"));
    let group = |gens: &[Vector]| -> BTreeMap<GroupElement, Vec<Vector>> {
        let mut out: BTreeMap<GroupElement, Vec<Vector>> = BTreeMap::new();
        for g in gens {
            for t in &shifts {
                let v = vector::add(g, t);
                out.entry(key(&v)).or_default().push(v);
            }
        }
        out
    };
    let a_parts = group(e.numerator.generators());
    let b_parts = group(e.denominator.generators());
    let k_p = contract(e.relative_to(), inc)?;

    let mut out = Vec::new();
    for (class, a_gens) in a_parts {
        let rep = q.gp_lattice().point(&cosets.lift(&class));
        let pull = |vs: &[Vector]| -> Result<Vec<Vector>> {
            vs.iter()
                .map(|v| {
                    inc.preimage(&vector::sub(v, &rep))
                        .ok_or_else(|| Error::Invalid("coset representative mismatch".into()))
                })
                .collect()
        };
        let a = FractionalIdeal::new(p, pull(&a_gens)?)?;
        let b = match b_parts.get(&class) {
            Some(bs) => FractionalIdeal::new(p, pull(bs)?)?,
            None => FractionalIdeal::empty(p),
        };
        let module = CombinatorialModule::new(a, b, k_p.clone())?;
        if !module.is_zero() {
            out.push(RestrictedSummand { coset_rep: rep, module });
        }
    }
    Ok(out)
}
