//! Degreewise `Tor₁` over `Z[P]/(K)` from explicit monomial presentations,
//! t-flatness verdicts with replayable witnesses, the associated-graded
//! multiplication check, bounded obstruction ideals and log-regularity
//! reports.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{intersect_shifts, prime_ideals, MonoidIdeal};
use crate::lattice::{smith_normal_form, IntMatrix};
use crate::modcomb::CombinatorialModule;
use crate::monoid::{fmt_vector, MonoidPresentation};
use crate::par;
use crate::vector::{self, Vector};

/// A binomial relation `t^{m - j_i} e_i - t^{m - j_l} e_l` of degree `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Syzygy {
    pub degree: Vector,
    pub first: usize,
    pub second: usize,
}

/// A monomial relation `t^{m - j_i} e_i` of degree `m ∈ K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Annihilation {
    pub degree: Vector,
    pub index: usize,
}

/// Presentation `F₁ -> F₀ -> (J)/(K) -> 0` over `Z[P]/(K)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialPresentation {
    pub ideal: MonoidIdeal,
    pub relative_to: MonoidIdeal,
    pub free_gens: Vec<Vector>,
    pub syzygies: Vec<Syzygy>,
    pub annihilations: Vec<Annihilation>,
}

/// Generators `j_i` of `J`; pairwise syzygies at the minimal generators of
/// `(j_i + P) ∩ (j_l + P)`; annihilations at the minimal generators of
/// `(j_i + P) ∩ K`.
pub fn present_ideal(j: &MonoidIdeal, k: &MonoidIdeal) -> Result<MonomialPresentation> {
    if j.parent() != k.parent() {
        return Err(Error::ParentMismatch);
    }
    if !j.contains_ideal(k) {
        return Err(Error::NotContained);
    }
    let p = j.parent();
    let gens = j.generators().to_vec();
    let mut syzygies = Vec::new();
    for a in 0..gens.len() {
        for b in a + 1..gens.len() {
            for m in intersect_shifts(&gens[a], &gens[b], p)? {
                syzygies.push(Syzygy {
                    degree: m,
                    first: a,
                    second: b,
                });
            }
        }
    }
    let mut annihilations = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let mut degrees = Vec::new();
        for kg in k.generators() {
            degrees.extend(intersect_shifts(g, kg, p)?);
        }
        for m in crate::ideal::reduce_generators(p, &degrees) {
            annihilations.push(Annihilation { degree: m, index: i });
        }
    }
    Ok(MonomialPresentation {
        ideal: j.clone(),
        relative_to: k.clone(),
        free_gens: gens,
        syzygies,
        annihilations,
    })
}

/// A finitely generated abelian group `Z^rank ⊕ ⊕ Z/torsion_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Homology {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

impl Homology {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Homology of `Z^{c1} --d1--> Z^{c0} --d0--> Z^{c_-1}`, given `d0 ∘ d1 = 0`.
///
/// `ker d0` is saturated in `Z^{c0}`, so the torsion of `ker d0 / im d1`
/// is that of `Z^{c0} / im d1`.
pub fn homology(c0: usize, d0: &[Vector], d1_columns: &[Vector]) -> Homology {
    let rank0 = if d0.is_empty() {
        0
    } else {
        IntMatrix::from_rows(c0, d0).rank()
    };
    let (rank1, torsion) = if d1_columns.is_empty() {
        (0, Vec::new())
    } else {
        let s = smith_normal_form(&IntMatrix::from_columns(c0, d1_columns));
        let diag = s.diagonal();
        let torsion = diag
            .iter()
            .filter(|d| **d > 1.into())
            .map(|d| crate::lattice::big_to_i64(d).expect("torsion overflow"))
            .collect();
        (diag.len(), torsion)
    };
    Homology {
        rank: c0 - rank0 - rank1,
        torsion,
    }
}

/// `Tor₁^{Z[P]/(K)}(Z[P]/(J), E)` in degree `g`: the kernel of
/// `((J)/(K) ⊗ E)_g -> E_g`, with the tensor product read off the
/// presentation as `coker(F₁ ⊗ E -> F₀ ⊗ E)` in degree `g`.
pub fn tor1_piece(pres: &MonomialPresentation, e: &CombinatorialModule, g: &[i64]) -> Result<Homology> {
    if !e.is_annihilated_by(&pres.relative_to) {
        return Err(Error::NotAnnihilated);
    }
    Ok(tor1_unchecked(pres, e, g))
}

fn tor1_unchecked(pres: &MonomialPresentation, e: &CombinatorialModule, g: &[i64]) -> Homology {
    // basis of (F₀ ⊗ E)_g: generators i with g - j_i in A ∖ B
    let mut slot = vec![usize::MAX; pres.free_gens.len()];
    let mut c0 = 0;
    for (i, j) in pres.free_gens.iter().enumerate() {
        if e.graded_piece(&vector::sub(g, j)) == 1 {
            slot[i] = c0;
            c0 += 1;
        }
    }
    if c0 == 0 {
        return Homology::default();
    }
    let d0: Vec<Vector> = if e.graded_piece(g) == 1 {
        vec![vec![1; c0]]
    } else {
        Vec::new()
    };
    let mut d1 = Vec::new();
    for s in &pres.syzygies {
        if e.graded_piece(&vector::sub(g, &s.degree)) == 0 {
            continue;
        }
        let mut col = vec![0i64; c0];
        if slot[s.first] != usize::MAX {
            col[slot[s.first]] += 1;
        }
        if slot[s.second] != usize::MAX {
            col[slot[s.second]] -= 1;
        }
        d1.push(col);
    }
    for a in &pres.annihilations {
        if e.graded_piece(&vector::sub(g, &a.degree)) == 0 {
            continue;
        }
        let mut col = vec![0i64; c0];
        if slot[a.index] != usize::MAX {
            col[slot[a.index]] += 1;
        }
        d1.push(col);
    }
    homology(c0, &d0, &d1)
}

/// Degrees where `(F₀ ⊗ E)_g` can be nonzero: `j + a + p` over generators
/// `j` of `J`, `a` of `A`, and `p ∈ P / P*`, with weight at most `bound`.
/// Sorted by (weight, lex).
pub fn candidate_degrees(pres: &MonomialPresentation, e: &CombinatorialModule, bound: i64) -> Vec<Vector> {
    let p = e.parent();
    let mut out = Vec::new();
    for j in &pres.free_gens {
        for a in e.numerator().generators() {
            let base = vector::add(j, a);
            for x in p.elements_up_to_weight(bound - p.weight(&base)) {
                let v = vector::add(&base, &x);
                out.push(p.reduce_mod_units(&v).expect("in P^gp"));
            }
        }
    }
    p.sort_degrees(&mut out);
    out.dedup();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorQuery {
    pub relative_to: MonoidIdeal,
    pub module: CombinatorialModule,
    pub bound: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TorResult {
    /// A degree where `Tor₁` is nonzero: a proof of non-flatness.
    NotTFlat {
        witness_prime: MonoidIdeal,
        prime_index: usize,
        degree: Vector,
        weight: i64,
        kernel_rank: usize,
        torsion: Vec<i64>,
    },
    /// No witness among candidate degrees of weight at most `bound`.
    TFlatUpTo {
        bound: i64,
        primes_checked: usize,
        degrees_checked: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorVerdict {
    pub query: TorQuery,
    pub result: TorResult,
}

impl TorVerdict {
    pub fn is_flat_up_to_bound(&self) -> bool {
        matches!(self.result, TorResult::TFlatUpTo { .. })
    }

    pub fn witness(&self) -> Option<(&MonoidIdeal, &Vector, usize)> {
        match &self.result {
            TorResult::NotTFlat {
                witness_prime,
                degree,
                kernel_rank,
                ..
            } => Some((witness_prime, degree, *kernel_rank)),
            TorResult::TFlatUpTo { .. } => None,
        }
    }

    /// Recomputes the witness's homology from scratch. `true` for
    /// flat-up-to-bound verdicts.
    pub fn replay(&self) -> Result<bool> {
        match &self.result {
            TorResult::NotTFlat {
                witness_prime,
                degree,
                kernel_rank,
                torsion,
                ..
            } => {
                let pres = present_ideal(witness_prime, &self.query.relative_to)?;
                let h = tor1_piece(&pres, &self.query.module, degree)?;
                Ok(!h.is_zero() && h.rank == *kernel_rank && &h.torsion == torsion)
            }
            TorResult::TFlatUpTo { .. } => Ok(true),
        }
    }
}

/// Scans `(weight, lex, prime index)`-ordered pairs and returns the first
/// nonzero `Tor₁` piece; the order is fixed before the parallel search, so
/// the witness does not depend on scheduling.
fn scan(e: &CombinatorialModule, k: &MonoidIdeal, primes: &[(usize, MonoidIdeal)], bound: i64) -> Result<TorVerdict> {
    if !e.is_annihilated_by(k) {
        return Err(Error::NotAnnihilated);
    }
    let p = e.parent();
    let mut presentations = Vec::new();
    for (idx, j) in primes {
        let j = j.union(k)?;
        presentations.push((*idx, j.clone(), present_ideal(&j, k)?));
    }
    let mut jobs: Vec<(i64, Vector, usize)> = Vec::new();
    for (slot, (_, _, pres)) in presentations.iter().enumerate() {
        for g in candidate_degrees(pres, e, bound) {
            jobs.push((p.weight(&g), g, slot));
        }
    }
    jobs.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then_with(|| a.1.cmp(&b.1))
            .then_with(|| presentations[a.2].0.cmp(&presentations[b.2].0))
    });
    let found = par::find_map_first(&jobs, |(w, g, slot)| {
        let h = tor1_unchecked(&presentations[*slot].2, e, g);
        (!h.is_zero()).then(|| (*w, g.clone(), *slot, h))
    });
    let result = match found {
        Some((weight, degree, slot, h)) => TorResult::NotTFlat {
            witness_prime: presentations[slot].1.clone(),
            prime_index: presentations[slot].0,
            degree,
            weight,
            kernel_rank: h.rank,
            torsion: h.torsion,
        },
        None => TorResult::TFlatUpTo {
            bound,
            primes_checked: presentations.len(),
            degrees_checked: jobs.len(),
        },
    };
    Ok(TorVerdict {
        query: TorQuery {
            relative_to: k.clone(),
            module: e.clone(),
            bound,
        },
        result,
    })
}

/// t-flatness of `E` relative to `K`, checked against every prime
/// containing `K` at candidate degrees of weight at most `bound`.
pub fn is_tflat(e: &CombinatorialModule, k: &MonoidIdeal, bound: i64) -> Result<TorVerdict> {
    let primes: Vec<(usize, MonoidIdeal)> = prime_ideals(e.parent())
        .into_iter()
        .enumerate()
        .filter(|(_, j)| j.contains_ideal(k))
        .collect();
    scan(e, k, &primes, bound)
}

/// The single check against `J = P⁺ ∪ K`.
pub fn is_weakly_tflat(e: &CombinatorialModule, k: &MonoidIdeal, bound: i64) -> Result<TorVerdict> {
    let p = e.parent();
    let primes = prime_ideals(p);
    let idx = primes.len() - 1;
    scan(e, k, &[(idx, MonoidIdeal::maximal(p))], bound)
}

/// `Tor₁` against an arbitrary ideal `J ⊇ K`, at degrees up to `bound`.
pub fn tor1_against(e: &CombinatorialModule, k: &MonoidIdeal, j: &MonoidIdeal, bound: i64) -> Result<TorVerdict> {
    scan(e, k, &[(usize::MAX, j.clone())], bound)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrFailure {
    pub p: Vector,
    pub q: Vector,
    pub detail: String,
}

/// Outcome of [`gr_structure_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrCertificate {
    pub pairs_checked: usize,
    pub failures: Vec<GrFailure>,
    pub seed: u64,
}

impl GrCertificate {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the associated graded multiplication of `Z[P]/(K)` under the
/// weight-then-lex filtration: for random `f, g` with initial terms `t^p`,
/// `t^q`, every term of `fg` is at least `p + q`, and the coefficient of
/// `t^{p+q}` is the product of the initial coefficients if `p + q ∉ K` and
/// vanishes otherwise.
pub fn gr_structure_check(k: &MonoidIdeal, samples: usize, weight_bound: i64, seed: u64) -> Result<GrCertificate> {
    let p = k.parent();
    p.positive_grading()?;
    let elements = p.elements_up_to_weight(weight_bound);
    let positive: Vec<Vector> = elements.iter().skip(1).cloned().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let random_poly = |rng: &mut ChaCha8Rng, lead: &Vector| -> Vec<(Vector, i64)> {
        let mut c: i64 = rng.gen_range(1..=5);
        if rng.gen_bool(0.5) {
            c = -c;
        }
        let mut terms = vec![(lead.clone(), c)];
        if !positive.is_empty() {
            for _ in 0..rng.gen_range(0..=3) {
                let h = &positive[rng.gen_range(0..positive.len())];
                terms.push((vector::add(lead, h), rng.gen_range(-5..=5)));
            }
        }
        terms
    };
    for _ in 0..samples {
        let a = elements[rng.gen_range(0..elements.len())].clone();
        let b = elements[rng.gen_range(0..elements.len())].clone();
        let f = random_poly(&mut rng, &a);
        let g = random_poly(&mut rng, &b);
        let mut product: HashMap<Vector, i64> = HashMap::new();
        for (x, cx) in &f {
            for (y, cy) in &g {
                let z = vector::add(x, y);
                if !k.contains(&z) {
                    *product.entry(z).or_insert(0) += cx * cy;
                }
            }
        }
        product.retain(|_, c| *c != 0);
        let s = vector::add(&a, &b);
        if let Some(low) = product.keys().find(|z| p.cmp_degrees(z, &s).is_lt()) {
            failures.push(GrFailure {
                p: a.clone(),
                q: b.clone(),
                detail: format!("term {} below {}", fmt_vector(low), fmt_vector(&s)),
            });
            continue;
        }
        let expected = if k.contains(&s) { 0 } else { f[0].1 * g[0].1 };
        let got = product.get(&s).copied().unwrap_or(0);
        if got != expected {
            failures.push(GrFailure {
                p: a,
                q: b,
                detail: format!("initial coefficient {got}, rule gives {expected}"),
            });
        }
    }
    Ok(GrCertificate {
        pairs_checked: samples,
        failures,
        seed,
    })
}

/// Result of [`obstruction_ideal`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub ideal: MonoidIdeal,
    /// `true` when the descent finished with every generator inside the
    /// weight bound, so `ideal` is the least good ideal among those
    /// generated in weight at most `bound`.
    pub certified: bool,
    pub bound: i64,
    pub ideals_tested: usize,
    pub upward_checks: usize,
}

fn weakly_good(e: &CombinatorialModule, j: &MonoidIdeal, bound: i64) -> Result<bool> {
    let ej = e.quotient_by(j)?;
    Ok(is_weakly_tflat(&ej, ej.relative_to(), bound)?.is_flat_up_to_bound())
}

/// The least ideal `K ⊆ P⁺` such that `E/(J)E` is weakly t-flat relative
/// to `J` exactly when `K ⊆ J`, searched among ideals generated in weight
/// at most `bound`.
///
/// Good ideals form an up-set, so a greedy descent from `P⁺` (replacing
/// one generator `g` by `g + P⁺` while the result stays good) ends at the
/// least good ideal.
pub fn obstruction_ideal(e: &CombinatorialModule, bound: i64) -> Result<ObstructionReport> {
    let p = e.parent();
    let empty = MonoidIdeal::empty(p);
    let mut tested = 1;
    if e.is_zero() || weakly_good(e, &empty, bound)? {
        return Ok(ObstructionReport {
            ideal: empty,
            certified: true,
            bound,
            ideals_tested: tested,
            upward_checks: 0,
        });
    }
    let maximal = MonoidIdeal::maximal(p);
    if maximal.generators().iter().any(|g| p.weight(g) > bound) {
        return Err(Error::BoundExceeded {
            what: "obstruction ideal search",
            bound: bound.max(0) as u64,
        });
    }
    let nonunit = maximal.generators().to_vec();
    let mut current = maximal;
    let mut certified = true;
    'descend: loop {
        for g in current.generators().to_vec() {
            let mut gens: Vec<Vector> = current.generators().iter().filter(|x| **x != g).cloned().collect();
            gens.extend(nonunit.iter().map(|h| vector::add(&g, h)));
            let candidate = MonoidIdeal::new(p, gens)?;
            if candidate.generators().iter().any(|x| p.weight(x) > bound) {
                certified = false;
                continue;
            }
            tested += 1;
            if weakly_good(e, &candidate, bound)? {
                current = candidate;
                continue 'descend;
            }
        }
        break;
    }
    let mut upward = 0;
    for h in p.generators() {
        let sup = current.union(&MonoidIdeal::new(p, vec![h.clone()])?)?;
        if !weakly_good(e, &sup, bound)? {
            return Err(Error::Invalid(format!(
                "upward closure fails at {:?}",
                sup
            )));
        }
        upward += 1;
    }
    Ok(ObstructionReport {
        ideal: current,
        certified,
        bound,
        ideals_tested: tested,
        upward_checks: upward,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeHeight {
    pub generators: Vec<Vector>,
    pub height: usize,
    pub localized_dimension: usize,
}

/// Combinatorial data of the monomial point of `Spec Z[P]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogRegularityReport {
    pub dimension: usize,
    pub gp_rank: usize,
    pub saturated: bool,
    pub saturation_witnesses: Vec<Vector>,
    pub sharp_quotient_torsion: Vec<i64>,
    pub primes: Vec<PrimeHeight>,
    pub log_regular: bool,
    pub justification: String,
}

pub fn log_regularity_report(p: &MonoidPresentation) -> Result<LogRegularityReport> {
    if !p.is_sharp() {
        return Err(Error::NotSharp);
    }
    let witnesses = p.saturation_witnesses();
    let primes = prime_ideals(p)
        .iter()
        .map(|q| {
            let h = q.height().expect("prime ideals have faces");
            PrimeHeight {
                generators: q.generators().to_vec(),
                height: h,
                localized_dimension: h,
            }
        })
        .collect();
    Ok(LogRegularityReport {
        dimension: p.dimension(),
        gp_rank: p.gp_rank(),
        saturated: witnesses.is_empty(),
        saturation_witnesses: witnesses,
        sharp_quotient_torsion: p.sharp_quotient().group.torsion_orders,
        primes,
        log_regular: true,
        justification: "the chart is Z[P] itself: Z[P]/(P+) = Z is regular and Z[P] is free, hence t-flat, over itself"
            .into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{FractionalIdeal, Inclusion};
    use crate::modcomb::restrict_scalars;

    fn normalization_summand() -> CombinatorialModule {
        let p = MonoidPresentation::numerical(&[2, 3]);
        let inc = Inclusion::identity_on_ambient(&p, &MonoidPresentation::free(1)).unwrap();
        let parts = restrict_scalars(&CombinatorialModule::free(&MonoidPresentation::free(1)), &inc, 64).unwrap();
        parts[0].module.clone()
    }

    #[test]
    fn presentations() {
        let p = MonoidPresentation::numerical(&[2, 3]);
        let pres = present_ideal(&MonoidIdeal::maximal(&p), &MonoidIdeal::empty(&p)).unwrap();
        assert_eq!(pres.free_gens, vec![vec![2], vec![3]]);
        let degs: Vec<Vector> = pres.syzygies.iter().map(|s| s.degree.clone()).collect();
        assert_eq!(degs, vec![vec![5], vec![6]]);
        assert!(pres.annihilations.is_empty());
        let n2 = MonoidPresentation::free(2);
        let j = MonoidIdeal::new(&n2, vec![vec![1, 0]]).unwrap();
        let pres = present_ideal(&j, &MonoidIdeal::empty(&n2)).unwrap();
        assert!(pres.syzygies.is_empty());
        let pres = present_ideal(&j, &j).unwrap();
        assert_eq!(pres.annihilations.len(), 1);
        assert_eq!(
            present_ideal(&MonoidIdeal::empty(&n2), &j),
            Err(Error::NotContained)
        );
    }

    #[test]
    fn normalization_tor() {
        let e = normalization_summand();
        let p = e.parent().clone();
        let pres = present_ideal(&MonoidIdeal::maximal(&p), &MonoidIdeal::empty(&p)).unwrap();
        assert_eq!(tor1_piece(&pres, &e, &[4]).unwrap().rank, 1);
        assert_eq!(tor1_piece(&pres, &e, &[3]).unwrap().rank, 1);
        assert_eq!(tor1_piece(&pres, &e, &[2]).unwrap().rank, 0);
        assert_eq!(tor1_piece(&pres, &e, &[-7]).unwrap().rank, 0);
        let free = CombinatorialModule::free(&p);
        for g in 0..12 {
            assert!(tor1_piece(&pres, &free, &[g]).unwrap().is_zero());
        }
    }

    #[test]
    fn verdicts() {
        let e = normalization_summand();
        let p = e.parent().clone();
        let k = MonoidIdeal::empty(&p);
        let v = is_tflat(&e, &k, 12).unwrap();
        let (prime, degree, rank) = v.witness().unwrap();
        assert!(prime.same_set(&MonoidIdeal::maximal(&p)));
        assert_eq!((degree.clone(), rank), (vec![3], 1));
        assert!(v.replay().unwrap());
        assert_eq!(is_weakly_tflat(&e, &k, 12).unwrap().witness().unwrap().1, &vec![3]);
        assert!(is_tflat(&CombinatorialModule::free(&p), &k, 12).unwrap().is_flat_up_to_bound());
        let n2 = MonoidPresentation::free(2);
        let k = MonoidIdeal::new(&n2, vec![vec![1, 0]]).unwrap();
        let e = CombinatorialModule::quotient_ring(&k);
        assert!(is_tflat(&e, &k, 10).unwrap().is_flat_up_to_bound());
    }

    #[test]
    fn gr_rule() {
        let n = MonoidPresentation::free(1);
        for k in [
            MonoidIdeal::empty(&n),
            MonoidIdeal::new(&n, vec![vec![2]]).unwrap(),
            MonoidIdeal::maximal(&n),
        ] {
            let c = gr_structure_check(&k, 100, 8, 7).unwrap();
            assert!(c.passed(), "{:?}", c.failures);
        }
    }

    #[test]
    fn obstruction() {
        let n = MonoidPresentation::free(1);
        let e = CombinatorialModule::new(
            FractionalIdeal::whole(&n),
            FractionalIdeal::new(&n, vec![vec![3]]).unwrap(),
            MonoidIdeal::empty(&n),
        )
        .unwrap();
        let r = obstruction_ideal(&e, 10).unwrap();
        assert_eq!(r.ideal.generators(), &[vec![3]]);
        assert!(r.certified);
        let r = obstruction_ideal(&CombinatorialModule::free(&n), 10).unwrap();
        assert!(r.ideal.is_empty());
    }

    #[test]
    fn reports() {
        let r = log_regularity_report(&MonoidPresentation::numerical(&[2, 3])).unwrap();
        assert_eq!((r.dimension, r.saturated, r.log_regular), (1, false, true));
        let q = MonoidPresentation::new(2, vec![vec![4, 0], vec![3, 1], vec![1, 3], vec![0, 4]]).unwrap();
        let r = log_regularity_report(&q).unwrap();
        assert_eq!((r.dimension, r.saturated), (2, false));
        assert_eq!(r.saturation_witnesses, vec![vec![2, 2]]);
        assert!(log_regularity_report(&MonoidPresentation::free(3)).unwrap().saturated);
        assert_eq!(
            log_regularity_report(&MonoidPresentation::numerical(&[1, -1])),
            Err(Error::NotSharp)
        );
    }
}
