//! Monoid ideals and fractional ideals: membership, primality, the prime
//! spectrum, ideal arithmetic, contraction and shifted-copy intersections.

use std::fmt;
use std::ops::Deref;

use serde::Serialize;

use crate::diophantine::{minimal_solutions, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::monoid::{fmt_vector, Face, MonoidPresentation};
use crate::vector::{self, Vector};

/// Reduces a generator list of a `P`-set: sort by (weight, lex), drop
/// duplicates and every element lying in another's shifted copy.
pub fn reduce_generators(parent: &MonoidPresentation, gens: &[Vector]) -> Vec<Vector> {
    let mut sorted = gens.to_vec();
    parent.sort_degrees(&mut sorted);
    sorted.dedup();
    let mut kept: Vec<Vector> = Vec::new();
    for g in sorted {
        if !kept.iter().any(|k| parent.contains(&vector::sub(&g, k))) {
            kept.push(g);
        }
    }
    kept
}

/// Finitely generated sub-`P`-set of `P^gp`: the union of `g + P` over its
/// generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FractionalIdeal {
    parent: MonoidPresentation,
    generators: Vec<Vector>,
}

impl fmt::Debug for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.generators.iter().map(|g| fmt_vector(g)).collect();
        write!(f, "({})", parts.join(" "))
    }
}

impl Serialize for FractionalIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.generators.serialize(s)
    }
}

impl FractionalIdeal {
    pub fn new(parent: &MonoidPresentation, gens: Vec<Vector>) -> Result<Self> {
        for g in &gens {
            if g.len() != parent.ambient_rank() {
                return Err(Error::DimensionMismatch {
                    expected: parent.ambient_rank(),
                    got: g.len(),
                });
            }
            if !parent.in_gp(g) {
                return Err(Error::Invalid(format!(
                    "{} does not lie in the group of the monoid",
                    fmt_vector(g)
                )));
            }
        }
        Ok(FractionalIdeal {
            parent: parent.clone(),
            generators: reduce_generators(parent, &gens),
        })
    }

    pub fn empty(parent: &MonoidPresentation) -> Self {
        FractionalIdeal {
            parent: parent.clone(),
            generators: Vec::new(),
        }
    }

    /// `P` itself, generated by `0`.
    pub fn whole(parent: &MonoidPresentation) -> Self {
        FractionalIdeal {
            parent: parent.clone(),
            generators: vec![parent.zero()],
        }
    }

    pub fn parent(&self) -> &MonoidPresentation {
        &self.parent
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        v.len() == self.parent.ambient_rank()
            && self
                .generators
                .iter()
                .any(|g| self.parent.contains(&vector::sub(v, g)))
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &FractionalIdeal) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn same_set(&self, other: &FractionalIdeal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    fn check_parent(&self, other: &FractionalIdeal) -> Result<()> {
        if self.parent != other.parent {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }

    pub fn union(&self, other: &FractionalIdeal) -> Result<FractionalIdeal> {
        self.check_parent(other)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ok(FractionalIdeal {
            parent: self.parent.clone(),
            generators: reduce_generators(&self.parent, &gens),
        })
    }

    pub fn sumset(&self, other: &FractionalIdeal) -> Result<FractionalIdeal> {
        self.check_parent(other)?;
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                gens.push(vector::add(a, b));
            }
        }
        Ok(FractionalIdeal {
            parent: self.parent.clone(),
            generators: reduce_generators(&self.parent, &gens),
        })
    }

    /// `v + self`.
    pub fn shift(&self, v: &[i64]) -> FractionalIdeal {
        FractionalIdeal {
            parent: self.parent.clone(),
            generators: self.generators.iter().map(|g| vector::add(g, v)).collect(),
        }
    }

    /// An element `p` of `P` with `p + self ⊆ P`: the sum of the negative
    /// parts of each generator written over the monoid generators.
    pub fn denominator(&self) -> Vector {
        let gens = self.parent.generators();
        let m = IntMatrix::from_columns(self.parent.ambient_rank(), gens);
        let smith = crate::lattice::smith_normal_form(&m);
        let diag = smith.diagonal();
        let mut p = self.parent.zero();
        for a in &self.generators {
            // a = G c with c = V * diag^{-1} * (U a)
            let ua = smith.u.mul_vec(a);
            let mut y = vec![0i64; gens.len()];
            for (i, d) in diag.iter().enumerate() {
                let q = &ua[i] / d;
                y[i] = crate::lattice::big_to_i64(&q).expect("coefficient overflow");
            }
            let c = smith.v.mul_vec(&y);
            for (ci, g) in c.iter().zip(gens) {
                let ci = crate::lattice::big_to_i64(ci).expect("coefficient overflow");
                if ci < 0 {
                    p = vector::add(&p, &vector::scale(g, -ci));
                }
            }
        }
        p
    }

    /// Every element within the given weight bound: `g + p` over generators
    /// `g` and `p` in `P / P*` with `weight(g + p) <= bound`, reduced to one
    /// representative per class and sorted.
    pub fn elements_up_to_weight(&self, bound: i64) -> Vec<Vector> {
        let p = &self.parent;
        let mut out = Vec::new();
        for g in &self.generators {
            let room = bound - p.weight(g);
            for e in p.elements_up_to_weight(room) {
                let v = vector::add(g, &e);
                out.push(p.reduce_mod_units(&v).expect("in P^gp"));
            }
        }
        p.sort_degrees(&mut out);
        out.dedup();
        out
    }
}

/// An ideal of `P`: a fractional ideal whose generators lie in `P`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct MonoidIdeal(FractionalIdeal);

impl fmt::Debug for MonoidIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Deref for MonoidIdeal {
    type Target = FractionalIdeal;
    fn deref(&self) -> &FractionalIdeal {
        &self.0
    }
}

impl MonoidIdeal {
    /// Ideal generated by `gens`, each of which must lie in `P`.
    pub fn new(parent: &MonoidPresentation, gens: Vec<Vector>) -> Result<Self> {
        for g in &gens {
            if g.len() != parent.ambient_rank() {
                return Err(Error::DimensionMismatch {
                    expected: parent.ambient_rank(),
                    got: g.len(),
                });
            }
            if !parent.contains(g) {
                return Err(Error::Invalid(format!(
                    "ideal generator {} does not lie in the monoid",
                    fmt_vector(g)
                )));
            }
        }
        Ok(MonoidIdeal(FractionalIdeal::new(parent, gens)?))
    }

    pub fn empty(parent: &MonoidPresentation) -> Self {
        MonoidIdeal(FractionalIdeal::empty(parent))
    }

    pub fn whole(parent: &MonoidPresentation) -> Self {
        MonoidIdeal(FractionalIdeal::whole(parent))
    }

    /// `P⁺`, the complement of the units.
    pub fn maximal(parent: &MonoidPresentation) -> Self {
        let gens: Vec<Vector> = (0..parent.generators().len())
            .filter(|&i| !parent.is_unit_generator(i))
            .map(|i| parent.generators()[i].clone())
            .collect();
        MonoidIdeal(FractionalIdeal {
            parent: parent.clone(),
            generators: reduce_generators(parent, &gens),
        })
    }

    /// The prime `P ∖ F`.
    pub fn prime_of_face(face: &Face) -> Self {
        let parent = face.parent();
        let gens = (0..parent.generators().len())
            .filter(|i| face.indices().binary_search(i).is_err())
            .map(|i| parent.generators()[i].clone())
            .collect::<Vec<_>>();
        MonoidIdeal(FractionalIdeal {
            parent: parent.clone(),
            generators: reduce_generators(parent, &gens),
        })
    }

    pub fn as_fractional(&self) -> &FractionalIdeal {
        &self.0
    }

    pub fn into_fractional(self) -> FractionalIdeal {
        self.0
    }

    /// Wraps a fractional ideal known to lie in `P`.
    pub fn from_fractional(f: FractionalIdeal) -> Result<Self> {
        MonoidIdeal::new(&f.parent.clone(), f.generators)
    }

    pub fn same_set(&self, other: &MonoidIdeal) -> bool {
        self.0.same_set(&other.0)
    }

    pub fn contains_ideal(&self, other: &MonoidIdeal) -> bool {
        self.0.contains_ideal(&other.0)
    }

    /// Whether the complement is a face.
    pub fn is_prime(&self) -> bool {
        self.face().is_some()
    }

    /// The face `P ∖ K`, if `K` is prime.
    pub fn face(&self) -> Option<Face> {
        self.parent
            .faces()
            .into_iter()
            .find(|f| MonoidIdeal::prime_of_face(f).same_set(self))
    }

    /// Height of a prime: `dim P - dim F`.
    pub fn height(&self) -> Option<usize> {
        self.face().map(|f| f.codim())
    }

    pub fn union(&self, other: &MonoidIdeal) -> Result<MonoidIdeal> {
        Ok(MonoidIdeal(self.0.union(&other.0)?))
    }

    pub fn sumset(&self, other: &MonoidIdeal) -> Result<MonoidIdeal> {
        Ok(MonoidIdeal(self.0.sumset(&other.0)?))
    }

    /// `n`-fold sumset; `n = 0` gives `P`.
    pub fn power_sumset(&self, n: usize) -> MonoidIdeal {
        let mut acc = MonoidIdeal::whole(&self.parent);
        for _ in 0..n {
            acc = acc.sumset(self).expect("same parent");
        }
        acc
    }
}

/// All primes of `P`, i.e. complements of faces, ordered by height and then
/// by the generator indices of the face. Starts with `∅`, ends with `P⁺`.
pub fn prime_ideals(p: &MonoidPresentation) -> Vec<MonoidIdeal> {
    let mut faces = p.faces();
    faces.sort_by(|a, b| a.codim().cmp(&b.codim()).then_with(|| a.indices().cmp(b.indices())));
    faces.iter().map(MonoidIdeal::prime_of_face).collect()
}

pub fn ideal_contains(k: &MonoidIdeal, v: &[i64]) -> bool {
    k.contains(v)
}

/// Reduced generators of `(a + P) ∩ (b + P)` for `a, b` in `P^gp`.
pub fn intersect_shifts(a: &[i64], b: &[i64], p: &MonoidPresentation) -> Result<Vec<Vector>> {
    if a == b {
        return Ok(vec![a.to_vec()]);
    }
    let gens = p.generators();
    let mut columns: Vec<Vector> = gens.to_vec();
    columns.extend(gens.iter().map(|g| vector::neg(g)));
    let target = vector::sub(b, a);
    let sols = minimal_solutions(p.ambient_rank(), &columns, &target, DEFAULT_BUDGET)?;
    let points: Vec<Vector> = sols
        .iter()
        .map(|s| {
            let mut m = a.to_vec();
            for (g, &c) in gens.iter().zip(s) {
                if c > 0 {
                    m = vector::add(&m, &vector::scale(g, c as i64));
                }
            }
            m
        })
        .collect();
    Ok(reduce_generators(p, &points))
}

/// A monoid homomorphism `P -> Q` given by an integer matrix on ambient
/// coordinates, injective on `P^gp`.
#[derive(Clone, Debug)]
pub struct Inclusion {
    source: MonoidPresentation,
    target: MonoidPresentation,
    /// `target.ambient_rank()` rows, `source.ambient_rank()` columns.
    matrix: Vec<Vector>,
}

impl Inclusion {
    pub fn new(source: &MonoidPresentation, target: &MonoidPresentation, matrix: Vec<Vector>) -> Result<Self> {
        if matrix.len() != target.ambient_rank() {
            return Err(Error::DimensionMismatch {
                expected: target.ambient_rank(),
                got: matrix.len(),
            });
        }
        if let Some(r) = matrix.iter().find(|r| r.len() != source.ambient_rank()) {
            return Err(Error::DimensionMismatch {
                expected: source.ambient_rank(),
                got: r.len(),
            });
        }
        let inc = Inclusion {
            source: source.clone(),
            target: target.clone(),
            matrix,
        };
        for g in source.generators() {
            if !target.contains(&inc.apply(g)) {
                return Err(Error::Invalid(format!(
                    "generator {} does not map into the target monoid",
                    fmt_vector(g)
                )));
            }
        }
        let images: Vec<Vector> = source.gp_lattice().basis().iter().map(|b| inc.apply(b)).collect();
        if IntMatrix::from_columns(target.ambient_rank(), &images).rank() != source.gp_rank() {
            return Err(Error::Invalid("map is not injective on the group".into()));
        }
        Ok(inc)
    }

    /// Inclusion of a submonoid living in the same ambient space.
    pub fn identity_on_ambient(source: &MonoidPresentation, target: &MonoidPresentation) -> Result<Self> {
        let k = source.ambient_rank();
        let id = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
        Inclusion::new(source, target, id)
    }

    pub fn source(&self) -> &MonoidPresentation {
        &self.source
    }

    pub fn target(&self) -> &MonoidPresentation {
        &self.target
    }

    pub fn matrix(&self) -> &[Vector] {
        &self.matrix
    }

    pub fn apply(&self, v: &[i64]) -> Vector {
        self.matrix.iter().map(|r| vector::dot(r, v)).collect()
    }

    /// The unique preimage in `P^gp` of a vector of `ι(P^gp)`.
    pub fn preimage(&self, w: &[i64]) -> Option<Vector> {
        let basis = self.source.gp_lattice().basis();
        let images: Vec<Vector> = basis.iter().map(|b| self.apply(b)).collect();
        let y = solve_in_images(&images, w)?;
        let mut out = self.source.zero();
        for (b, &c) in basis.iter().zip(&y) {
            out = vector::add(&out, &vector::scale(b, c));
        }
        Some(out)
    }
}

/// Integer combination of `images` equal to `h` (images independent).
fn solve_in_images(images: &[Vector], h: &[i64]) -> Option<Vector> {
    let m = IntMatrix::from_columns(h.len(), images);
    let smith = crate::lattice::smith_normal_form(&m);
    let diag = smith.diagonal();
    let uh = smith.u.mul_vec(h);
    let mut y = vec![0i64; images.len()];
    for (i, d) in diag.iter().enumerate() {
        if !(&uh[i] % d).eq(&num_bigint::BigInt::from(0)) {
            return None;
        }
        y[i] = crate::lattice::big_to_i64(&(&uh[i] / d)).ok()?;
    }
    if uh[diag.len()..].iter().any(|x| x != &num_bigint::BigInt::from(0)) {
        return None;
    }
    smith
        .v
        .mul_vec(&y)
        .iter()
        .map(|x| crate::lattice::big_to_i64(x).ok())
        .collect()
}

/// `K ∩ ι(P)`, pulled back to `P`. Exact: the minimal elements come from
/// the minimal solutions of `ι(sum c_i g_i) - sum d_j h_j = k`.
pub fn contract(k: &MonoidIdeal, inc: &Inclusion) -> Result<MonoidIdeal> {
    if k.parent() != inc.target() {
        return Err(Error::ParentMismatch);
    }
    let p = inc.source();
    let q = inc.target();
    let pg: Vec<Vector> = p.generators().iter().map(|g| inc.apply(g)).collect();
    let mut columns = pg.clone();
    columns.extend(q.generators().iter().map(|h| vector::neg(h)));
    let mut gens = Vec::new();
    for kg in k.generators() {
        for s in minimal_solutions(q.ambient_rank(), &columns, kg, DEFAULT_BUDGET)? {
            let mut v = p.zero();
            for (g, &c) in p.generators().iter().zip(&s) {
                v = vector::add(&v, &vector::scale(g, c as i64));
            }
            gens.push(v);
        }
    }
    MonoidIdeal::new(p, gens)
}
