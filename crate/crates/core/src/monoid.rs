//! Finitely generated submonoids of `Z^k`: units, sharp quotients,
//! membership, saturation, faces, flags and localization.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::cone;
use crate::error::{Error, Result};
use crate::lattice::{
    hermite_rows, kernel_basis, quotient_presentation, AbelianGroupPresentation, GroupElement,
    IntMatrix, Lattice, QuotientMap,
};
use crate::vector::{self, Vector};

struct Inner {
    ambient_rank: usize,
    generators: Vec<Vector>,
    structure: OnceLock<Structure>,
}

/// Everything derived from the generators, computed once on first use.
struct Structure {
    gp: Lattice,
    gen_coords: Vec<Vector>,
    /// Primitive inner facet normals in gp coordinates, sorted.
    facets: Vec<Vector>,
    /// Indices of generators lying in the lineality space.
    unit_indices: Vec<usize>,
    /// HNF basis of the unit group, in gp coordinates.
    units: Vec<Vector>,
    unit_quotient: QuotientMap,
    /// Weight in gp coordinates; the ambient grading restricted to `P^gp`.
    weight_coords: Vector,
    grading: Vector,
}

/// A finitely generated submonoid of `Z^k`.
///
/// Cheap to clone; derived structure (cone, units, grading) is computed
/// lazily and shared between clones.
#[derive(Clone)]
pub struct MonoidPresentation(Arc<Inner>);

impl PartialEq for MonoidPresentation {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ambient_rank == other.0.ambient_rank
                && self.0.generators == other.0.generators)
    }
}

impl Eq for MonoidPresentation {}

impl Hash for MonoidPresentation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.ambient_rank.hash(state);
        self.0.generators.hash(state);
    }
}

impl fmt::Debug for MonoidPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.0.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_vector(g))?;
        }
        write!(f, "> in Z^{}", self.0.ambient_rank)
    }
}

impl Serialize for MonoidPresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MonoidPresentation", 2)?;
        st.serialize_field("ambient_rank", &self.0.ambient_rank)?;
        st.serialize_field("generators", &self.0.generators)?;
        st.end()
    }
}

/// `(a,b,c)` formatting used in reports and debug output.
pub fn fmt_vector(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl MonoidPresentation {
    /// Monoid generated by `generators` in `Z^ambient_rank`. Duplicates are
    /// dropped, keeping first occurrences. The list must be nonempty; the
    /// trivial monoid is presented by the single generator `0`.
    pub fn new(ambient_rank: usize, generators: Vec<Vector>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Invalid("a monoid needs at least one generator".into()));
        }
        let mut seen = HashSet::new();
        let mut gens = Vec::new();
        for g in generators {
            if g.len() != ambient_rank {
                return Err(Error::DimensionMismatch {
                    expected: ambient_rank,
                    got: g.len(),
                });
            }
            if seen.insert(g.clone()) {
                gens.push(g);
            }
        }
        Ok(MonoidPresentation(Arc::new(Inner {
            ambient_rank,
            generators: gens,
            structure: OnceLock::new(),
        })))
    }

    /// `N^d` with its standard generators.
    pub fn free(d: usize) -> Self {
        let gens = if d == 0 {
            vec![vec![]]
        } else {
            (0..d)
                .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
                .collect()
        };
        Self::new(d, gens).expect("valid generators")
    }

    /// Numerical monoid `<gens>` in `Z`.
    pub fn numerical(gens: &[i64]) -> Self {
        Self::new(1, gens.iter().map(|&g| vec![g]).collect()).expect("valid generators")
    }

    pub fn ambient_rank(&self) -> usize {
        self.0.ambient_rank
    }

    pub fn generators(&self) -> &[Vector] {
        &self.0.generators
    }

    fn st(&self) -> &Structure {
        self.0.structure.get_or_init(|| Structure::compute(self.ambient_rank(), self.generators()))
    }

    pub fn zero(&self) -> Vector {
        vec![0; self.ambient_rank()]
    }

    /// The group `P^gp` generated by `P`.
    pub fn gp_lattice(&self) -> &Lattice {
        &self.st().gp
    }

    pub fn gp_rank(&self) -> usize {
        self.st().gp.rank()
    }

    /// Coordinates of `v` in the canonical basis of `P^gp`.
    pub fn gp_coords(&self, v: &[i64]) -> Option<Vector> {
        if v.len() != self.ambient_rank() {
            return None;
        }
        self.st().gp.coordinates(v)
    }

    pub fn in_gp(&self, v: &[i64]) -> bool {
        self.gp_coords(v).is_some()
    }

    pub fn generator_coords(&self) -> &[Vector] {
        &self.st().gen_coords
    }

    /// Primitive inner facet normals of `C(P)` in gp coordinates.
    pub fn facet_normals(&self) -> &[Vector] {
        &self.st().facets
    }

    /// Facet normals as integer functionals on the ambient space (each a
    /// positive multiple of the gp-coordinate normal on `P^gp`).
    pub fn facet_functionals(&self) -> Vec<Vector> {
        self.st()
            .facets
            .iter()
            .map(|f| self.st().gp.ambient_functional(f))
            .collect()
    }

    /// Indices of generators that are units.
    pub fn unit_generator_indices(&self) -> &[usize] {
        &self.st().unit_indices
    }

    pub fn is_unit_generator(&self, i: usize) -> bool {
        self.st().unit_indices.binary_search(&i).is_ok()
    }

    /// Lattice basis of the unit group `P*` (ambient vectors).
    pub fn unit_group(&self) -> Vec<Vector> {
        self.st().units.iter().map(|c| self.st().gp.point(c)).collect()
    }

    pub fn unit_rank(&self) -> usize {
        self.st().units.len()
    }

    pub fn is_sharp(&self) -> bool {
        self.st().units.is_empty()
    }

    /// Krull dimension: `rank P^gp - rank P*`.
    pub fn dimension(&self) -> usize {
        self.gp_rank() - self.unit_rank()
    }

    /// Integer functional, zero on units and positive on every non-unit
    /// element. Defined for every monoid; see [`Self::positive_grading`].
    pub fn grading(&self) -> &[i64] {
        &self.st().grading
    }

    /// The grading, provided `P` is sharp.
    pub fn positive_grading(&self) -> Result<Vector> {
        if !self.is_sharp() {
            return Err(Error::NotSharp);
        }
        Ok(self.st().grading.clone())
    }

    pub fn weight(&self, v: &[i64]) -> i64 {
        vector::dot(&self.st().grading, v)
    }

    /// Weight-then-lex comparison of two degrees.
    pub fn cmp_degrees(&self, a: &[i64], b: &[i64]) -> std::cmp::Ordering {
        vector::weight_lex(self.weight(a), a, self.weight(b), b)
    }

    pub fn sort_degrees(&self, vs: &mut [Vector]) {
        vs.sort_by(|a, b| self.cmp_degrees(a, b));
    }

    /// Whether `v` lies in the real cone `C(P)` (and in `P^gp`).
    pub fn in_cone_gp(&self, v: &[i64]) -> bool {
        match self.gp_coords(v) {
            Some(c) => self.st().coords_in_cone(&c),
            None => false,
        }
    }

    /// Membership: is `v` a nonnegative integer combination of generators?
    pub fn contains(&self, v: &[i64]) -> bool {
        match self.gp_coords(v) {
            Some(c) => self.st().contains_coords(&c),
            None => false,
        }
    }

    /// Class of `v` modulo `P*`, for `v` in `P^gp`.
    pub fn unit_class(&self, v: &[i64]) -> Option<GroupElement> {
        self.gp_coords(v).map(|c| self.st().unit_quotient.project(&c))
    }

    /// Canonical representative of the class of `v` modulo `P*`.
    pub fn reduce_mod_units(&self, v: &[i64]) -> Option<Vector> {
        let st = self.st();
        self.gp_coords(v).map(|c| {
            if st.units.is_empty() {
                v.to_vec()
            } else {
                st.gp.point(&st.unit_quotient.lift(&st.unit_quotient.project(&c)))
            }
        })
    }

    /// Representatives of the elements of `P / P*` with weight at most
    /// `bound`, sorted by (weight, lex).
    pub fn elements_up_to_weight(&self, bound: i64) -> Vec<Vector> {
        if bound < 0 {
            return Vec::new();
        }
        let st = self.st();
        let nonunit: Vec<&Vector> = (0..self.generators().len())
            .filter(|i| !self.is_unit_generator(*i))
            .map(|i| &self.generators()[i])
            .collect();
        let zero = self.zero();
        let mut seen = HashSet::new();
        seen.insert(self.unit_class(&zero).expect("zero lies in P^gp"));
        let mut queue = VecDeque::from([zero.clone()]);
        let mut out = vec![zero];
        while let Some(v) = queue.pop_front() {
            for g in &nonunit {
                let w = vector::add(&v, g);
                if self.weight(&w) > bound {
                    continue;
                }
                let w = if st.units.is_empty() { w } else { self.reduce_mod_units(&w).expect("in P^gp") };
                if seen.insert(self.unit_class(&w).expect("in P^gp")) {
                    queue.push_back(w.clone());
                    out.push(w);
                }
            }
        }
        self.sort_degrees(&mut out);
        out
    }

    /// Hilbert basis of the pointed part of the saturation, together with a
    /// basis of `P^sat*`, as ambient vectors.
    fn saturation_parts(&self) -> (Vec<Vector>, Vec<Vector>) {
        let st = self.st();
        let r = self.gp_rank();
        let lineality: Vec<Vector> = if st.facets.is_empty() {
            (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect()
        } else {
            kernel_basis(&IntMatrix::from_rows(r, &st.facets))
                .to_i64_columns()
                .expect("kernel overflow")
        };
        let q = quotient_presentation(r, &lineality);
        debug_assert!(q.group().is_free());
        let free = q.group().free_rank;
        let lifts: Vec<Vector> = (0..free)
            .map(|i| {
                let mut e = vec![0; free];
                e[i] = 1;
                q.lift(&GroupElement { free: e, torsion: vec![] })
            })
            .collect();
        let reduced_facets: Vec<Vector> = st
            .facets
            .iter()
            .map(|a| lifts.iter().map(|l| vector::dot(a, l)).collect())
            .collect();
        let rays = cone::double_description(free, &reduced_facets).rays;
        let hb = cone::hilbert_basis(free, &reduced_facets, &rays);
        let pointed = hb
            .iter()
            .map(|h| {
                let mut c = vec![0i64; r];
                for (l, &x) in lifts.iter().zip(h) {
                    for (ci, li) in c.iter_mut().zip(l) {
                        *ci += li * x;
                    }
                }
                st.gp.point(&c)
            })
            .collect();
        let units = lineality.iter().map(|c| st.gp.point(c)).collect();
        (pointed, units)
    }

    /// `P^sat`: generated by the Hilbert basis of `C(P) ∩ P^gp` modulo its
    /// units, plus a symmetric basis of the units.
    pub fn saturation(&self) -> MonoidPresentation {
        let (pointed, units) = self.saturation_parts();
        let mut gens = pointed;
        for u in units {
            gens.push(vector::neg(&u));
            gens.push(u);
        }
        if gens.is_empty() {
            gens.push(self.zero());
        }
        MonoidPresentation::new(self.ambient_rank(), gens).expect("valid generators")
    }

    /// Elements of `P^sat` missing from `P`, among the saturation's
    /// generators. Empty iff `P` is saturated.
    pub fn saturation_witnesses(&self) -> Vec<Vector> {
        self.saturation()
            .generators()
            .iter()
            .filter(|g| !self.contains(g))
            .cloned()
            .collect()
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation_witnesses().is_empty()
    }

    /// Whether the two presentations define the same set.
    pub fn same_monoid(&self, other: &MonoidPresentation) -> bool {
        self.ambient_rank() == other.ambient_rank()
            && self.generators().iter().all(|g| other.contains(g))
            && other.generators().iter().all(|g| self.contains(g))
    }

    /// Quotient by the unit group.
    pub fn sharp_quotient(&self) -> QuotientMonoid {
        let st = self.st();
        let gen_images = st
            .gen_coords
            .iter()
            .map(|c| st.unit_quotient.project(c))
            .collect();
        QuotientMonoid {
            base: self.clone(),
            unit_subgroup_gens: self.unit_group(),
            group: st.unit_quotient.group().clone(),
            gen_images,
        }
    }

    fn face_dim(&self, indices: &[usize]) -> usize {
        let coords: Vec<Vector> = indices.iter().map(|&i| self.st().gen_coords[i].clone()).collect();
        hermite_rows(self.gp_rank(), &coords).len() - self.unit_rank()
    }

    fn face_index_sets(&self) -> Vec<Vec<usize>> {
        let st = self.st();
        let all: Vec<usize> = (0..self.generators().len()).collect();
        let mut family: Vec<Vec<usize>> = vec![all];
        for f in &st.facets {
            let on: Vec<usize> = (0..self.generators().len())
                .filter(|&i| vector::dot(f, &st.gen_coords[i]) == 0)
                .collect();
            let mut next = family.clone();
            for s in &family {
                let cut: Vec<usize> = s.iter().copied().filter(|i| on.binary_search(i).is_ok()).collect();
                if !next.contains(&cut) {
                    next.push(cut);
                }
            }
            family = next;
        }
        family
    }

    /// All faces, sorted by (dimension, generator indices). The first is the
    /// unit face `P*`, the last is `P`.
    pub fn faces(&self) -> Vec<Face> {
        let mut faces: Vec<Face> = self
            .face_index_sets()
            .into_iter()
            .map(|s| Face {
                parent: self.clone(),
                dim: self.face_dim(&s),
                indices: s,
            })
            .collect();
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.indices.cmp(&b.indices)));
        faces
    }

    /// The face with the given generator index set, if it is one.
    pub fn face(&self, indices: &[usize]) -> Result<Face> {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        self.faces()
            .into_iter()
            .find(|f| f.indices == idx)
            .ok_or(Error::NotAFace(idx))
    }

    pub fn unit_face(&self) -> Face {
        self.faces().remove(0)
    }

    pub fn full_face(&self) -> Face {
        self.faces().pop().expect("P is a face")
    }

    /// Smallest face containing all of `vs`.
    pub fn smallest_face_containing(&self, vs: &[Vector]) -> Result<Face> {
        for v in vs {
            if !self.contains(v) {
                return Err(Error::Invalid(format!("{} is not in the monoid", fmt_vector(v))));
            }
        }
        Ok(self
            .faces()
            .into_iter()
            .find(|f| vs.iter().all(|v| f.contains(v)))
            .expect("P contains everything in P"))
    }

    /// Complete flag built top-down: at each step the facet of the current
    /// face with the lexicographically smallest generator index set.
    pub fn complete_flag(&self) -> Flag {
        let faces = self.faces();
        let mut current = faces.last().expect("P is a face").clone();
        let mut chain = vec![current.clone()];
        while current.dim > 0 {
            let next = faces
                .iter()
                .filter(|f| f.dim + 1 == current.dim && f.is_subface_of(&current))
                .min_by(|a, b| a.indices.cmp(&b.indices))
                .expect("every positive-dimensional face has a facet")
                .clone();
            chain.push(next.clone());
            current = next;
        }
        chain.reverse();
        Flag { faces: chain }
    }

    /// `P - F`: adjoin the negatives of the generators of the face.
    pub fn localize(&self, face: &Face) -> Result<MonoidPresentation> {
        if face.parent != *self {
            return Err(Error::ParentMismatch);
        }
        let face = self.face(&face.indices)?;
        let mut gens = self.generators().to_vec();
        for &i in &face.indices {
            gens.push(vector::neg(&self.generators()[i]));
        }
        MonoidPresentation::new(self.ambient_rank(), gens)
    }
}

impl Structure {
    fn compute(ambient_rank: usize, generators: &[Vector]) -> Structure {
        let gp = Lattice::spanned_by(ambient_rank, generators);
        let r = gp.rank();
        let gen_coords: Vec<Vector> = generators
            .iter()
            .map(|g| gp.coordinates(g).expect("generator in its own group"))
            .collect();
        let facets = if r == 0 {
            Vec::new()
        } else {
            cone::facets_of_generated(r, &gen_coords)
        };
        let unit_indices: Vec<usize> = (0..generators.len())
            .filter(|&i| facets.iter().all(|f| vector::dot(f, &gen_coords[i]) == 0))
            .collect();
        let unit_coords: Vec<Vector> = unit_indices.iter().map(|&i| gen_coords[i].clone()).collect();
        let units = hermite_rows(r, &unit_coords);
        let unit_quotient = quotient_presentation(r, &units);
        let facet_sum: Vector = (0..r).map(|j| facets.iter().map(|f| f[j]).sum()).collect();
        let grading = if r == 0 {
            vec![0; ambient_rank]
        } else {
            gp.ambient_functional(&facet_sum)
        };
        let weight_coords = gp.basis().iter().map(|b| vector::dot(&grading, b)).collect();
        Structure {
            gp,
            gen_coords,
            facets,
            unit_indices,
            units,
            unit_quotient,
            weight_coords,
            grading,
        }
    }

    fn coords_in_cone(&self, c: &[i64]) -> bool {
        self.facets.iter().all(|f| vector::dot(f, c) >= 0)
    }

    fn contains_coords(&self, c: &[i64]) -> bool {
        if !self.coords_in_cone(c) {
            return false;
        }
        let nonunit: Vec<&Vector> = (0..self.gen_coords.len())
            .filter(|i| self.unit_indices.binary_search(i).is_err())
            .map(|i| &self.gen_coords[i])
            .collect();
        let mut failed = HashSet::new();
        self.search(c, &nonunit, &mut failed)
    }

    fn search(&self, c: &[i64], gens: &[&Vector], failed: &mut HashSet<GroupElement>) -> bool {
        let key = self.unit_quotient.project(c);
        if key.is_zero() {
            return true;
        }
        if failed.contains(&key) || vector::dot(&self.weight_coords, c) <= 0 {
            return false;
        }
        for g in gens {
            let d = vector::sub(c, g);
            if self.coords_in_cone(&d) && self.search(&d, gens, failed) {
                return true;
            }
        }
        failed.insert(key);
        false
    }
}

/// Image of a monoid in `P^gp / P*`.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientMonoid {
    #[serde(skip)]
    pub base: MonoidPresentation,
    pub unit_subgroup_gens: Vec<Vector>,
    pub group: AbelianGroupPresentation,
    pub gen_images: Vec<GroupElement>,
}

impl QuotientMonoid {
    pub fn project(&self, v: &[i64]) -> Option<GroupElement> {
        self.base.unit_class(v)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.group.torsion_orders.is_empty()
    }

    /// Image of the integer combination `sum_i coeffs[i] * gen_i`.
    pub fn combination(&self, coeffs: &[i64]) -> GroupElement {
        let gens = self.base.generators();
        let mut v = self.base.zero();
        for (g, &c) in gens.iter().zip(coeffs) {
            v = vector::add(&v, &vector::scale(g, c));
        }
        self.project(&v).expect("combination of generators lies in P^gp")
    }
}

/// A face of a monoid, recorded by the parent generators lying on it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Face {
    parent: MonoidPresentation,
    indices: Vec<usize>,
    dim: usize,
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Face{:?}", self.generators())
    }
}

impl Serialize for Face {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Face", 3)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("indices", &self.indices)?;
        st.serialize_field("generators", &self.generators())?;
        st.end()
    }
}

impl Face {
    pub fn parent(&self) -> &MonoidPresentation {
        &self.parent
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn codim(&self) -> usize {
        self.parent.dimension() - self.dim
    }

    pub fn generators(&self) -> Vec<Vector> {
        self.indices.iter().map(|&i| self.parent.generators()[i].clone()).collect()
    }

    /// The face as a monoid in its own right.
    pub fn monoid(&self) -> MonoidPresentation {
        let mut gens = self.generators();
        if gens.is_empty() {
            gens.push(self.parent.zero());
        }
        MonoidPresentation::new(self.parent.ambient_rank(), gens).expect("valid generators")
    }

    /// Facet normals (gp coordinates of the parent) vanishing on this face.
    pub fn equations(&self) -> Vec<Vector> {
        let coords = self.parent.generator_coords();
        self.parent
            .facet_normals()
            .iter()
            .filter(|f| self.indices.iter().all(|&i| vector::dot(f, &coords[i]) == 0))
            .cloned()
            .collect()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let Some(c) = self.parent.gp_coords(v) else {
            return false;
        };
        self.equations().iter().all(|f| vector::dot(f, &c) == 0) && self.parent.contains(v)
    }

    pub fn is_subface_of(&self, other: &Face) -> bool {
        self.indices.iter().all(|i| other.indices.binary_search(i).is_ok())
    }

    pub fn is_unit_face(&self) -> bool {
        self.dim == 0
    }

    pub fn is_full(&self) -> bool {
        self.indices.len() == self.parent.generators().len()
    }
}

/// Strictly increasing chain of faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flag {
    faces: Vec<Face>,
}

impl Flag {
    pub fn new(faces: Vec<Face>) -> Result<Flag> {
        if faces.is_empty() {
            return Err(Error::IncompleteFlag("a flag needs at least one face".into()));
        }
        let parent = faces[0].parent.clone();
        for w in faces.windows(2) {
            if w[1].parent != parent {
                return Err(Error::ParentMismatch);
            }
            if !w[0].is_subface_of(&w[1]) || w[0].dim >= w[1].dim {
                return Err(Error::IncompleteFlag(format!(
                    "{:?} is not strictly contained in {:?}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Flag { faces })
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn parent(&self) -> &MonoidPresentation {
        &self.faces[0].parent
    }

    /// Starts at `P*`, ends at `P`, and rises one dimension per step.
    pub fn check_complete(&self) -> Result<()> {
        let p = self.parent();
        if !self.faces[0].is_unit_face() {
            return Err(Error::IncompleteFlag("flag does not start at the unit face".into()));
        }
        if !self.faces.last().expect("nonempty").is_full() {
            return Err(Error::IncompleteFlag("flag does not end at the monoid".into()));
        }
        if self.len() != p.dimension() {
            return Err(Error::IncompleteFlag(format!(
                "flag has length {} but the monoid has dimension {}",
                self.len(),
                p.dimension()
            )));
        }
        Ok(())
    }

    pub fn is_complete(&self) -> bool {
        self.check_complete().is_ok()
    }
}
