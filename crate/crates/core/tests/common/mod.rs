#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tflat_core::ideal::{prime_ideals, FractionalIdeal, MonoidIdeal};
use tflat_core::modcomb::CombinatorialModule;
use tflat_core::tflat::{present_ideal, tor1_against, tor1_piece, TorResult};
use tflat_core::cone::double_description;
use tflat_core::lattice::splitting_section;
use tflat_core::{flag_embedding, verify_embedding, MonoidPresentation, Vector};

pub fn paper_monoid() -> MonoidPresentation {
    MonoidPresentation::new(2, vec![vec![0, 2], vec![1, 0], vec![2, -2]]).unwrap()
}

pub fn remark_monoid() -> MonoidPresentation {
    MonoidPresentation::new(2, vec![vec![1, 0], vec![1, 1], vec![0, 2], vec![0, -2]]).unwrap()
}

pub fn square_monoid() -> MonoidPresentation {
    MonoidPresentation::new(2, vec![vec![4, 0], vec![3, 1], vec![1, 3], vec![0, 4]]).unwrap()
}

/// A desk monoid with a hand-chosen grading that is positive on every
/// generator, used to bound the brute-force enumerations independently of
/// the library's own grading.
pub struct Desk {
    pub name: &'static str,
    pub monoid: MonoidPresentation,
    pub grading: Vector,
    /// Lattice points of `P^gp` inside this box are tested.
    pub degree_box: Vec<(i64, i64)>,
}

pub fn desk_suite() -> Vec<Desk> {
    vec![
        Desk {
            name: "N",
            monoid: MonoidPresentation::free(1),
            grading: vec![1],
            degree_box: vec![(-3, 10)],
        },
        Desk {
            name: "N^2",
            monoid: MonoidPresentation::free(2),
            grading: vec![1, 1],
            degree_box: vec![(-2, 10), (-2, 10)],
        },
        Desk {
            name: "<2,3>",
            monoid: MonoidPresentation::numerical(&[2, 3]),
            grading: vec![1],
            degree_box: vec![(-3, 10)],
        },
        Desk {
            name: "paper",
            monoid: paper_monoid(),
            grading: vec![2, 1],
            degree_box: vec![(-2, 10), (-12, 12)],
        },
    ]
}

pub fn box_points(bounds: &[(i64, i64)]) -> Vec<Vector> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in bounds {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn ideal(p: &MonoidPresentation, gens: Vec<Vector>) -> MonoidIdeal {
    MonoidIdeal::new(p, gens).unwrap()
}

fn frac(p: &MonoidPresentation, gens: Vec<Vector>) -> FractionalIdeal {
    FractionalIdeal::new(p, gens).unwrap()
}

fn module(a: FractionalIdeal, b: FractionalIdeal, k: MonoidIdeal) -> CombinatorialModule {
    CombinatorialModule::new(a, b, k).unwrap()
}

/// Modules exercised on every desk monoid: free, residue field, `P/2P⁺`,
/// `P⁺` as a module, the residue ring over itself and a shifted copy of
/// `P` below zero.
pub fn desk_modules(p: &MonoidPresentation) -> Vec<(&'static str, CombinatorialModule)> {
    let whole = FractionalIdeal::whole(p);
    let max = MonoidIdeal::maximal(p);
    let empty = MonoidIdeal::empty(p);
    let shift: Vector = p.generators()[0].iter().map(|x| -x).collect();
    let mut out = vec![
        ("free", CombinatorialModule::free(p)),
        (
            "residue",
            module(whole.clone(), max.as_fractional().clone(), empty.clone()),
        ),
        (
            "square",
            module(
                whole.clone(),
                max.power_sumset(2).as_fractional().clone(),
                empty.clone(),
            ),
        ),
        (
            "maximal",
            module(max.as_fractional().clone(), FractionalIdeal::empty(p), empty.clone()),
        ),
        ("residue ring", CombinatorialModule::quotient_ring(&max)),
        (
            "shifted",
            module(frac(p, vec![shift]), FractionalIdeal::empty(p), empty.clone()),
        ),
    ];
    if p.generators() == [vec![2], vec![3]] {
        out.push((
            "normalization",
            module(frac(p, vec![vec![0], vec![1]]), FractionalIdeal::empty(p), empty),
        ));
    }
    out
}

/// Elements of `P` with grading at most `bound`, by exhaustive generator
/// combinations.
pub fn monoid_elements(gens: &[Vector], grading: &[i64], bound: i64) -> HashSet<Vector> {
    let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
    let mut seen: HashSet<Vector> = HashSet::new();
    let mut frontier = vec![vec![0; grading.len()]];
    seen.insert(frontier[0].clone());
    while let Some(v) = frontier.pop() {
        for g in gens {
            let w: Vector = v.iter().zip(g).map(|(a, b)| a + b).collect();
            if dot(&w, grading) <= bound && seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    seen
}

/// `Tor₁` of `Z[P]/(J)` against `E` in degree `g`, built directly from the
/// tensor product: symbols `[h]` for `h ∈ J ∖ K` with `g - h ∈ A ∖ B`,
/// relations `[h + r] = [h]` for `r ∈ P`, mapped to `E_g` by `[h] -> t^g`.
/// Returns the rank of `ker / im`.
pub struct TorOracle {
    elements: HashSet<Vector>,
    grading: Vector,
    bound: i64,
}

impl TorOracle {
    pub fn new(desk: &Desk, bound: i64) -> Self {
        TorOracle {
            elements: monoid_elements(desk.monoid.generators(), &desk.grading, bound),
            grading: desk.grading.clone(),
            bound,
        }
    }

    fn weight(&self, v: &[i64]) -> i64 {
        v.iter().zip(&self.grading).map(|(a, b)| a * b).sum()
    }

    fn in_p(&self, v: &[i64]) -> bool {
        assert!(self.weight(v) <= self.bound, "oracle enumeration too small");
        self.weight(v) >= 0 && self.elements.contains(v)
    }

    fn in_set(&self, gens: &[Vector], v: &[i64]) -> bool {
        gens.iter().any(|a| {
            let d: Vector = v.iter().zip(a).map(|(x, y)| x - y).collect();
            self.in_p(&d)
        })
    }

    pub fn tor1_rank(&self, e: &CombinatorialModule, k: &MonoidIdeal, j: &MonoidIdeal, g: &[i64]) -> usize {
        let a = e.numerator().generators();
        let b = e.denominator().generators();
        let jg = j.generators();
        let kg = k.generators();
        let in_e = |v: &[i64]| self.in_set(a, v) && !self.in_set(b, v);
        let min_a = a.iter().map(|x| self.weight(x)).min().unwrap_or(0);
        let top = self.weight(g) - min_a;
        let sub = |x: &[i64], y: &[i64]| -> Vector { x.iter().zip(y).map(|(p, q)| p - q).collect() };
        // degrees of J (inside or outside K) that can pair with E
        let mut hs: Vec<Vector> = self
            .elements
            .iter()
            .filter(|h| self.weight(h) <= top)
            .filter(|h| self.in_set(jg, h) && self.in_set(a, &sub(g, h)))
            .cloned()
            .collect();
        hs.sort();
        let basis: Vec<&Vector> = hs
            .iter()
            .filter(|h| !self.in_set(kg, h) && in_e(&sub(g, h)))
            .collect();
        let index = |h: &Vector| basis.iter().position(|x| *x == h);
        let n = basis.len();
        if n == 0 {
            return 0;
        }
        // x_h (x) t^r y = x_{h+r} (x) y, where x_{h+r} = 0 once h + r is in K
        let mut relations: Vec<Vec<i64>> = Vec::new();
        for h in &hs {
            for h2 in &hs {
                if h == h2 || !self.in_p(&sub(h2, h)) || !in_e(&sub(g, h2)) {
                    continue;
                }
                let mut row = vec![0; n];
                if let Some(i) = index(h2) {
                    row[i] += 1;
                }
                if let Some(i) = index(h) {
                    row[i] -= 1;
                }
                relations.push(row);
            }
        }
        let d0_rank = usize::from(in_e(g));
        n - d0_rank - rank(&relations)
    }
}

/// Rank over `Q` by fraction-free elimination.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x = *x * a - y * b;
                }
                let g = m[i].iter().fold(0i128, |g, &x| num_gcd(g, x));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
    }
    r
}

fn num_gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn primes_containing(k: &MonoidIdeal) -> Vec<MonoidIdeal> {
    prime_ideals(k.parent())
        .into_iter()
        .filter(|j| j.contains_ideal(k))
        .collect()
}

pub fn relative_ideals(p: &MonoidPresentation) -> Vec<MonoidIdeal> {
    let mut out = vec![MonoidIdeal::empty(p), MonoidIdeal::maximal(p).power_sumset(2)];
    out.push(ideal(p, vec![p.generators()[0].clone()]));
    out
}

/// A sharp monoid with `1..=3`-dimensional ambient lattice and generators
/// drawn from `[-4, 4]`, by rejection.
pub fn random_sharp_monoid(rng: &mut ChaCha8Rng) -> MonoidPresentation {
    loop {
        let d = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=d + 2);
        let gens: Vec<Vector> = (0..n)
            .map(|_| (0..d).map(|_| rng.gen_range(-4..=4)).collect())
            .collect();
        if gens.iter().all(|g| g.iter().all(|&x| x == 0)) {
            continue;
        }
        if let Ok(p) = MonoidPresentation::new(d, gens) {
            if p.is_sharp() {
                return p;
            }
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub struct OracleSweep {
    pub checked: usize,
    pub nonzero: usize,
    pub mismatches: Vec<String>,
}

/// Every (desk, module, K, prime J ⊇ K, degree) combination of the
/// oracle suite, with the library and oracle ranks.
pub fn oracle_mismatches(weight_bound: i64) -> OracleSweep {
    let mut checked = 0;
    let mut nonzero = 0;
    let mut bad = Vec::new();
    for desk in desk_suite() {
        let p = &desk.monoid;
        let oracle = TorOracle::new(&desk, 48);
        let degrees: Vec<Vector> = box_points(&desk.degree_box)
            .into_iter()
            .filter(|g| p.in_gp(g) && p.weight(g) <= weight_bound)
            .collect();
        for (name, e) in desk_modules(p) {
            for k in relative_ideals(p) {
                if !e.is_annihilated_by(&k) {
                    continue;
                }
                let e = e.with_relative(&k).unwrap();
                for j in primes_containing(&k) {
                    let pres = present_ideal(&j, &k).unwrap();
                    for g in &degrees {
                        let h = tor1_piece(&pres, &e, g).unwrap();
                        let want = oracle.tor1_rank(&e, &k, &j, g);
                        checked += 1;
                        nonzero += usize::from(want > 0);
                        if h.rank != want || !h.torsion.is_empty() {
                            bad.push(format!(
                                "{} {name} K={:?} J={:?} g={g:?}: {h:?} vs {want}",
                                desk.name,
                                k.generators(),
                                j.generators()
                            ));
                        }
                    }
                }
            }
        }
    }
    OracleSweep { checked, nonzero, mismatches: bad }
}

fn non_prime_ideals(p: &MonoidPresentation) -> Vec<MonoidIdeal> {
    let max = MonoidIdeal::maximal(p);
    let mut out = vec![max.power_sumset(2), max.power_sumset(3)];
    for g in p.generators() {
        out.push(MonoidIdeal::new(p, vec![g.clone()]).unwrap());
        out.push(MonoidIdeal::new(p, vec![g.iter().map(|x| 2 * x).collect()]).unwrap());
    }
    out.retain(|j| !j.is_prime());
    out
}

/// `(witnesses, violations)` of prime reduction over the desk suite.
pub fn prime_reduction_counts() -> (usize, Vec<String>) {
    let mut witnesses = 0;
    let mut bad = Vec::new();
    for desk in desk_suite() {
        let p = &desk.monoid;
        for (name, e) in desk_modules(p) {
            let k = MonoidIdeal::empty(p);
            for j in non_prime_ideals(p) {
                let v = tor1_against(&e, &k, &j, 10).unwrap();
                let TorResult::NotTFlat { weight, .. } = v.result else {
                    continue;
                };
                witnesses += 1;
                let found = primes_containing(&j).iter().any(|q| {
                    matches!(
                        tor1_against(&e, &k, q, weight).unwrap().result,
                        TorResult::NotTFlat { .. }
                    )
                });
                if !found {
                    bad.push(format!("{} {name} J={:?}", desk.name, j.generators()));
                }
            }
        }
    }
    (witnesses, bad)
}


/// Inclusions `P -> Q` of the desk suite with finite-index group image.
pub fn desk_inclusions() -> Vec<(&'static str, tflat_core::ideal::Inclusion)> {
    use tflat_core::ideal::Inclusion;
    let n = MonoidPresentation::free(1);
    let n2 = MonoidPresentation::free(2);
    let paper = paper_monoid();
    vec![
        (
            "<2,3> in N",
            Inclusion::identity_on_ambient(&MonoidPresentation::numerical(&[2, 3]), &n).unwrap(),
        ),
        (
            "2N in N",
            Inclusion::identity_on_ambient(&MonoidPresentation::numerical(&[2]), &n).unwrap(),
        ),
        (
            "N^2 in N^2 by diag(1,2)",
            Inclusion::new(&n2, &n2, vec![vec![1, 0], vec![0, 2]]).unwrap(),
        ),
        (
            "paper in its saturation",
            Inclusion::identity_on_ambient(&paper, &paper.saturation()).unwrap(),
        ),
    ]
}

/// For every desk inclusion and module over the target: graded pieces of
/// `E` agree with the sum over summands of the pieces at the pulled-back
/// degrees, at every point of a box.
pub fn restriction_rank_mismatches() -> (usize, Vec<String>) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (name, inc) in desk_inclusions() {
        let q = inc.target().clone();
        let bounds = vec![(-4, 12); q.ambient_rank()];
        for (mname, e) in desk_modules(&q) {
            let parts = tflat_core::modcomb::restrict_scalars(&e, &inc, 64).unwrap();
            for h in box_points(&bounds) {
                if !q.in_gp(&h) {
                    continue;
                }
                let mut total = 0;
                let mut hits = 0;
                for s in &parts {
                    let d: Vector = h.iter().zip(&s.coset_rep).map(|(a, b)| a - b).collect();
                    if let Some(x) = inc.preimage(&d) {
                        hits += 1;
                        total += s.module.graded_piece(&x);
                    }
                }
                checked += 1;
                if total != e.graded_piece(&h) || hits > 1 {
                    bad.push(format!("{name} {mname} h={h:?}: {total} vs {}", e.graded_piece(&h)));
                }
            }
        }
    }
    (checked, bad)
}

/// Faces of the real cone over the generators, from the extreme rays of
/// its dual: every face is the zero set of some set of facet normals.
pub fn dd_face_count(p: &MonoidPresentation) -> usize {
    let coords = p.generator_coords();
    let r = p.gp_rank();
    if r == 0 {
        return 1;
    }
    let dual = double_description(r, coords);
    assert!(dual.lineality.is_empty());
    let zero_sets: Vec<BTreeSet<usize>> = dual
        .rays
        .iter()
        .map(|f| (0..coords.len()).filter(|&i| coords[i].iter().zip(f).map(|(a, b)| a * b).sum::<i64>() == 0).collect())
        .collect();
    let mut faces: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    faces.insert((0..coords.len()).collect());
    loop {
        let before = faces.len();
        let current: Vec<BTreeSet<usize>> = faces.iter().cloned().collect();
        for f in &current {
            for z in &zero_sets {
                faces.insert(f.intersection(z).copied().collect());
            }
        }
        if faces.len() == before {
            return faces.len();
        }
    }
}

pub fn saturated_with_units() -> Vec<MonoidPresentation> {
    vec![
        MonoidPresentation::new(2, vec![vec![1, 0], vec![-1, 0], vec![0, 1]]).unwrap(),
        MonoidPresentation::new(2, vec![vec![1, 0], vec![-1, 0], vec![1, 1]]).unwrap(),
        MonoidPresentation::new(3, vec![vec![1, 1, 0], vec![-1, -1, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap(),
        MonoidPresentation::new(3, vec![vec![1, 0, 0], vec![-1, 0, 0], vec![0, 1, 0], vec![0, -1, 0], vec![1, 1, 1]])
            .unwrap(),
    ]
}

/// The splitting `P ≅ P* ⊕ P̄`: a retraction `σ` of `P^gp` onto the unit
/// lattice sends every generator `g` to a unit with `g - σ(g) ∈ P`, the
/// complements generate a sharp monoid, and together with the units they
/// generate `P` again.
pub fn check_unit_splitting(p: &MonoidPresentation) -> Result<(), String> {
    let units = p.unit_group();
    let unit_coords: Vec<Vector> = units.iter().map(|u| p.gp_coords(u).unwrap()).collect();
    let split = splitting_section(&unit_coords, p.gp_rank()).map_err(|e| e.to_string())?;
    let mut complements = Vec::new();
    for (i, g) in p.generators().iter().enumerate() {
        let c = p.gp_coords(g).unwrap();
        let coeffs = split.retract(&c);
        let sigma_coords: Vec<i64> = split
            .basis
            .mul_vec(&coeffs)
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        let sigma = p.gp_lattice().point(&sigma_coords);
        if !p.contains(&sigma) || !p.contains(&sigma.iter().map(|x| -x).collect::<Vector>()) {
            return Err(format!("σ(g{i}) is not a unit"));
        }
        let rest: Vector = g.iter().zip(&sigma).map(|(a, b)| a - b).collect();
        if !p.contains(&rest) {
            return Err(format!("g{i} - σ(g{i}) not in P"));
        }
        if !p.is_unit_generator(i) {
            complements.push(rest);
        }
    }
    let bar = MonoidPresentation::new(p.ambient_rank(), complements.clone()).map_err(|e| e.to_string())?;
    if !bar.is_sharp() {
        return Err("complement monoid has units".into());
    }
    let mut all = complements;
    for u in &units {
        all.push(u.clone());
        all.push(u.iter().map(|x| -x).collect());
    }
    let back = MonoidPresentation::new(p.ambient_rank(), all).map_err(|e| e.to_string())?;
    if !back.same_monoid(p) {
        return Err("units and complement do not generate P".into());
    }
    Ok(())
}

/// Embeds `count` random sharp monoids along their complete flags and
/// returns the failures.
pub fn random_embedding_failures(count: usize, seed: u64) -> Vec<String> {
    let mut rng = rng(seed);
    let mut bad = Vec::new();
    for _ in 0..count {
        let p = random_sharp_monoid(&mut rng);
        let flag = p.complete_flag();
        match flag_embedding(&p, &flag) {
            Ok(e) => {
                let cert = verify_embedding(&e, 3);
                if !cert.passed() {
                    bad.push(format!("{:?}: {}", p.generators(), cert.violation.unwrap()));
                }
            }
            Err(err) => bad.push(format!("{:?}: {err}", p.generators())),
        }
    }
    bad
}

