//! Flag embeddings `φ: P -> N^d` carrying the standard flag of `N^d` to a
//! given complete flag of a sharp monoid and inducing an isomorphism on
//! groups.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{splitting_section, IntMatrix};
use crate::monoid::{fmt_vector, Face, Flag, MonoidPresentation};
use crate::vector::{self, Vector};

/// Integer functional on `P^gp`, stored in the canonical gp coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GpFunctional {
    #[serde(skip)]
    monoid: MonoidPresentation,
    pub coefficients: Vector,
}

impl GpFunctional {
    pub fn eval(&self, v: &[i64]) -> Option<i64> {
        self.monoid.gp_coords(v).map(|c| vector::dot(&self.coefficients, &c))
    }

    /// A positive multiple of the functional extended to the ambient space.
    pub fn ambient(&self) -> Vector {
        self.monoid.gp_lattice().ambient_functional(&self.coefficients)
    }
}

/// The valuation `ψ₂` attached to a facet: the primitive functional on
/// `P^gp` vanishing on the facet and nonnegative on `P`.
pub fn facet_valuation(p: &MonoidPresentation, facet: &Face) -> Result<GpFunctional> {
    if facet.parent() != p {
        return Err(Error::ParentMismatch);
    }
    if facet.codim() != 1 {
        return Err(Error::NotFacet(facet.indices().to_vec()));
    }
    if !p.is_saturated() {
        return Err(Error::NotSaturated);
    }
    let coords = p.generator_coords();
    let normal = p
        .facet_normals()
        .iter()
        .find(|f| facet.indices().iter().all(|&i| vector::dot(f, &coords[i]) == 0))
        .expect("a facet lies on a facet hyperplane")
        .clone();
    Ok(GpFunctional {
        monoid: p.clone(),
        coefficients: normal,
    })
}

/// An embedding `P -> N^d`, stored as a `d x rank(P^gp)` matrix acting on
/// the canonical gp coordinates of `P`. (On ambient coordinates the map is
/// in general only rational, since `P^gp` need not be saturated in `Z^k`.)
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagEmbedding {
    #[serde(skip)]
    source: MonoidPresentation,
    #[serde(skip)]
    flag: Flag,
    /// Basis of `P^gp` that the matrix columns refer to.
    pub gp_basis: Vec<Vector>,
    pub matrix: Vec<Vector>,
    /// The shears `n_1, ..., n_{d-1}` chosen at the last step.
    pub shears: Vec<i64>,
}

impl FlagEmbedding {
    /// Assembles an embedding from a matrix on gp coordinates without any
    /// checks; see [`verify_embedding`].
    pub fn from_parts(source: &MonoidPresentation, flag: &Flag, matrix: Vec<Vector>) -> Self {
        FlagEmbedding {
            source: source.clone(),
            flag: flag.clone(),
            gp_basis: source.gp_lattice().basis().to_vec(),
            matrix,
            shears: Vec::new(),
        }
    }

    pub fn source(&self) -> &MonoidPresentation {
        &self.source
    }

    pub fn flag(&self) -> &Flag {
        &self.flag
    }

    pub fn target_rank(&self) -> usize {
        self.matrix.len()
    }

    /// `φ(v)` for `v` in `P^gp`.
    pub fn image(&self, v: &[i64]) -> Option<Vector> {
        let c = self.source.gp_coords(v)?;
        Some(self.matrix.iter().map(|row| vector::dot(row, &c)).collect())
    }

    pub fn generator_images(&self) -> Vec<Vector> {
        self.source
            .generators()
            .iter()
            .map(|g| self.image(g).expect("generator in P^gp"))
            .collect()
    }
}

/// Embedding data for one face monoid of the chain.
struct Stage {
    monoid: MonoidPresentation,
    matrix: Vec<Vector>,
}

impl Stage {
    fn apply(&self, v: &[i64]) -> Vector {
        let c = self.monoid.gp_coords(v).expect("vector in the face group");
        self.matrix.iter().map(|row| vector::dot(row, &c)).collect()
    }
}

fn face_monoid(s: &MonoidPresentation, gens: Vec<Vector>) -> MonoidPresentation {
    let gens = if gens.is_empty() { vec![s.zero()] } else { gens };
    MonoidPresentation::new(s.ambient_rank(), gens).expect("valid generators")
}

/// Builds `φ = θ ∘ ψ` face by face along the flag, on the saturation.
///
/// At each step `ψ₂` is the facet valuation of the next face, `ψ₁` is the
/// previous stage composed with the SNF splitting, and each shear `n_j` is
/// the least integer making every Hilbert basis image nonnegative. Choosing
/// the least integer (rather than the least natural number) makes the
/// result independent of the splitting.
pub fn flag_embedding(p: &MonoidPresentation, flag: &Flag) -> Result<FlagEmbedding> {
    if !p.is_sharp() {
        return Err(Error::NotSharp);
    }
    if flag.parent() != p {
        return Err(Error::ParentMismatch);
    }
    flag.check_complete()?;

    let s = p.saturation();
    // faces of P and of its saturation share cone and facet equations
    let chain: Vec<MonoidPresentation> = flag
        .faces()
        .iter()
        .map(|f| {
            let eqs = f.equations();
            let gens = s
                .generators()
                .iter()
                .filter(|g| {
                    let c = s.gp_coords(g).expect("generator in S^gp");
                    eqs.iter().all(|e| vector::dot(e, &c) == 0)
                })
                .cloned()
                .collect();
            face_monoid(&s, gens)
        })
        .collect();

    let mut stage = Stage {
        monoid: chain[0].clone(),
        matrix: Vec::new(),
    };
    let mut shears = Vec::new();
    for i in 1..chain.len() {
        let m = &chain[i];
        let r = m.gp_rank();
        let prev_coords: Vec<Vector> = chain[i - 1]
            .generators()
            .iter()
            .map(|g| m.gp_coords(g).expect("subface in face group"))
            .collect();
        let psi2 = m
            .facet_normals()
            .iter()
            .find(|f| prev_coords.iter().all(|c| vector::dot(f, c) == 0))
            .ok_or_else(|| Error::IncompleteFlag("consecutive faces are not facet-adjacent".into()))?
            .clone();
        let split = splitting_section(&prev_coords, r)?;
        let basis_cols = split.basis.to_i64_columns()?;
        // column c of ψ₁ is Φ_{i-1}(σ(e_c))
        let psi1_cols: Vec<Vector> = (0..r)
            .map(|c| {
                let mut e = vec![0i64; r];
                e[c] = 1;
                let y = split.retract(&e);
                let mut x = vec![0i64; r];
                for (b, &k) in basis_cols.iter().zip(&y) {
                    x = vector::add(&x, &vector::scale(b, k));
                }
                stage.apply(&m.gp_lattice().point(&x))
            })
            .collect();
        let rows_prev = i - 1;
        let psi1: Vec<Vector> = (0..rows_prev)
            .map(|j| psi1_cols.iter().map(|col| col[j]).collect())
            .collect();
        let hb: Vec<Vector> = m
            .generators()
            .iter()
            .map(|g| m.gp_coords(g).expect("generator in its group"))
            .collect();
        let mut ns = vec![i64::MIN; rows_prev];
        for h in &hb {
            let d = vector::dot(&psi2, h);
            if d <= 0 {
                continue;
            }
            for (j, n) in ns.iter_mut().enumerate() {
                let v = vector::dot(&psi1[j], h);
                *n = (*n).max(num_integer::Integer::div_ceil(&(-v), &d));
            }
        }
        let mut matrix: Vec<Vector> = psi1
            .iter()
            .zip(&ns)
            .map(|(row, &n)| vector::add(row, &vector::scale(&psi2, n)))
            .collect();
        matrix.push(psi2);
        shears = ns;
        stage = Stage {
            monoid: m.clone(),
            matrix,
        };
    }

    debug_assert_eq!(stage.monoid.gp_lattice().basis(), p.gp_lattice().basis());
    Ok(FlagEmbedding {
        source: p.clone(),
        flag: flag.clone(),
        gp_basis: p.gp_lattice().basis().to_vec(),
        matrix: stage.matrix,
        shears,
    })
}

/// The first invariant an embedding violates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    Shape { rows: usize, cols: usize, expected: usize },
    Nonnegativity { element: Vector, image: Vector },
    Injectivity { first: Vector, second: Vector },
    GpIsomorphism { determinant: String },
    FlagPullback { step: usize, element: Vector, image: Vector },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Shape { rows, cols, expected } => {
                write!(f, "shape: matrix is {rows}x{cols}, expected {expected}x{expected}")
            }
            Violation::Nonnegativity { element, image } => write!(
                f,
                "nonnegativity: {} maps to {}",
                fmt_vector(element),
                fmt_vector(image)
            ),
            Violation::Injectivity { first, second } => write!(
                f,
                "injectivity: {} and {} have the same image",
                fmt_vector(first),
                fmt_vector(second)
            ),
            Violation::GpIsomorphism { determinant } => {
                write!(f, "gp-isomorphism: determinant {determinant}")
            }
            Violation::FlagPullback { step, element, image } => write!(
                f,
                "flag pullback at step {step}: {} maps to {}",
                fmt_vector(element),
                fmt_vector(image)
            ),
        }
    }
}

/// Outcome of [`verify_embedding`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingCertificate {
    pub violation: Option<Violation>,
    pub elements_checked: usize,
    pub box_bound: i64,
}

impl EmbeddingCertificate {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Independent check of the embedding's three properties: nonnegative and
/// injective on generators, an isomorphism on groups, and pulling the
/// standard flag back to the given one. Nonnegativity and the flag pullback
/// are also checked on every element of weight at most `box_bound`.
pub fn verify_embedding(e: &FlagEmbedding, box_bound: i64) -> EmbeddingCertificate {
    let fail = |v: Violation, n: usize| EmbeddingCertificate {
        violation: Some(v),
        elements_checked: n,
        box_bound,
    };
    let p = &e.source;
    let r = p.gp_rank();
    let d = e.matrix.len();
    if d != r || e.matrix.iter().any(|row| row.len() != r) {
        return fail(
            Violation::Shape {
                rows: d,
                cols: e.matrix.first().map_or(r, |row| row.len()),
                expected: r,
            },
            0,
        );
    }
    let gens = p.generators();
    let images = e.generator_images();
    for (g, im) in gens.iter().zip(&images) {
        if im.iter().any(|&x| x < 0) {
            return fail(
                Violation::Nonnegativity {
                    element: g.clone(),
                    image: im.clone(),
                },
                0,
            );
        }
    }
    for a in 0..gens.len() {
        for b in a + 1..gens.len() {
            if images[a] == images[b] {
                return fail(
                    Violation::Injectivity {
                        first: gens[a].clone(),
                        second: gens[b].clone(),
                    },
                    0,
                );
            }
        }
    }
    let det = IntMatrix::from_rows(r, &e.matrix).determinant();
    if det != 1.into() && det != (-1).into() {
        return fail(
            Violation::GpIsomorphism {
                determinant: det.to_string(),
            },
            0,
        );
    }
    let faces = e.flag.faces();
    let pullback_ok = |v: &[i64], im: &[i64]| -> Option<usize> {
        (0..faces.len()).find(|&i| {
            let on_standard = im[i..].iter().all(|&x| x == 0);
            on_standard != faces[i].contains(v)
        })
    };
    for (g, im) in gens.iter().zip(&images) {
        if let Some(step) = pullback_ok(g, im) {
            return fail(
                Violation::FlagPullback {
                    step,
                    element: g.clone(),
                    image: im.clone(),
                },
                0,
            );
        }
    }
    let elements = p.elements_up_to_weight(box_bound);
    for (n, v) in elements.iter().enumerate() {
        let im = e.image(v).expect("element in P^gp");
        if im.iter().any(|&x| x < 0) {
            return fail(
                Violation::Nonnegativity {
                    element: v.clone(),
                    image: im,
                },
                n,
            );
        }
        if let Some(step) = pullback_ok(v, &im) {
            return fail(
                Violation::FlagPullback {
                    step,
                    element: v.clone(),
                    image: im,
                },
                n,
            );
        }
    }
    EmbeddingCertificate {
        violation: None,
        elements_checked: elements.len(),
        box_bound,
    }
}
