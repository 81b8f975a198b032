use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow while converting an exact result to machine integers")]
    Overflow,
    #[error("subgroup is not a direct summand of the ambient lattice")]
    NoSplit,
    #[error("monoid has nontrivial units")]
    NotSharp,
    #[error("monoid is not saturated")]
    NotSaturated,
    #[error("generator set {0:?} is not a face")]
    NotAFace(Vec<usize>),
    #[error("face {0:?} is not a facet")]
    NotFacet(Vec<usize>),
    #[error("incomplete flag: {0}")]
    IncompleteFlag(String),
    #[error("search bound exceeded in {what} (bound {bound})")]
    BoundExceeded { what: &'static str, bound: u64 },
    #[error("degree {0:?} is not present in the module")]
    DegreeNotPresent(Vec<i64>),
    #[error("module is not annihilated by the relative ideal")]
    NotAnnihilated,
    #[error("ideal K is not contained in J")]
    NotContained,
    #[error("objects live over different monoids")]
    ParentMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0}")]
    Invalid(String),
}
