//! Exact computations with affine monoids, combinatorial modules over their
//! monoid rings, and t-flatness.
//!
//! Monoids are finitely generated submonoids of `Z^k`. Everything is exact:
//! normal forms run over arbitrary-precision integers and searches are
//! bounded by an integer grading, so failures come with witnesses and
//! positive answers come with the bound they were checked to.

pub mod cone;
pub mod diophantine;
pub mod embed;
pub mod error;
pub mod ideal;
pub mod lattice;
pub mod modcomb;
pub mod monoid;
pub mod par;
pub mod tflat;
pub mod vector;

pub use embed::{facet_valuation, flag_embedding, verify_embedding, EmbeddingCertificate, FlagEmbedding};
pub use error::{Error, Result};
pub use ideal::{FractionalIdeal, MonoidIdeal};
pub use lattice::{AbelianGroupPresentation, GroupElement, IntMatrix, Lattice};
pub use modcomb::{CombinatorialModule, PrimeFiltration};
pub use monoid::{Face, Flag, MonoidPresentation, QuotientMonoid};
pub use tflat::{MonomialPresentation, TorResult, TorVerdict};
pub use vector::Vector;
