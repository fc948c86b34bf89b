//! Constant-dimension subspace codes inside Schubert varieties of the
//! Grassmannian `Gr_q(k, rk)`.
//!
//! The crate builds intersecting sets from scattered linear sets (via field
//! reduction) and from norm-1 elements of `F_{q^k}`, compares them with the
//! multilevel construction over Ferrers-diagram rank-metric codes, and
//! verifies every code by direct linear algebra over `F_q`.

pub mod bounds;
pub mod clique;
pub mod code;
pub mod codefile;
pub mod construct;
pub mod error;
pub mod ferrers;
pub mod field;
pub mod gf;
pub mod limits;
pub mod linear_set;
pub mod matrix;
pub mod schubert;
pub mod subspace;
pub mod verify;

pub use error::{Error, Result};
pub use field::{ExtElement, FieldCtx, FieldSpec};
pub use gf::Fq;
pub use matrix::{rank_distance, Matrix};
pub use subspace::{enumerate_subspaces, gaussian_binomial, subspace_distance, Subspace};
pub use code::SubspaceCode;
pub use ferrers::{FerrersCode, FerrersDiagram, FerrersMethod};
pub use schubert::{PivotVector, SchubertCondition};
pub use linear_set::{LinearSetPoint, QSystem};
pub use construct::IntersectingSet;
pub use verify::{verify_intersecting, VerificationReport};
pub use codefile::{CodeFile, QSystemFile};
