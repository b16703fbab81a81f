//! Graded invariants of Jacobian ideals of projective hypersurfaces.
//!
//! Given a homogeneous `f ∈ k[x_0..x_n]` whose hypersurface has isolated
//! singularities, the crate computes by exact degree-wise linear algebra the
//! Hilbert function of the Milnor algebra `S/J_f`, the relation modules among
//! the partials, the saturation of `J_f` and the invariants derived from them,
//! and checks the identities tying them together.

pub mod analyzer;
pub mod corpus;
pub mod error;
pub mod field;
pub mod graded;
pub mod linalg;
pub mod milnor;
mod multimodular;
pub mod parse;
pub mod poly;
pub mod report;
pub mod saturation;
pub mod syzygy;

pub use analyzer::{analyze, analyze_text, AnalyzeOptions, InvariantReport};
pub use error::AnalyzeError;
pub use field::{Field, FieldMode, PrimeField, Rationals};
pub use parse::{parse_poly, parse_vars};
pub use poly::{euler_check, HomogPoly, Monomial};
