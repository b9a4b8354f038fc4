//! Exact computer algebra for characteristic-p operator algebras on the
//! affine line and their Hochschild-type cochain complexes over `F_p[t]`.

pub mod azumaya;
pub mod brace;
pub mod engine;
pub mod error;
pub mod field;
pub mod homology;
pub mod identities;
pub mod matrix;
pub mod pol;
pub mod poly;
pub mod snf;
pub mod tensor;
pub mod weyl;

pub use error::{Error, Result};
pub use field::FieldElement;
pub use homology::{complex_cohomology, CochainMatrixComplex, HomologySummary};
pub use matrix::{FpMatrix, PolyMatrix};
pub use poly::{Polynomial, Var};
pub use snf::smith_normal_form;
pub use weyl::{Flavor, WeylElement};
