//! Assembly of the complexes over F_p[t] and the proposition-level checks.

pub mod assemble;
pub mod checks;
pub mod report;

pub use assemble::{build_complex, ComplexSpec, Family, TruncationParams};
pub use checks::*;
pub use report::{CheckResult, VerificationReport};
