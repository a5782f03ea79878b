//! Numerical verification of subadditivity inequalities for concave
//! functions of normal matrices under symmetric norms.
//!
//! The crate is organized bottom-up:
//!
//! - [`matcore`]: dense complex matrices, structural predicates, SVD-based
//!   functional calculus, dilations and polar factors.
//! - [`norms`]: Ky Fan and Schatten norms, weak majorization.
//! - [`concave`]: the scalar function classes the inequalities quantify over.
//! - [`theorems`]: one checkable predicate per inequality, counterexample
//!   fixtures.
//! - [`harness`]: random operand generators, the suite runner, hypothesis-
//!   dropping searches and JSON reports.

pub mod concave;
pub mod error;
pub mod harness;
pub mod matcore;
pub mod norms;
pub mod theorems;

pub use concave::{AffineConcave, ConcaveFn, ConvexPower, RealFn};
pub use error::{Error, Result};
pub use matcore::ComplexMatrix;
pub use norms::{MajorizationVerdict, SymmetricNorm};
pub use theorems::CheckResult;

