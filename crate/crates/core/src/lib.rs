//! Exact constructions of Schur, Levi and parabolic Schur algebras and of
//! the degenerate double Hecke algebra image on the enhanced tensor space
//! `(Q^{n+1})^{⊗r}`, together with the checks that compare them.

pub mod combinatorics;
pub mod ddha;
pub mod duality;
pub mod error;
pub mod linalg;
pub mod parabolic;
pub mod perm;
pub mod rational;
pub mod report;
pub mod schur;

pub use combinatorics::{Composition, Partition};
pub use error::{Error, Result};
pub use linalg::{AlgebraHandle, MatrixQ, SparseVec, Subspace};
pub use perm::Perm;
pub use rational::Rational;
pub use report::{Check, Report, ReportRecord, Status, Value};
