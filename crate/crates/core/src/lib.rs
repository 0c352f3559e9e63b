//! Exact symbolic engine for generalized Clifford algebras of homogeneous
//! forms: coefficient rings, the mixed free algebra, divided-power laws,
//! Clifford presentations, a bounded noncommutative Groebner engine and
//! homology of free dg algebras.

pub mod clifford;
pub mod coeffs;
pub mod dg;
pub mod error;
pub mod freealg;
pub mod gbasis;
pub mod laws;
pub mod linalg;

pub use error::{Error, Result};
