//! Exact cohomology and Massey products of finite-dimensional commutative DGAs.
//!
//! Coefficients are rationals or residues modulo an odd prime. On top of the
//! cohomology engine sit Massey triple and n-fold products, restricted powers,
//! projectivization models with their Leray-Hirsch structure, and re-checkable
//! non-formality certificates for blow-ups.

pub mod algebra;
pub mod cli;
pub mod dga;
pub mod error;
pub mod io;
pub mod linalg;
pub mod massey;
pub mod models;
pub mod scalar;

pub use error::{Error, Result};
