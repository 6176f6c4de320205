//! Exact-arithmetic computer algebra for Malcev algebras and the structures
//! built on top of them: representations, embedding tensors, ET-representations,
//! second cohomology of an embedding tensor with coefficients in an
//! ET-representation, and infinitesimal/formal deformations.
//!
//! Everything is computed over ℚ (arbitrary-precision rationals) or a prime
//! field 𝔽_p — no floating point anywhere. All iteration orders, basis
//! choices, and report layouts are deterministic so that identical inputs
//! produce byte-identical outputs.

pub mod error;
pub mod scalar;
pub mod linalg;
pub mod report;
pub mod algebra;
pub mod rep;
pub mod cohomology;
pub mod deform;
pub mod enumerate;
pub mod et;
pub mod etrep;
pub mod fixtures;
pub mod io;

pub use error::{Error, Result};
pub use scalar::{Field, Scalar};
pub use linalg::Matrix;
