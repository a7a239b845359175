//! Certificates of single-copy LOCC indistinguishability for the family of
//! two-qubit orthogonal states
//!
//! ```text
//! A1 = a|00> + b|11>     A2 = conj(b)|00> - conj(a)|11>
//! A3 = c|01> + d|10>     A4 = conj(d)|01> - conj(c)|10>
//! ```
//!
//! The certificate rests on a four-party helper state that pairs each `A_i`
//! with a Bell state. If the `A_i` could be told apart by LOCC, the helper
//! state would carry at least one ebit of distillable entanglement across the
//! AC:BD cut. Logarithmic negativity bounds distillable entanglement from
//! above, so `E_N < 1` across that cut rules out local discrimination.
//!
//! Module map:
//! - [`linalg`]: dense complex matrices and a cyclic Jacobi Hermitian eigensolver.
//! - [`qstate`]: qubit registers, pure states, the state families, mixtures and
//!   partial transposes.
//! - [`measures`]: negativity, logarithmic negativity, closed forms and the
//!   region conditions.
//! - [`certifier`]: verdicts and the case taxonomy.
//! - [`scanner`]: parameter sweeps and cross-validation reports.
//! - [`cli`]: the `locc-cert` command-line front end.

pub mod certifier;
pub mod cli;
mod error;
pub mod linalg;
pub mod measures;
pub mod qstate;
pub mod scanner;

pub use error::{Error, Result};

/// Complex amplitude type used throughout the crate.
pub type C64 = num_complex::Complex64;
