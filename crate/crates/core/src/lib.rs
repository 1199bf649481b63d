//! Numerical verification toolkit for weighted composition operators
//! `W_{f,φ} h = f · (h ∘ φ)` on the Fock space `F²_α`.
//!
//! Functions are represented by truncated Taylor series in the monomial basis
//! ([`series`]). Operators with affine symbols are assembled as finite sections
//! in the orthonormal basis `e_n = √(αⁿ/n!) zⁿ` ([`ops`], [`matrix`]). The
//! [`theorems`] module turns each closed-form identity about self-adjoint,
//! commuting and normal weighted composition operators into a
//! [`CheckReport`]; [`oracle`] provides an independent quadrature route for the
//! inner product, and [`runner`] wires everything into named checks and a suite.

pub mod error;
pub mod maps;
pub mod matrix;
pub mod ops;
pub mod oracle;
pub mod report;
pub mod runner;
pub mod samples;
pub mod series;
pub mod symbol;
pub mod theorems;

pub use error::{FockError, Result};
pub use maps::{AffineMap, LinearFractionalMap, SymbolMap};
pub use matrix::OperatorMatrix;
pub use ops::Boundedness;
pub use report::{CheckReport, Verdict};
pub use runner::{OutputFormat, RunConfig};
pub use series::{FockParams, TruncatedSeries};
pub use symbol::{WcoSymbol, WcoWeight};

/// Complex scalar used throughout.
pub type Complex = num_complex::Complex64;

pub(crate) fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

pub(crate) fn ensure_finite(z: Complex, what: &'static str) -> Result<Complex> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(FockError::NonFinite(what))
    }
}
