//! One checker per identity about self-adjoint weighted composition operators
//! and their commutants. Every checker returns a [`CheckReport`](crate::CheckReport).
//!
//! Kernels are `K_w(z) = e^{α w̄ z}` throughout, so every identity is stated for
//! generic `α`; with `α = 1` they reduce to the familiar `e^{w̄ z}` forms.

mod commutant;
mod fixed_point;
mod normality;
mod operators;
mod selfadjoint;

pub use commutant::{
    check_commutant_symbols, check_degenerate_commutant, check_moebius_conjugation, commutant_symbols,
    printed_counterexample_tuples, reproduce_counterexample, CommutantParams,
};
pub use fixed_point::{
    check_disk_selfmap, check_eigen_identity, check_fixed_point, check_fixed_point_transfer,
    check_h_conjugation, conjugation_factor, disk_selfmap_by_sampling, disk_selfmap_criterion, fixed_point,
    h_map,
};
pub use normality::{
    check_cphi_adjoint_factorization, check_normality, non_normal_draws, normality_criterion, NON_NORMAL_FLOOR,
};
pub use operators::{check_adjoint_on_kernel, check_boundedness, check_product_symbol};
pub use selfadjoint::{check_selfadjoint_forward, check_selfadjoint_reverse, SelfAdjointSymbolParams};

/// Tolerances shared by the checkers.
pub mod tol {
    /// Pure floating-point identities with no truncation involved.
    pub const IDENTITY: f64 = 1e-12;
    /// Pointwise identities with exponentials and powers of rational maps.
    pub const POINTWISE: f64 = 1e-10;
    /// Truncated kernel relations compared coefficientwise.
    pub const KERNEL_COEFF: f64 = 1e-11;
    /// Finite-section comparisons on the leading `N/2` block.
    pub const TRUNCATION: f64 = 1e-9;
    /// Scalar-operator identities that should be exact to rounding.
    pub const SCALAR: f64 = 1e-14;
    /// Fixed point reproduction.
    pub const FIXED_POINT: f64 = 1e-13;
    /// Non-normal residuals must exceed the normal tolerance by this factor.
    pub const NON_NORMAL_FACTOR: f64 = 10.0;
}

/// Relative residual `|lhs − rhs| / max(1, |rhs|)`.
pub(crate) fn rel_diff(lhs: crate::Complex, rhs: crate::Complex) -> f64 {
    (lhs - rhs).norm() / rhs.norm().max(1.0)
}

/// Leading block size used for finite-section residuals.
pub fn default_block(order: usize) -> usize {
    order / 2
}

pub(crate) fn cjson(z: crate::Complex) -> serde_json::Value {
    crate::symbol::complex_json(z)
}
