//! Fixtures shared by the criterion benches.

use fockcalc_core::ops::exp_affine_symbol;
use fockcalc_core::{Complex, WcoSymbol};

/// `e^{z/2}` composed with `1/2 + z/4`.
pub fn worked_symbol() -> WcoSymbol {
    let c = |re: f64| Complex::new(re, 0.0);
    exp_affine_symbol(c(1.0), c(0.5), c(0.25), c(0.5)).expect("valid symbol")
}
