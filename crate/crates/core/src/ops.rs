//! Action, finite-section assembly, products and adjoints of weighted
//! composition operators.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{FockError, Result};
use crate::maps::AffineMap;
use crate::matrix::OperatorMatrix;
use crate::series::{self, FockParams, TruncatedSeries};
use crate::symbol::{WcoSymbol, WcoWeight};
use crate::{ensure_finite, Complex};

const BOUNDARY_TOL: f64 = 1e-12;

/// `weight · (f ∘ map)` for an affine map, truncated at `f`'s order.
pub fn apply_wco(sym: &WcoSymbol, f: &TruncatedSeries) -> Result<TruncatedSeries> {
    let map = sym.affine_map()?;
    let weight = sym.weight.to_series(f.params())?;
    let composed = series::compose_affine(f, map.a, map.b)?;
    series::mul(&weight, &composed)
}

/// `weight(z) · f(map(z))` by direct evaluation.
pub fn eval_wco_at(sym: &WcoSymbol, f: &TruncatedSeries, z: Complex) -> Result<Complex> {
    let w = sym.map.eval(z)?;
    ensure_finite(sym.weight.eval(z)? * f.eval(w), "weighted composition")
}

/// Finite section of `W` on `e_0..e_{N−1}`, `N = params.order()`.
///
/// Column `n` holds the coefficients of `W e_n` against the orthonormal
/// basis. Each entry depends only on weight coefficients up to degree `m` and
/// on the exact binomial expansion of `(az + b)ⁿ`, so it carries no truncation
/// error.
pub fn assemble_matrix(sym: &WcoSymbol, params: FockParams) -> Result<OperatorMatrix> {
    let map = sym.affine_map()?;
    let n = params.order();
    let weight = sym.weight.to_series(params)?;
    let mut entries = DMatrix::zeros(n, n);
    // Entry (m, n) is coeff_m(W zⁿ) · ‖zᵐ‖/‖zⁿ‖; the ratio is exactly 1 on the diagonal.
    for col in 0..n {
        let z_n = TruncatedSeries::monomial(col, params)?;
        let image = series::mul(&weight, &series::compose_affine(&z_n, map.a, map.b)?)?;
        let col_norm = params.monomial_norm_sq(col);
        for row in 0..n {
            entries[(row, col)] = image.coeff(row) * (params.monomial_norm_sq(row) / col_norm).sqrt();
        }
    }
    OperatorMatrix::new(entries, params)
}

/// Symbol of `W_{f,φ} W_{g,ψ} = M_{f·(g∘φ)} C_{ψ∘φ}`.
///
/// Exponential-linear weights stay in closed form:
/// `c₁e^{w₁z} · c₂e^{w₂(az+b)} = c₁c₂e^{w₂b} e^{(w₁ + a w₂)z}`. Otherwise the
/// weight becomes a series at the order of the series operand.
pub fn product_symbol(s1: &WcoSymbol, s2: &WcoSymbol) -> Result<WcoSymbol> {
    let phi = *s1.affine_map()?;
    let psi = *s2.affine_map()?;
    let map = psi.compose(&phi);
    let weight = match (&s1.weight, &s2.weight) {
        (WcoWeight::ExpLinear { c: c1, w: w1 }, WcoWeight::ExpLinear { c: c2, w: w2 }) => {
            WcoWeight::exp_linear(c1 * c2 * (w2 * phi.b).exp(), w1 + phi.a * w2)?
        }
        (WcoWeight::Series(s), _) | (_, WcoWeight::Series(s)) => {
            let params = s.params();
            let f = s1.weight.to_series(params)?;
            let g = s2.weight.to_series(params)?;
            WcoWeight::Series(series::mul(&f, &series::compose_affine(&g, phi.a, phi.b)?)?)
        }
        _ => return Err(FockError::NonEntireWeight),
    };
    Ok(WcoSymbol::new(weight, map))
}

/// `W* K_z = conj(f(z)) K_{φ(z)}`.
pub fn adjoint_on_kernel(sym: &WcoSymbol, z: Complex, params: FockParams) -> Result<TruncatedSeries> {
    let fz = sym.weight.eval(z)?;
    let target = sym.map.eval(z)?;
    series::kernel(target, params)?.scale(fz.conj())
}

/// Boundedness class of `C_φ` for affine `φ(z) = az + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Boundedness {
    BoundedStrict,
    BoundedUnitary,
    Unbounded,
}

impl Boundedness {
    pub fn is_bounded(self) -> bool {
        self != Boundedness::Unbounded
    }
}

/// `|a| < 1` bounded; `|a| = 1, b = 0` unitary; everything else unbounded.
pub fn boundedness_check(map: &AffineMap) -> Boundedness {
    let modulus = map.a.norm();
    if (modulus - 1.0).abs() <= BOUNDARY_TOL {
        if map.b.norm() <= BOUNDARY_TOL {
            Boundedness::BoundedUnitary
        } else {
            Boundedness::Unbounded
        }
    } else if modulus < 1.0 {
        Boundedness::BoundedStrict
    } else {
        Boundedness::Unbounded
    }
}

/// Helper for symbols `c e^{wz}` composed with `az + b`.
pub fn exp_affine_symbol(c: Complex, w: Complex, a: Complex, b: Complex) -> Result<WcoSymbol> {
    Ok(WcoSymbol::new(WcoWeight::exp_linear(c, w)?, AffineMap::new(a, b)?))
}
