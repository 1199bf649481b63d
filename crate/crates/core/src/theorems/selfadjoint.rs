use serde_json::json;

use super::{cjson, rel_diff, tol};
use crate::error::{FockError, Result};
use crate::maps::AffineMap;
use crate::matrix::hermitian_residual;
use crate::ops::assemble_matrix;
use crate::report::{Bound, CheckReport};
use crate::samples;
use crate::series::{self, FockParams};
use crate::symbol::{WcoSymbol, WcoWeight};
use crate::theorems::disk_selfmap_criterion;
use crate::{c, Complex};

/// Parameters of the self-adjoint family `f(z) = c e^{α ā₀ z}`, `φ(z) = a₀ + a₁ z`.
///
/// [`new`](Self::new) only admits real `c` and `a₁`. [`perturbed`](Self::perturbed)
/// moves off the family so the same checker can be falsified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfAdjointSymbolParams {
    pub c: Complex,
    pub a0: Complex,
    pub a1: Complex,
    pub alpha: f64,
    /// Added to the weight exponent `α ā₀`; zero inside the family.
    pub exponent_shift: Complex,
}

impl SelfAdjointSymbolParams {
    pub fn new(c_real: f64, a0: Complex, a1: f64, alpha: f64) -> Result<Self> {
        if c_real == 0.0 || !c_real.is_finite() {
            return Err(FockError::InvalidParams("c must be a non-zero real".into()));
        }
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(FockError::InvalidParams(format!("alpha must be positive, got {alpha}")));
        }
        crate::ensure_finite(a0, "a0")?;
        if !a1.is_finite() {
            return Err(FockError::NonFinite("a1"));
        }
        Ok(Self { c: c(c_real, 0.0), a0, a1: c(a1, 0.0), alpha, exponent_shift: c(0.0, 0.0) })
    }

    /// `c = 1`, `a₀ = 1/2`, `a₁ = 1/4`: `f(z) = e^{z/2}`, `φ(z) = 1/2 + z/4`.
    pub fn worked_example(alpha: f64) -> Self {
        Self::new(1.0, c(0.5, 0.0), 0.25, alpha).expect("valid constants")
    }

    /// Arbitrary complex `c`, `a₁` and an exponent shift.
    pub fn candidate(c: Complex, a0: Complex, a1: Complex, exponent_shift: Complex, alpha: f64) -> Result<Self> {
        if c == Complex::new(0.0, 0.0) {
            return Err(FockError::InvalidParams("c must be non-zero".into()));
        }
        Ok(Self { c, a0, a1, alpha, exponent_shift })
    }

    pub fn perturbed(&self, dc: Complex, da1: Complex, dexp: Complex) -> Self {
        Self { c: self.c + dc, a1: self.a1 + da1, exponent_shift: self.exponent_shift + dexp, ..*self }
    }

    pub fn weight(&self) -> WcoWeight {
        WcoWeight::ExpLinear { c: self.c, w: self.a0.conj() * self.alpha + self.exponent_shift }
    }

    pub fn map(&self) -> AffineMap {
        AffineMap { a: self.a1, b: self.a0 }
    }

    pub fn symbol(&self) -> WcoSymbol {
        WcoSymbol::new(self.weight(), self.map())
    }

    pub fn fock_params(&self, order: usize) -> Result<FockParams> {
        FockParams::new(self.alpha, order)
    }

    pub fn echo(&self) -> serde_json::Value {
        json!({
            "c": cjson(self.c), "a0": cjson(self.a0), "a1": cjson(self.a1),
            "alpha": self.alpha, "exponent_shift": cjson(self.exponent_shift),
        })
    }
}

const KERNEL_PAIRS: usize = 20;
const KERNEL_RADIUS: f64 = 0.9;

/// Hermitian residual of the finite sections plus the kernel identity
/// `f(z) e^{α φ(z) β̄} = conj(f(β)) e^{α conj(φ(β)) z}` on seeded pairs.
pub fn check_selfadjoint_forward(p: &SelfAdjointSymbolParams, orders: &[usize], seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new(
        "selfadjoint-forward",
        json!({ "symbol": p.echo(), "orders": orders, "seed": seed }),
    );
    if p.a1.im == 0.0 && !disk_selfmap_criterion(p.a0, p.a1.re) {
        report.note("warning: a0 + a1 z does not map the unit disk into itself");
    }
    let sym = p.symbol();
    for &n in orders {
        let m = assemble_matrix(&sym, p.fock_params(n)?)?;
        report.residual(n, "hermitian residual", hermitian_residual(&m), Bound::Below(tol::IDENTITY));
    }

    let pts = samples::points_in_disk(seed, 2 * KERNEL_PAIRS, KERNEL_RADIUS);
    let weight = p.weight();
    let map = p.map();
    let mut worst: f64 = 0.0;
    for pair in pts.chunks(2) {
        let (z, beta) = (pair[0], pair[1]);
        let lhs = weight.eval(z)? * (map.eval(z) * beta.conj() * p.alpha).exp();
        let rhs = weight.eval(beta)?.conj() * (map.eval(beta).conj() * z * p.alpha).exp();
        worst = worst.max(rel_diff(lhs, rhs));
    }
    report.residual(0, "kernel identity W K_beta = W* K_beta", worst, Bound::Below(tol::POINTWISE));
    Ok(report)
}

/// Extract `(c, a₀, a₁)` from a symbol and test it against the self-adjoint form.
pub fn check_selfadjoint_reverse(weight: &WcoWeight, map: &AffineMap, params: FockParams) -> Result<CheckReport> {
    let c0 = weight.eval(c(0.0, 0.0))?;
    let (a0, a1) = (map.b, map.a);
    let mut report = CheckReport::new(
        "selfadjoint-reverse",
        json!({
            "weight": weight.describe(), "map": { "a": cjson(map.a), "b": cjson(map.b) },
            "alpha": params.alpha(), "order": params.order(),
        }),
    );
    report.note(format!(
        "extracted c = {}, a0 = {}, a1 = {}",
        fmt_c(c0),
        fmt_c(a0),
        fmt_c(a1)
    ));
    report.condition("f(0) != 0", c0 != c(0.0, 0.0));
    report.residual(0, "|Im f(0)|", c0.im.abs(), Bound::Below(tol::IDENTITY));
    report.residual(0, "|Im phi'(0)|", a1.im.abs(), Bound::Below(tol::IDENTITY));
    let mismatch = match weight.to_series(params) {
        Ok(s) => s.max_abs_diff(&series::exp_linear(a0.conj() * params.alpha(), c0, params)?)?,
        Err(FockError::NonEntireWeight) => {
            report.note("weight is not entire; coefficient comparison impossible");
            f64::INFINITY
        }
        Err(e) => return Err(e),
    };
    report.residual(params.order(), "weight vs c e^{alpha conj(a0) z}", mismatch, Bound::Below(tol::IDENTITY));
    Ok(report)
}

/// Twelve significant digits, `-0` printed as `0`.
pub(crate) fn fmt_c(z: Complex) -> String {
    let round = |x: f64| {
        let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
        if r == 0.0 {
            0.0
        } else {
            r
        }
    };
    format!("{}{:+}i", round(z.re), round(z.im))
}
