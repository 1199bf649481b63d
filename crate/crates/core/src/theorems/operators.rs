//! Checks for the operator-level identities: product of two weighted
//! composition operators, the adjoint on kernels, and boundedness of `C_φ`.

use serde_json::json;

use super::{cjson, default_block, rel_diff, tol};
use crate::error::Result;
use crate::maps::AffineMap;
use crate::ops::{adjoint_on_kernel, assemble_matrix, boundedness_check, product_symbol};
use crate::report::{Bound, CheckReport};
use crate::series::{self, FockParams};
use crate::symbol::WcoSymbol;
use crate::Complex;

/// Orders from which finite-section tolerances are enforced.
pub const ENFORCED_FROM_ORDER: usize = 32;

fn truncation_bound(n: usize) -> Bound {
    if n >= ENFORCED_FROM_ORDER {
        Bound::Below(tol::TRUNCATION)
    } else {
        Bound::Recorded
    }
}

/// `W_{f,φ} W_{g,ψ} = M_{f·(g∘φ)} C_{ψ∘φ}`: pointwise on `h(z) = e^z` and as
/// finite sections on the leading `N/2` block.
pub fn check_product_symbol(s1: &WcoSymbol, s2: &WcoSymbol, alpha: f64, orders: &[usize], samples: &[Complex]) -> Result<CheckReport> {
    let prod = product_symbol(s1, s2)?;
    let (phi, psi) = (s1.affine_map()?, s2.affine_map()?);
    let mut report = CheckReport::new(
        "product-symbol",
        json!({ "s1": s1, "s2": s2, "alpha": alpha, "orders": orders }),
    );
    let mut pointwise: f64 = 0.0;
    for &z in samples {
        let h = |w: Complex| w.exp();
        let lhs = s1.weight.eval(z)? * s2.weight.eval(phi.eval(z))? * h(psi.eval(phi.eval(z)));
        let rhs = prod.weight.eval(z)? * h(prod.map.eval(z)?);
        pointwise = pointwise.max(rel_diff(lhs, rhs));
    }
    report.residual(0, "pointwise W1 W2 h vs product symbol", pointwise, Bound::Below(tol::IDENTITY));
    let mut measured = Vec::new();
    for &n in orders {
        let params = FockParams::new(alpha, n)?;
        let m1 = assemble_matrix(s1, params)?;
        let m2 = assemble_matrix(s2, params)?;
        let mp = assemble_matrix(&prod, params)?;
        let gap = mp.sub(&m1.mul(&m2)?)?.leading_block_norm(default_block(n));
        measured.push(gap);
        report.residual(n, "finite-section product gap (leading N/2)", gap, truncation_bound(n));
    }
    report.condition("gap does not grow with N", measured.windows(2).all(|w| w[1] <= w[0].max(tol::SCALAR)));
    Ok(report)
}

/// `W* K_z = conj(f(z)) K_{φ(z)}` against the adjoint finite section applied
/// to truncated kernels.
pub fn check_adjoint_on_kernel(sym: &WcoSymbol, alpha: f64, orders: &[usize], samples: &[Complex]) -> Result<CheckReport> {
    let mut report = CheckReport::new(
        "adjoint-kernel",
        json!({ "symbol": sym, "alpha": alpha, "orders": orders, "samples": samples.len() }),
    );
    let mut measured = Vec::new();
    for &n in orders {
        let params = FockParams::new(alpha, n)?;
        let adj = assemble_matrix(sym, params)?.adjoint();
        let block = default_block(n);
        let mut worst: f64 = 0.0;
        for &z in samples {
            let via_matrix = adj.apply(&series::kernel(z, params)?)?;
            let closed = adjoint_on_kernel(sym, z, params)?;
            let gap = (0..block).map(|k| (via_matrix.coeff(k) - closed.coeff(k)).norm()).fold(0.0, f64::max);
            worst = worst.max(gap);
        }
        measured.push(worst);
        report.residual(n, "adjoint matrix vs conj(f(z)) K_phi(z) (leading N/2)", worst, truncation_bound(n));
    }
    report.condition(
        "deviation decreases as N grows (or sits at rounding level)",
        measured.windows(2).all(|w| w[1] < w[0] || w[1] <= tol::SCALAR * 100.0),
    );
    Ok(report)
}

/// Boundedness classification together with `sup e^{|φ(z)|² − |z|²}` probed
/// along the ray where `|φ(z)|² − |z|²` grows fastest.
pub fn check_boundedness(map: &AffineMap) -> CheckReport {
    let class = boundedness_check(map);
    let mut report = CheckReport::new("boundedness", json!({ "a": cjson(map.a), "b": cjson(map.b) }));
    // Along z = t·u with u aligned with conj(a) b, the exponent is
    // (|a|² − 1)t² + 2|a||b| t + |b|²; probe it on a radial grid.
    let dir = if (map.a.conj() * map.b).norm() > 0.0 {
        (map.a.conj() * map.b) / (map.a.conj() * map.b).norm()
    } else {
        Complex::new(1.0, 0.0)
    };
    let probe = (0..=2000)
        .map(|i| {
            let z = dir * (i as f64 * 0.5);
            map.eval(z).norm_sqr() - z.norm_sqr()
        })
        .fold(f64::MIN, f64::max);
    report.residual(0, "max of |phi(z)|^2 - |z|^2 on radial probe to |z| = 1000", probe, Bound::Recorded);
    report.note(format!("classification = {class:?}"));
    if (map.a.norm() - 1.0).abs() <= 1e-12 && map.b.norm() > 1e-12 {
        report.note("|a| = 1 with b != 0: the condition |a| <= 1 alone would call this bounded; the sup criterion does not");
    }
    report.informational();
    report
}
