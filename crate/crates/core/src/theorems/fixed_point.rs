//! Fixed points of affine self-maps, the conjugating map `h(z) = (z − b)/(b̄z − 1)`
//! and the pointwise eigen-identity built from it.

use serde_json::json;

use super::{cjson, rel_diff, tol, SelfAdjointSymbolParams};
use crate::error::{FockError, Result};
use crate::maps::{AffineMap, LinearFractionalMap, SymbolMap};
use crate::ops::apply_wco;
use crate::report::{Bound, CheckReport};
use crate::samples::SAMPLE_POLE_MARGIN;
use crate::series;
use crate::symbol::WcoWeight;
use crate::{c, Complex};

const SLOPE_ONE_TOL: f64 = 1e-14;
const DISK_TOL: f64 = 1e-12;

/// The fixed point `b = a₀/(1 − a₁)` of `φ(z) = a₀ + a₁ z`.
pub fn fixed_point(map: &AffineMap) -> Result<Complex> {
    if (map.a - 1.0).norm() <= SLOPE_ONE_TOL {
        return Err(if map.b == c(0.0, 0.0) { FockError::IdentityMap } else { FockError::NoFixedPoint });
    }
    if map.b == c(0.0, 0.0) {
        return Ok(c(0.0, 0.0));
    }
    Ok(map.b / (1.0 - map.a))
}

/// `h(z) = (z − b)/(b̄ z − 1)`.
pub fn h_map(b: Complex) -> Result<LinearFractionalMap> {
    LinearFractionalMap::new(c(1.0, 0.0), -b, b.conj(), c(-1.0, 0.0))
}

/// `α(z) = a₁(b̄z − 1)/(b̄ a₁ z + b̄ a₀ − 1)`, z-dependent as written.
pub fn conjugation_factor(map: &AffineMap, b: Complex, z: Complex) -> Complex {
    let bb = b.conj();
    map.a * (bb * z - 1.0) / (bb * map.a * z + bb * map.b - 1.0)
}

fn pole_guard(value: Complex, point: Complex, pole_desc: &str) -> Result<()> {
    if value.norm() < SAMPLE_POLE_MARGIN {
        return Err(FockError::PoleProximity {
            point: format!("{point}"),
            pole: pole_desc.to_string(),
            margin: SAMPLE_POLE_MARGIN,
        });
    }
    Ok(())
}

/// Rejects samples near `z = 1/b̄` and near `φ(z) = 1/b̄`.
fn guard_h_poles(map: &AffineMap, b: Complex, z: Complex) -> Result<()> {
    let bb = b.conj();
    pole_guard(bb * z - 1.0, z, "1/conj(b)")?;
    pole_guard(bb * map.eval(z) - 1.0, z, "phi(z) = 1/conj(b)")
}

pub fn check_fixed_point(map: &AffineMap) -> Result<CheckReport> {
    let b = fixed_point(map)?;
    let mut report = CheckReport::new(
        "fixed-point",
        json!({ "a0": cjson(map.b), "a1": cjson(map.a) }),
    );
    report.note(format!("b = {}", super::selfadjoint::fmt_c(b)));
    report.residual(0, "|phi(b) - b|", (map.eval(b) - b).norm(), Bound::Below(tol::FIXED_POINT));
    Ok(report)
}

/// `h(φ(z)) = α(z) h(z)` on the samples.
pub fn check_h_conjugation(map: &AffineMap, samples: &[Complex]) -> Result<CheckReport> {
    let b = fixed_point(map)?;
    let h = h_map(b)?;
    let mut report = CheckReport::new(
        "h-conjugation",
        json!({ "a0": cjson(map.b), "a1": cjson(map.a), "samples": samples.len() }),
    );
    report.note("alpha(z) is evaluated z-dependent as written; this is a pointwise identity");
    let mut worst: f64 = 0.0;
    for &z in samples {
        guard_h_poles(map, b, z)?;
        let lhs = h.eval(map.eval(z))?;
        let rhs = conjugation_factor(map, b, z) * h.eval(z)?;
        worst = worst.max(rel_diff(lhs, rhs));
    }
    report.residual(0, "|h(phi(z)) - alpha(z) h(z)|", worst, Bound::Below(tol::IDENTITY));
    Ok(report)
}

/// `|a₀| < 1` and `−1 + |a₀| ≤ a₁ ≤ 1 − |a₀|` (closed bounds within 1e-12).
pub fn disk_selfmap_criterion(a0: Complex, a1: f64) -> bool {
    let r = a0.norm();
    r < 1.0 && a1 >= -1.0 + r - DISK_TOL && a1 <= 1.0 - r + DISK_TOL
}

/// Sampling route: `φ(0) ∈ 𝔻` and `|φ| ≤ 1` at `count` equally spaced
/// boundary points.
pub fn disk_selfmap_by_sampling(a0: Complex, a1: f64, count: usize) -> bool {
    if a0.norm() >= 1.0 {
        return false;
    }
    (0..count).all(|k| {
        let z = Complex::from_polar(1.0, std::f64::consts::TAU * k as f64 / count as f64);
        (a0 + a1 * z).norm() <= 1.0 + DISK_TOL
    })
}

pub fn check_disk_selfmap(a0: Complex, a1: f64) -> CheckReport {
    let predicate = disk_selfmap_criterion(a0, a1);
    let sampled = disk_selfmap_by_sampling(a0, a1, 1000);
    let mut report = CheckReport::new("disk-selfmap", json!({ "a0": cjson(a0), "a1": a1 }));
    report.note(format!("predicate = {predicate}, boundary sampling = {sampled}"));
    // Signed margin of the predicate: distance of a1 from the admissible interval.
    let r = a0.norm();
    let margin = (1.0 - r - a1.abs()).min(1.0 - r);
    report.residual(0, "self-map margin", margin, Bound::Recorded);
    report.condition("predicate agrees with 1000-point boundary sampling", predicate == sampled);
    report
}

fn e_j(alpha: f64, b: Complex, h: &LinearFractionalMap, j: usize, z: Complex) -> Result<Complex> {
    let base = (alpha * (b.conj() * z - 0.5 * b.norm_sqr())).exp();
    Ok(base * h.eval(z)?.powu(j as u32))
}

/// `f(z) e_j(φ(z)) = conj(f(b)) α(z)ʲ e_j(z)` for `j = 0..=j_max`, and
/// `W K_b = conj(f(b)) K_b` coefficientwise at each order.
pub fn check_eigen_identity(
    p: &SelfAdjointSymbolParams,
    j_max: usize,
    samples: &[Complex],
    orders: &[usize],
) -> Result<CheckReport> {
    if p.a1.im != 0.0 {
        return Err(FockError::Hypothesis("a1 must be real".into()));
    }
    let (r, a1) = (p.a0.norm(), p.a1.re);
    if !(r < 1.0 && a1 >= -1.0 + r && a1 < 1.0 - r) {
        return Err(FockError::Hypothesis(format!(
            "need |a0| < 1 and -1 + |a0| <= a1 < 1 - |a0|, got |a0| = {r}, a1 = {a1}"
        )));
    }
    let map = p.map();
    let b = fixed_point(&map)?;
    let h = h_map(b)?;
    let f = p.weight();
    let fb_conj = f.eval(b)?.conj();

    let mut report = CheckReport::new(
        "eigen-identity",
        json!({ "symbol": p.echo(), "j_max": j_max, "samples": samples.len(), "orders": orders }),
    );
    report.note(format!("fixed point b = {}; alpha(z) taken z-dependent", super::selfadjoint::fmt_c(b)));
    for j in 0..=j_max {
        let mut worst: f64 = 0.0;
        for &z in samples {
            guard_h_poles(&map, b, z)?;
            let lhs = f.eval(z)? * e_j(p.alpha, b, &h, j, map.eval(z))?;
            let rhs = fb_conj * conjugation_factor(&map, b, z).powu(j as u32) * e_j(p.alpha, b, &h, j, z)?;
            worst = worst.max(rel_diff(lhs, rhs));
        }
        report.residual(0, format!("pointwise j={j}"), worst, Bound::Below(tol::POINTWISE));
    }
    let sym = p.symbol();
    for &n in orders {
        let params = p.fock_params(n)?;
        let k_b = series::kernel(b, params)?;
        let lhs = apply_wco(&sym, &k_b)?;
        let rhs = k_b.scale(fb_conj)?;
        report.residual(n, "W K_b - conj(f(b)) K_b", lhs.max_abs_diff(&rhs)?, Bound::Below(tol::KERNEL_COEFF));
    }
    Ok(report)
}

/// Measures `|ψ(b) − b|`; asserts it vanishes when `φ ∘ ψ = ψ ∘ φ` on the samples.
pub fn check_fixed_point_transfer(
    f_params: &SelfAdjointSymbolParams,
    psi: &SymbolMap,
    g: &WcoWeight,
    samples: &[Complex],
) -> Result<CheckReport> {
    let phi = f_params.map();
    let b = fixed_point(&phi)?;
    let mut report = CheckReport::new(
        "fixed-point-transfer",
        json!({
            "symbol": f_params.echo(), "psi": psi, "g": g.describe(), "samples": samples.len(),
        }),
    );
    let transfer = (psi.eval(b)? - b).norm();
    let mut commute: f64 = 0.0;
    let mut min_g = f64::INFINITY;
    for &z in samples {
        let lhs = phi.eval(psi.eval(z)?);
        let rhs = psi.eval(phi.eval(z))?;
        commute = commute.max((lhs - rhs).norm());
        min_g = min_g.min(g.eval(z)?.norm());
    }
    report.residual(0, "max |phi(psi(z)) - psi(phi(z))|", commute, Bound::Recorded);
    if min_g == 0.0 {
        report.note("g vanishes on the sample set");
    }
    if commute <= tol::POINTWISE {
        report.residual(0, "|psi(b) - b|", transfer, Bound::Below(tol::POINTWISE));
    } else {
        report.residual(0, "|psi(b) - b|", transfer, Bound::Recorded);
        report.note("maps do not commute on the samples; transfer measured only");
        report.informational();
    }
    report.note(format!("b = {}", super::selfadjoint::fmt_c(b)));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;
    use crate::samples::{default_samples, points_in_disk};

    fn am(a0: Complex, a1: Complex) -> AffineMap {
        AffineMap::new(a1, a0).unwrap()
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(fixed_point(&am(c(0.0, 0.0), c(0.5, 0.0))).unwrap(), c(0.0, 0.0));
        let b = fixed_point(&am(c(0.5, 0.0), c(0.25, 0.0))).unwrap();
        assert!((b - c(2.0 / 3.0, 0.0)).norm() <= 1e-15);
        let b = fixed_point(&am(c(0.0, 0.3), c(-0.2, 0.0))).unwrap();
        assert!((b - c(0.0, 0.25)).norm() <= 1e-15);
        assert_eq!(fixed_point(&am(c(0.3, 0.0), c(1.0, 0.0))), Err(FockError::NoFixedPoint));
        assert_eq!(fixed_point(&AffineMap::identity()), Err(FockError::IdentityMap));
    }

    #[test]
    fn h_conjugation_examples() {
        // b = 0: h(z) = -z, alpha = a1.
        let lin = am(c(0.0, 0.0), c(0.6, 0.0));
        let r = check_h_conjugation(&lin, &default_samples(42)).unwrap();
        assert_eq!(r.max_residual("|h").unwrap(), 0.0);

        let worked = am(c(0.5, 0.0), c(0.25, 0.0));
        let r = check_h_conjugation(&worked, &[c(0.2, 0.0)]).unwrap();
        assert!(r.max_residual("|h").unwrap() <= 1e-14);

        let tilted = am(c(0.0, 0.3), c(-0.2, 0.0));
        let r = check_h_conjugation(&tilted, &points_in_disk(5, 10, 0.8)).unwrap();
        assert_eq!(r.verdict(), Verdict::Pass);

        // 1/conj(b) = 1.5 for b = 2/3.
        assert!(matches!(
            check_h_conjugation(&worked, &[c(1.5, 0.0)]),
            Err(FockError::PoleProximity { .. })
        ));
    }

    #[test]
    fn disk_criterion_examples() {
        assert!(disk_selfmap_criterion(c(0.0, 0.0), 1.0));
        assert!(disk_selfmap_criterion(c(0.5, 0.0), 0.25));
        assert!(!disk_selfmap_criterion(c(0.9, 0.0), 0.5));
        assert!(!disk_selfmap_by_sampling(c(0.9, 0.0), 0.5, 1000));
        assert!(disk_selfmap_by_sampling(c(0.0, 0.0), 1.0, 1000));
        assert!(!disk_selfmap_criterion(c(1.0, 0.0), 0.0));
        assert_eq!(check_disk_selfmap(c(0.3, 0.4), -0.5).verdict(), Verdict::Pass);
    }

    #[test]
    fn eigen_identity_examples() {
        let worked = SelfAdjointSymbolParams::worked_example(1.0);
        let r = check_eigen_identity(&worked, 0, &default_samples(42), &[32]).unwrap();
        assert!(r.max_residual("pointwise j=0").unwrap() <= 1e-12);

        let lin = SelfAdjointSymbolParams::new(1.5, c(0.0, 0.0), -0.3, 1.0).unwrap();
        let r = check_eigen_identity(&lin, 4, &default_samples(1), &[16]).unwrap();
        assert!(r.max_residual("pointwise").unwrap() <= 1e-15);

        let r = check_eigen_identity(&worked, 3, &points_in_disk(9, 20, 0.8), &[32]).unwrap();
        assert_eq!(r.verdict(), Verdict::Pass, "{}", r.notes_text());

        // a1 = 1 - |a0| is excluded.
        let edge = SelfAdjointSymbolParams::new(1.0, c(0.5, 0.0), 0.5, 1.0).unwrap();
        assert!(matches!(check_eigen_identity(&edge, 1, &[c(0.1, 0.0)], &[16]), Err(FockError::Hypothesis(_))));
    }

    #[test]
    fn fixed_point_transfer_examples() {
        let worked = SelfAdjointSymbolParams::worked_example(1.0);
        let id: SymbolMap = AffineMap::identity().into();
        let r = check_fixed_point_transfer(&worked, &id, &WcoWeight::one(), &default_samples(42)).unwrap();
        assert_eq!(r.verdict(), Verdict::Pass);
        assert_eq!(r.max_residual("|psi(b)").unwrap(), 0.0);

        let lin = SelfAdjointSymbolParams::new(1.0, c(0.0, 0.0), 0.5, 1.0).unwrap();
        let gamma: SymbolMap = AffineMap::new(c(-0.7, 0.2), c(0.0, 0.0)).unwrap().into();
        let r = check_fixed_point_transfer(&lin, &gamma, &WcoWeight::one(), &default_samples(42)).unwrap();
        assert_eq!(r.verdict(), Verdict::Pass);
    }
}
