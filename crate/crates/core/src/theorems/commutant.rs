//! Commutant symbols of a self-adjoint `W_{f,φ}` with fixed point `b`: the
//! Möbius family parametrized by `η`, its `η = 1` degeneration, and the
//! converse counterexample with `φ(z) = 1/2 + z/4`.

use serde::Serialize;
use serde_json::json;

use super::selfadjoint::fmt_c;
use super::{cjson, default_block, fixed_point, rel_diff, tol, SelfAdjointSymbolParams};
use crate::error::{FockError, Result};
use crate::maps::{AffineMap, LinearFractionalMap};
use crate::matrix::{commutator_residual, normality_residual, OperatorMatrix};
use crate::ops::{assemble_matrix, boundedness_check, Boundedness};
use crate::report::{Bound, CheckReport};
use crate::samples::SAMPLE_POLE_MARGIN;
use crate::symbol::{WcoSymbol, WcoWeight};
use crate::{c, Complex};

const DEGENERACY_TOL: f64 = 1e-14;

/// `η`, the fixed point `b`, and the derived coefficients `d₀..d₃`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CommutantParams {
    pub eta: Complex,
    pub b: Complex,
    pub d0: Complex,
    pub d1: Complex,
    pub d2: Complex,
    pub d3: Complex,
}

impl CommutantParams {
    pub fn new(eta: Complex, b: Complex) -> Result<Self> {
        crate::ensure_finite(eta, "eta")?;
        crate::ensure_finite(b, "b")?;
        let b2 = b.norm_sqr();
        let den = b2 * eta - 1.0;
        if den.norm() <= DEGENERACY_TOL {
            return Err(FockError::InvalidParams("|b|^2 eta = 1".into()));
        }
        Ok(Self {
            eta,
            b,
            d0: (eta - 1.0) * b / den,
            d1: (eta - 1.0) * b.conj() / den,
            d2: eta * (b2 - 1.0).powi(2) / (den * den),
            d3: (b2 - eta) / den,
        })
    }

    /// `ψ(z) = d₀ + d₂ z/(1 − d₁ z)`.
    pub fn psi_d_form(&self, z: Complex) -> Result<Complex> {
        let den = 1.0 - self.d1 * z;
        if den.norm() < SAMPLE_POLE_MARGIN {
            return Err(FockError::PoleProximity {
                point: format!("{z}"),
                pole: "1/d1".into(),
                margin: SAMPLE_POLE_MARGIN,
            });
        }
        Ok(self.d0 + self.d2 * z / den)
    }

    /// `ψ(z) = ((|b|² − η) z + (η − 1) b) / (b̄(1 − η) z + |b|²η − 1)`.
    pub fn psi_moebius(&self) -> Result<LinearFractionalMap> {
        let b2 = self.b.norm_sqr();
        LinearFractionalMap::new(
            b2 - self.eta,
            (self.eta - 1.0) * self.b,
            self.b.conj() * (1.0 - self.eta),
            b2 * self.eta - 1.0,
        )
    }

    fn echo(&self) -> serde_json::Value {
        json!({
            "eta": cjson(self.eta), "b": cjson(self.b), "d0": cjson(self.d0),
            "d1": cjson(self.d1), "d2": cjson(self.d2), "d3": cjson(self.d3),
        })
    }
}

/// `ψ` in Möbius form, `g(z) = exp(α b̄ (z − ψ(z)))` normalized to `g(b) = 1`,
/// and the `d` coefficients.
pub fn commutant_symbols(
    eta: Complex,
    b: Complex,
    alpha: f64,
) -> Result<(LinearFractionalMap, WcoWeight, CommutantParams)> {
    if b == c(0.0, 0.0) {
        return Err(FockError::InvalidParams("b must be non-zero; b = 0 gives psi(z) = z".into()));
    }
    let params = CommutantParams::new(eta, b)?;
    let psi = params.psi_moebius()?;
    let g = WcoWeight::ExpMoebius { c: c(1.0, 0.0), w: b.conj() * alpha, map: psi };
    Ok((psi, g, params))
}

/// Self-consistency of the generated symbols plus recorded (never asserted)
/// commutation residuals against `W_{f,φ}` with `φ(z) = b(1 − a₁) + a₁ z`.
pub fn check_commutant_symbols(
    eta: Complex,
    b: Complex,
    a1: f64,
    alpha: f64,
    samples: &[Complex],
) -> Result<CheckReport> {
    let (psi, g, d) = commutant_symbols(eta, b, alpha)?;
    let f_params = SelfAdjointSymbolParams::new(1.0, b * (1.0 - a1), a1, alpha)?;
    let (f, phi) = (f_params.weight(), f_params.map());
    let mut report = CheckReport::new(
        "commutant-symbols",
        json!({ "commutant": d.echo(), "a1": a1, "alpha": alpha, "samples": samples.len() }),
    );
    report.note(format!(
        "d0 = {}, d1 = {}, d2 = {}, d3 = {}",
        fmt_c(d.d0),
        fmt_c(d.d1),
        fmt_c(d.d2),
        fmt_c(d.d3)
    ));
    if d.d0.norm() > 1.0 {
        report.note("psi(0) = d0 lies outside the unit disk");
    }

    let mut form_gap: f64 = 0.0;
    let mut thm_gap: f64 = 0.0;
    let mut proof_gap: f64 = 0.0;
    let mut commute: f64 = 0.0;
    let bb = b.conj();
    for &z in samples {
        let pz = psi.eval_with_margin(z, SAMPLE_POLE_MARGIN)?;
        form_gap = form_gap.max(rel_diff(d.psi_d_form(z)?, pz));

        // Exponents of the two printed g forms against b̄(z − ψ(z)).
        let derived = bb * (z - pz);
        let thm = bb * (z + (-d.d0 + d.d3 * z) / (1.0 - d.d0 * z));
        let proof = bb * (z + (-d.d0 + d.d3 * z) / (1.0 - d.d1 * z));
        thm_gap = thm_gap.max((thm - derived).norm());
        proof_gap = proof_gap.max((proof - derived).norm());

        let pz_phi = psi.eval_with_margin(phi.eval(z), SAMPLE_POLE_MARGIN)?;
        let phi_pz = phi.eval(pz);
        for h in [|w: Complex| w, |w: Complex| w.exp()] {
            let lhs = f.eval(z)? * g.eval(phi.eval(z))? * h(pz_phi);
            let rhs = g.eval(z)? * f.eval(pz)? * h(phi_pz);
            commute = commute.max(rel_diff(lhs, rhs));
        }
    }
    report.residual(0, "d-form vs Moebius form of psi", form_gap, Bound::Below(tol::IDENTITY));
    report.residual(0, "|psi(0) - d0|", (psi.eval(c(0.0, 0.0))? - d.d0).norm(), Bound::Below(tol::IDENTITY));
    report.residual(0, "|g(b) - 1|", (g.eval(b)? - 1.0).norm(), Bound::Below(tol::IDENTITY));
    report.residual(0, "printed g exponent with 1/(1 - d0 z) vs b(z - psi)", thm_gap, Bound::Recorded);
    report.residual(0, "printed g exponent with 1/(1 - d1 z) vs b(z - psi)", proof_gap, Bound::Recorded);
    report.residual(0, "commutation residual W_{f,phi} W_{g,psi} h - W_{g,psi} W_{f,phi} h", commute, Bound::Recorded);
    report.note("g derived from g(z) = g(b) exp(alpha conj(b) (z - psi(z))); commutation is measured, not asserted");
    Ok(report)
}

/// `(ψ(z) − b)/(b̄ψ(z) − 1) = η (z − b)/(b̄z − 1)` on the samples.
pub fn check_moebius_conjugation(
    psi: &LinearFractionalMap,
    b: Complex,
    eta: Complex,
    samples: &[Complex],
) -> Result<CheckReport> {
    let mut report = CheckReport::new(
        "moebius-conjugation",
        json!({ "psi": psi.coeffs().map(cjson), "b": cjson(b), "eta": cjson(eta), "samples": samples.len() }),
    );
    let bb = b.conj();
    let mut worst: f64 = 0.0;
    for &z in samples {
        let pz = psi.eval_with_margin(z, SAMPLE_POLE_MARGIN)?;
        let (den_l, den_r) = (bb * pz - 1.0, bb * z - 1.0);
        if den_l.norm() < SAMPLE_POLE_MARGIN || den_r.norm() < SAMPLE_POLE_MARGIN {
            return Err(FockError::PoleProximity {
                point: format!("{z}"),
                pole: "1/conj(b)".into(),
                margin: SAMPLE_POLE_MARGIN,
            });
        }
        let lhs = (pz - b) / den_l;
        let rhs = eta * (z - b) / den_r;
        worst = worst.max(rel_diff(lhs, rhs));
    }
    report.residual(0, "Moebius conjugation residual", worst, Bound::Below(tol::IDENTITY));
    Ok(report)
}

/// The coefficient tuples printed for `φ∘ψ` and `ψ∘φ` with `φ(z) = 1/2 + z/4`,
/// `b = 2/3`, in `(p, q, r, s)` order.
pub fn printed_counterexample_tuples(eta: Complex) -> ([Complex; 4], [Complex; 4]) {
    let phi_psi = [
        7.0 / 36.0 - eta / 3.0,
        2.0 / 9.0 * eta - 7.0 / 24.0,
        (1.0 - eta) / 6.0,
        eta / 9.0 - 0.25,
    ];
    let psi_phi = [
        1.0 / 9.0 - eta / 4.0,
        eta / 6.0 - 4.0 / 9.0,
        (1.0 - eta) / 6.0,
        eta / 9.0 - 2.0 / 3.0,
    ];
    (phi_psi, psi_phi)
}

fn at_zero(t: &[Complex; 4]) -> Result<Complex> {
    if t[3].norm() <= tol::IDENTITY {
        return Err(FockError::InvalidParams("composition has a pole at z = 0".into()));
    }
    Ok(t[1] / t[3])
}

/// Composes `φ(z) = 1/2 + z/4` with the generated `ψ` in both orders and
/// compares against the printed tuples.
pub fn reproduce_counterexample(eta: Complex) -> Result<CheckReport> {
    let phi = AffineMap::new(c(0.25, 0.0), c(0.5, 0.0))?;
    let b = fixed_point(&phi)?;
    let (psi, _, _) = commutant_symbols(eta, b, 1.0)?;
    let phi_m: LinearFractionalMap = phi.into();
    let phi_psi = phi_m.compose(&psi).coeffs();
    let psi_phi = psi.compose(&phi_m).coeffs();
    let (printed_phi_psi, printed_psi_phi) = printed_counterexample_tuples(eta);

    let mut report = CheckReport::new("counterexample", json!({ "eta": cjson(eta), "b": cjson(b) }));

    let computed0 = (at_zero(&phi_psi)?, at_zero(&psi_phi)?);
    let printed0 = (at_zero(&printed_phi_psi)?, at_zero(&printed_psi_phi)?);

    let dist_psi_phi = LinearFractionalMap::projective_distance(&psi_phi, &printed_psi_phi);
    let dist_phi_psi = LinearFractionalMap::projective_distance(&phi_psi, &printed_phi_psi);
    report.residual(0, "psi o phi vs printed tuple", dist_psi_phi, Bound::Below(tol::IDENTITY));
    report.residual(0, "phi o psi vs printed tuple", dist_phi_psi, Bound::Below(tol::IDENTITY));

    // The printed phi o psi tuple coincides with 1/2 + psi(z).
    let shift = LinearFractionalMap::new(c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0), c(1.0, 0.0))?;
    let half_plus_psi = shift.compose(&psi).coeffs();
    let slip = LinearFractionalMap::projective_distance(&half_plus_psi, &printed_phi_psi);
    report.residual(0, "printed phi o psi tuple vs 1/2 + psi", slip, Bound::Recorded);
    if dist_phi_psi > tol::IDENTITY && slip <= tol::IDENTITY {
        report.note("printed phi o psi tuple equals 1/2 + psi(z), not phi(psi(z)) = 1/2 + psi(z)/4");
    }
    report.note(format!(
        "computed: phi(psi(0)) = {}, psi(phi(0)) = {}; printed tuples at z=0: {} vs {}",
        fmt_c(computed0.0),
        fmt_c(computed0.1),
        fmt_c(printed0.0),
        fmt_c(printed0.1)
    ));

    if (eta - 1.0).norm() <= tol::IDENTITY {
        let phi_t = phi_m.coeffs();
        report.residual(0, "phi o psi vs phi", LinearFractionalMap::projective_distance(&phi_psi, &phi_t), Bound::Below(tol::IDENTITY));
        report.residual(0, "psi o phi vs phi", LinearFractionalMap::projective_distance(&psi_phi, &phi_t), Bound::Below(tol::IDENTITY));
    } else {
        report.condition("computed phi o psi and psi o phi differ at z = 0", (computed0.0 - computed0.1).norm() > tol::IDENTITY);
        report.condition("printed compositions differ at z = 0", (printed0.0 - printed0.1).norm() > tol::IDENTITY);
    }
    Ok(report)
}

/// `ψ(z) = z`, `g ≡ e^{−α|b|²/2}`: scalar operator, commuting with `W_{f,φ}`,
/// bounded and normal.
pub fn check_degenerate_commutant(
    b: Complex,
    f_params: &SelfAdjointSymbolParams,
    orders: &[usize],
) -> Result<CheckReport> {
    let fp = match fixed_point(&f_params.map()) {
        Ok(v) => v,
        Err(FockError::IdentityMap) => b,
        Err(e) => return Err(e),
    };
    if (fp - b).norm() > tol::IDENTITY {
        return Err(FockError::Hypothesis(format!("b = {b} is not the fixed point {fp} of phi")));
    }
    let g_value = (-0.5 * f_params.alpha * b.norm_sqr()).exp();
    let g_sym = WcoSymbol::new(WcoWeight::constant(c(g_value, 0.0))?, AffineMap::identity());
    let f_sym = f_params.symbol();

    let mut report = CheckReport::new(
        "degenerate-commutant",
        json!({ "b": cjson(b), "symbol": f_params.echo(), "orders": orders }),
    );
    report.note(format!("g = e^(-alpha |b|^2 / 2) = {g_value:.17}"));
    report.condition(
        "C_psi with psi = identity is BoundedUnitary",
        boundedness_check(&AffineMap::identity()) == Boundedness::BoundedUnitary,
    );
    for &n in orders {
        let params = f_params.fock_params(n)?;
        let mg = assemble_matrix(&g_sym, params)?;
        let scalar = OperatorMatrix::identity(params);
        let scaled = OperatorMatrix::new(scalar.entries() * c(g_value, 0.0), params)?;
        report.residual(n, "||M_g - g I||_F", mg.sub(&scaled)?.frobenius(), Bound::Below(tol::SCALAR));
        let mf = assemble_matrix(&f_sym, params)?;
        let block = default_block(n);
        report.residual(n, "commutator with W_{f,phi}", commutator_residual(&mf, &mg, block)?, Bound::Below(tol::IDENTITY));
        report.residual(n, "normality residual", normality_residual(&mg, block)?, Bound::Below(tol::SCALAR));
    }
    Ok(report)
}
