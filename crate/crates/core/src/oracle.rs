//! Quadrature evaluation of `⟨f, g⟩ = (α/π) ∫ f ḡ e^{−α|z|²} dA` in polar
//! coordinates. Used only to validate the exact coefficient formulas; no
//! checker consults it for its own verdict.

use serde_json::json;

use crate::error::{FockError, Result};
use crate::report::{Bound, CheckReport};
use crate::series::{self, FockParams, TruncatedSeries};
use crate::symbol::WcoSymbol;
use crate::Complex;

pub const MIN_ANGULAR: usize = 64;
pub const DEFAULT_PANELS: usize = 32;
pub const DEFAULT_POINTS_PER_PANEL: usize = 10;

/// Radial nodes `(r, w)` absorbing `r e^{−αr²}`, an equally spaced angular
/// rule with `angular_count` points, and the cutoff radius.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    radial_nodes: Vec<(f64, f64)>,
    angular_count: usize,
    cutoff_radius: f64,
    params: FockParams,
}

impl QuadratureGrid {
    /// Composite Gauss–Legendre on `[0, R]` with `R = √(16 N ln 10 / α)`.
    pub fn new(params: FockParams, panels: usize, points_per_panel: usize, angular_count: usize) -> Result<Self> {
        if panels == 0 || points_per_panel == 0 {
            return Err(FockError::InvalidParams("radial rule needs at least one node".into()));
        }
        if angular_count < MIN_ANGULAR || angular_count <= 2 * params.order() {
            return Err(FockError::GridTooCoarse { angular: angular_count, order: params.order() });
        }
        let alpha = params.alpha();
        let n = params.order() as f64;
        let mut radius = (16.0 * n * std::f64::consts::LN_10 / alpha).sqrt();
        // e^{−αR²} R^{2N} ≤ 1e−16
        while -alpha * radius * radius + 2.0 * n * radius.ln() > -16.0 * std::f64::consts::LN_10 {
            radius *= 1.1;
        }
        let (x, w) = gauss_legendre(points_per_panel);
        let h = radius / panels as f64;
        let mut radial_nodes = Vec::with_capacity(panels * points_per_panel);
        for p in 0..panels {
            let left = p as f64 * h;
            for (xi, wi) in x.iter().zip(&w) {
                let r = left + 0.5 * h * (xi + 1.0);
                radial_nodes.push((r, 0.5 * h * wi * r * (-alpha * r * r).exp()));
            }
        }
        Ok(Self { radial_nodes, angular_count, cutoff_radius: radius, params })
    }

    pub fn default_for(params: FockParams) -> Result<Self> {
        let angular = MIN_ANGULAR.max(2 * params.order() + 8);
        Self::new(params, DEFAULT_PANELS, DEFAULT_POINTS_PER_PANEL, angular)
    }

    pub fn radial_nodes(&self) -> &[(f64, f64)] {
        &self.radial_nodes
    }

    pub fn angular_count(&self) -> usize {
        self.angular_count
    }

    pub fn cutoff_radius(&self) -> f64 {
        self.cutoff_radius
    }

    /// `(α/π) Σ_r Σ_θ w_r (2π/M) F(r e^{iθ})`.
    pub fn integrate(&self, mut integrand: impl FnMut(Complex) -> Result<Complex>) -> Result<Complex> {
        let m = self.angular_count;
        let angles: Vec<Complex> = (0..m)
            .map(|k| Complex::from_polar(1.0, std::f64::consts::TAU * k as f64 / m as f64))
            .collect();
        let mut total = Complex::new(0.0, 0.0);
        for &(r, w) in &self.radial_nodes {
            let ring: Complex = angles.iter().map(|u| integrand(u * r)).sum::<Result<Complex>>()?;
            total += ring * w;
        }
        Ok(total * (2.0 * self.params.alpha() / m as f64))
    }
}

/// Gauss–Legendre nodes and weights on `[−1, 1]` by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut deriv = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            deriv = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / deriv;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn check_grid(f: &TruncatedSeries, g: &TruncatedSeries, grid: &QuadratureGrid) -> Result<()> {
    if f.params() != g.params() {
        return Err(FockError::ParamsMismatch {
            left_alpha: f.params().alpha(),
            left_order: f.order(),
            right_alpha: g.params().alpha(),
            right_order: g.order(),
        });
    }
    if f.params().alpha() != grid.params.alpha() {
        return Err(FockError::InvalidParams("grid built for a different alpha".into()));
    }
    if grid.angular_count <= 2 * f.order() {
        return Err(FockError::GridTooCoarse { angular: grid.angular_count, order: f.order() });
    }
    Ok(())
}

pub fn quad_inner_product(f: &TruncatedSeries, g: &TruncatedSeries, grid: &QuadratureGrid) -> Result<Complex> {
    check_grid(f, g, grid)?;
    grid.integrate(|z| Ok(f.eval(z) * g.eval(z).conj()))
}

/// `⟨W e_n, e_m⟩` with `W e_n` evaluated pointwise from the symbol.
pub fn quad_matrix_entry(sym: &WcoSymbol, n: usize, m: usize, grid: &QuadratureGrid) -> Result<Complex> {
    let map = sym.affine_map()?;
    let params = grid.params;
    let e_n = series::basis_element(n, params)?;
    let e_m = series::basis_element(m, params)?;
    check_grid(&e_n, &e_m, grid)?;
    grid.integrate(|z| Ok(sym.weight.eval(z)? * e_n.eval(map.eval(z)) * e_m.eval(z).conj()))
}

/// Largest `|⟨e_n, e_m⟩_quad − δ_nm|` over `0 ≤ n, m ≤ N`.
pub fn monomial_suite_error(params: FockParams, grid: &QuadratureGrid) -> Result<f64> {
    let basis: Vec<TruncatedSeries> =
        (0..=params.order()).map(|k| series::basis_element(k, params)).collect::<Result<_>>()?;
    let mut worst: f64 = 0.0;
    for (n, en) in basis.iter().enumerate() {
        for (m, em) in basis.iter().enumerate() {
            let exact = series::inner_product(en, em)?;
            let quad = quad_inner_product(en, em, grid)?;
            let target = if n == m { 1.0 } else { 0.0 };
            worst = worst.max((quad - exact).norm()).max((exact.re - target).abs());
        }
    }
    Ok(worst)
}

/// Exact vs quadrature inner products on all monomial pairs up to `max_degree`.
///
/// Errors are measured on the orthonormal basis, i.e. relative to `‖zⁿ‖ ‖zᵐ‖`.
pub fn check_oracle_agreement(alpha: f64, max_degree: usize) -> Result<CheckReport> {
    let params = FockParams::new(alpha, max_degree)?;
    let grid = QuadratureGrid::default_for(params)?;
    let mut report = CheckReport::new(
        "oracle",
        json!({
            "alpha": alpha, "max_degree": max_degree, "angular": grid.angular_count(),
            "radial_nodes": grid.radial_nodes().len(), "cutoff_radius": grid.cutoff_radius(),
        }),
    );
    report.residual(max_degree, "max |quad - exact| on orthonormal monomials", monomial_suite_error(params, &grid)?, Bound::Below(1e-8));
    Ok(report)
}
