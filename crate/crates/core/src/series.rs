//! Truncated power series over complex coefficients and the Fock inner product.
//!
//! A [`TruncatedSeries`] stores the Taylor coefficients of degree `0..=N` in the
//! raw monomial basis. Orthonormal scaling only happens in [`inner_product`]
//! and at the matrix boundary, so composition with affine maps stays exact.

use serde::Serialize;

use crate::error::{FockError, Result};
use crate::{ensure_finite, Complex};

pub const DEFAULT_ALPHA: f64 = 1.0;
pub const DEFAULT_ORDER: usize = 32;
/// Largest order whose factorials stay finite in `f64`.
pub const MAX_ORDER: usize = 170;

/// Gaussian weight parameter and truncation degree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FockParams {
    alpha: f64,
    order: usize,
}

impl FockParams {
    pub fn new(alpha: f64, order: usize) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(FockError::InvalidParams(format!("alpha must be positive, got {alpha}")));
        }
        if order == 0 || order > MAX_ORDER {
            return Err(FockError::InvalidParams(format!(
                "order must lie in 1..={MAX_ORDER}, got {order}"
            )));
        }
        let params = Self { alpha, order };
        // ‖z^N‖² = N!/α^N has to be representable for the inner product.
        let top = params.monomial_norm_sq(order);
        if !top.is_finite() || top == 0.0 {
            return Err(FockError::InvalidParams(format!(
                "order {order} overflows monomial norms at alpha {alpha}"
            )));
        }
        Ok(params)
    }

    pub fn with_order(self, order: usize) -> Result<Self> {
        Self::new(self.alpha, order)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `⟨zᵏ, zᵏ⟩ = k!/αᵏ`.
    pub fn monomial_norm_sq(&self, k: usize) -> f64 {
        (1..=k).fold(1.0, |acc, j| acc * j as f64 / self.alpha)
    }

    /// `√(αᵏ/k!)`, the factor taking `zᵏ` to `e_k`.
    pub fn basis_scale(&self, k: usize) -> f64 {
        self.monomial_norm_sq(k).sqrt().recip()
    }
}

impl Default for FockParams {
    fn default() -> Self {
        Self { alpha: DEFAULT_ALPHA, order: DEFAULT_ORDER }
    }
}

#[cfg(test)]
pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc * j as f64)
}

/// Degree-`N` truncation of an entire function, coefficient of `zᵏ` at index `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex>,
    params: FockParams,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Complex>, params: FockParams) -> Result<Self> {
        if coeffs.len() != params.order + 1 {
            return Err(FockError::InvalidParams(format!(
                "expected {} coefficients, got {}",
                params.order + 1,
                coeffs.len()
            )));
        }
        for &c in &coeffs {
            ensure_finite(c, "series coefficient")?;
        }
        Ok(Self { coeffs, params })
    }

    /// Polynomial from its leading coefficients, zero-padded to degree `N`.
    /// Coefficients beyond degree `N` are dropped.
    pub fn from_poly(coeffs: &[Complex], params: FockParams) -> Result<Self> {
        let mut full = vec![Complex::new(0.0, 0.0); params.order + 1];
        for (dst, &src) in full.iter_mut().zip(coeffs) {
            *dst = src;
        }
        Self::new(full, params)
    }

    pub fn zero(params: FockParams) -> Self {
        Self { coeffs: vec![Complex::new(0.0, 0.0); params.order + 1], params }
    }

    pub fn constant(value: Complex, params: FockParams) -> Result<Self> {
        Self::from_poly(&[value], params)
    }

    pub fn monomial(k: usize, params: FockParams) -> Result<Self> {
        if k > params.order {
            return Err(FockError::OutOfRange { index: k, max: params.order });
        }
        let mut s = Self::zero(params);
        s.coeffs[k] = Complex::new(1.0, 0.0);
        Ok(s)
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn params(&self) -> FockParams {
        self.params
    }

    pub fn order(&self) -> usize {
        self.params.order
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, z: Complex) -> Complex {
        self.coeffs.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn scale(&self, s: Complex) -> Result<Self> {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect(), self.params)
    }

    /// Re-truncate (or zero-pad) to another order, keeping alpha.
    pub fn resized(&self, params: FockParams) -> Self {
        let mut coeffs = vec![Complex::new(0.0, 0.0); params.order + 1];
        for (dst, &src) in coeffs.iter_mut().zip(&self.coeffs) {
            *dst = src;
        }
        Self { coeffs, params }
    }

    /// `‖p‖` in `F²_α` for the truncated polynomial.
    pub fn norm(&self) -> f64 {
        inner_product(self, self).map(|v| v.re.max(0.0).sqrt()).unwrap_or(f64::NAN)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        check_params(self, other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Coordinates against `e_0..e_{n-1}`.
    pub fn orthonormal_coords(&self, n: usize) -> Vec<Complex> {
        (0..n)
            .map(|k| self.coeff(k) * self.params.monomial_norm_sq(k).sqrt())
            .collect()
    }

    /// Inverse of [`orthonormal_coords`](Self::orthonormal_coords); missing
    /// degrees are zero.
    pub fn from_orthonormal_coords(coords: &[Complex], params: FockParams) -> Result<Self> {
        let raw: Vec<Complex> = coords
            .iter()
            .enumerate()
            .map(|(k, &v)| v * params.basis_scale(k))
            .collect();
        Self::from_poly(&raw, params)
    }
}

fn check_params(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<()> {
    if a.params != b.params {
        return Err(FockError::ParamsMismatch {
            left_alpha: a.params.alpha,
            left_order: a.params.order,
            right_alpha: b.params.alpha,
            right_order: b.params.order,
        });
    }
    Ok(())
}

pub fn add(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    check_params(a, b)?;
    TruncatedSeries::new(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(), a.params)
}

pub fn sub(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    check_params(a, b)?;
    TruncatedSeries::new(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(), a.params)
}

/// Cauchy product truncated at degree `N`.
pub fn mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    check_params(a, b)?;
    let n = a.params.order;
    let mut out = vec![Complex::new(0.0, 0.0); n + 1];
    for (i, &ai) in a.coeffs.iter().enumerate() {
        if ai == Complex::new(0.0, 0.0) {
            continue;
        }
        for (j, &bj) in b.coeffs[..=n - i].iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    TruncatedSeries::new(out, a.params)
}

/// `scale · e^{w z}` truncated: coefficient `k` is `scale·wᵏ/k!`.
pub fn exp_linear(w: Complex, scale: Complex, params: FockParams) -> Result<TruncatedSeries> {
    let mut coeffs = Vec::with_capacity(params.order + 1);
    let mut term = scale;
    coeffs.push(term);
    for k in 1..=params.order {
        term = term * w / k as f64;
        coeffs.push(term);
    }
    TruncatedSeries::new(coeffs, params)
}

/// Exact coefficients of `p(a z + b)` up to degree `N`.
///
/// `p` has degree at most `N` and so does the composition; Horner's scheme in
/// the series ring introduces no truncation.
pub fn compose_affine(p: &TruncatedSeries, a: Complex, b: Complex) -> Result<TruncatedSeries> {
    let n = p.params.order;
    let mut acc = vec![Complex::new(0.0, 0.0); n + 1];
    for (k, &pk) in p.coeffs.iter().enumerate().rev() {
        // acc ← acc·(b + a z) + p_k; acc has degree ≤ N - 1 - k before the step.
        let deg = n - k;
        for j in (0..=deg).rev() {
            let lower = if j > 0 { acc[j - 1] * a } else { Complex::new(0.0, 0.0) };
            acc[j] = acc[j] * b + lower;
        }
        acc[0] += pk;
    }
    TruncatedSeries::new(acc, p.params)
}

/// `⟨f, g⟩ = Σ f_k ḡ_k k!/αᵏ`, exact on the truncation.
pub fn inner_product(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<Complex> {
    check_params(f, g)?;
    let alpha = f.params.alpha;
    let mut weight = 1.0;
    let mut sum = Complex::new(0.0, 0.0);
    for (k, (fk, gk)) in f.coeffs.iter().zip(&g.coeffs).enumerate() {
        if k > 0 {
            weight *= k as f64 / alpha;
        }
        sum += fk * gk.conj() * weight;
    }
    ensure_finite(sum, "inner product")
}

/// Reproducing kernel `K_w(z) = e^{α w̄ z}`.
pub fn kernel(w: Complex, params: FockParams) -> Result<TruncatedSeries> {
    exp_linear(w.conj() * params.alpha, Complex::new(1.0, 0.0), params)
}

/// `e_n = √(αⁿ/n!) zⁿ`.
pub fn basis_element(n: usize, params: FockParams) -> Result<TruncatedSeries> {
    let mut e = TruncatedSeries::monomial(n, params)?;
    e.coeffs[n] = Complex::new(params.basis_scale(n), 0.0);
    Ok(e)
}
