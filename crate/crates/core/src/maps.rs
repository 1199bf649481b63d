//! Composition symbols: affine maps `az + b` and linear fractional maps
//! `(pz + q)/(rz + s)`.

use serde::Serialize;

use crate::error::{FockError, Result};
use crate::{c, ensure_finite, Complex};

/// Minimum distance from a pole for pointwise evaluation.
pub const POLE_MARGIN: f64 = 1e-6;
const DEGENERACY_TOL: f64 = 1e-14;

/// `z ↦ a z + b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AffineMap {
    pub a: Complex,
    pub b: Complex,
}

impl AffineMap {
    pub fn new(a: Complex, b: Complex) -> Result<Self> {
        ensure_finite(a, "affine slope")?;
        ensure_finite(b, "affine offset")?;
        Ok(Self { a, b })
    }

    pub fn identity() -> Self {
        Self { a: c(1.0, 0.0), b: c(0.0, 0.0) }
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.a * z + self.b
    }

    /// `self ∘ inner`, i.e. `z ↦ self(inner(z))`.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        AffineMap { a: self.a * inner.a, b: self.a * inner.b + self.b }
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        (self.a - 1.0).norm() <= tol && self.b.norm() <= tol
    }
}

/// `z ↦ (p z + q)/(r z + s)` with `ps − qr ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearFractionalMap {
    pub p: Complex,
    pub q: Complex,
    pub r: Complex,
    pub s: Complex,
}

impl LinearFractionalMap {
    pub fn new(p: Complex, q: Complex, r: Complex, s: Complex) -> Result<Self> {
        for v in [p, q, r, s] {
            ensure_finite(v, "linear fractional coefficient")?;
        }
        let det = p * s - q * r;
        let scale = (p.norm() * s.norm()).max(q.norm() * r.norm()).max(1.0);
        if det.norm() / scale <= DEGENERACY_TOL {
            return Err(FockError::DegenerateMap(format!("{det}")));
        }
        Ok(Self { p, q, r, s })
    }

    pub fn coeffs(&self) -> [Complex; 4] {
        [self.p, self.q, self.r, self.s]
    }

    pub fn determinant(&self) -> Complex {
        self.p * self.s - self.q * self.r
    }

    /// The finite pole `−s/r`, if `r ≠ 0`.
    pub fn pole(&self) -> Option<Complex> {
        (self.r != c(0.0, 0.0)).then(|| -self.s / self.r)
    }

    /// Pointwise evaluation, rejecting points within `margin` of the pole.
    pub fn eval_with_margin(&self, z: Complex, margin: f64) -> Result<Complex> {
        if let Some(pole) = self.pole() {
            if (z - pole).norm() < margin {
                return Err(FockError::PoleProximity {
                    point: format!("{z}"),
                    pole: format!("{pole}"),
                    margin,
                });
            }
        }
        ensure_finite((self.p * z + self.q) / (self.r * z + self.s), "linear fractional map")
    }

    pub fn eval(&self, z: Complex) -> Result<Complex> {
        self.eval_with_margin(z, POLE_MARGIN)
    }

    /// `self ∘ inner` as a 2×2 matrix product.
    pub fn compose(&self, inner: &LinearFractionalMap) -> LinearFractionalMap {
        LinearFractionalMap {
            p: self.p * inner.p + self.q * inner.r,
            q: self.p * inner.q + self.q * inner.s,
            r: self.r * inner.p + self.s * inner.r,
            s: self.r * inner.q + self.s * inner.s,
        }
    }

    /// The affine map this represents when `r = 0`.
    pub fn as_affine(&self) -> Option<AffineMap> {
        (self.r == c(0.0, 0.0)).then(|| AffineMap { a: self.p / self.s, b: self.q / self.s })
    }

    /// Distance between coefficient tuples modulo a common non-zero factor:
    /// `min_λ ‖u − λ v‖ / ‖u‖`.
    pub fn projective_distance(u: &[Complex; 4], v: &[Complex; 4]) -> f64 {
        let vv: f64 = v.iter().map(|x| x.norm_sqr()).sum();
        let uu: f64 = u.iter().map(|x| x.norm_sqr()).sum();
        if vv == 0.0 || uu == 0.0 {
            return if vv == uu { 0.0 } else { f64::INFINITY };
        }
        let uv: Complex = u.iter().zip(v).map(|(a, b)| a * b.conj()).sum();
        let lambda = uv / vv;
        let resid: f64 = u.iter().zip(v).map(|(a, b)| (a - lambda * b).norm_sqr()).sum();
        (resid / uu).sqrt()
    }
}

impl From<AffineMap> for LinearFractionalMap {
    fn from(m: AffineMap) -> Self {
        LinearFractionalMap { p: m.a, q: m.b, r: c(0.0, 0.0), s: c(1.0, 0.0) }
    }
}

/// The composition half of a weighted composition symbol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SymbolMap {
    Affine(AffineMap),
    Moebius(LinearFractionalMap),
}

impl SymbolMap {
    pub fn eval(&self, z: Complex) -> Result<Complex> {
        match self {
            SymbolMap::Affine(m) => Ok(m.eval(z)),
            SymbolMap::Moebius(m) => m.eval(z),
        }
    }

    pub fn as_affine(&self) -> Option<&AffineMap> {
        match self {
            SymbolMap::Affine(m) => Some(m),
            SymbolMap::Moebius(_) => None,
        }
    }

    pub fn to_moebius(&self) -> LinearFractionalMap {
        match *self {
            SymbolMap::Affine(m) => m.into(),
            SymbolMap::Moebius(m) => m,
        }
    }
}

impl From<AffineMap> for SymbolMap {
    fn from(m: AffineMap) -> Self {
        SymbolMap::Affine(m)
    }
}

impl From<LinearFractionalMap> for SymbolMap {
    fn from(m: LinearFractionalMap) -> Self {
        SymbolMap::Moebius(m)
    }
}
