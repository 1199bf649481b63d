//! Weighted composition symbols `(f, φ)` representing `W_{f,φ} h = f · (h ∘ φ)`.

use serde::Serialize;

use crate::error::{FockError, Result};
use crate::maps::{AffineMap, LinearFractionalMap, SymbolMap};
use crate::series::{self, FockParams, TruncatedSeries};
use crate::{c, ensure_finite, Complex};

/// The multiplier `f` of a weighted composition operator.
#[derive(Debug, Clone, PartialEq)]
pub enum WcoWeight {
    /// `c · e^{w z}`.
    ExpLinear { c: Complex, w: Complex },
    /// An explicit truncated series, materialized by re-truncation.
    Series(TruncatedSeries),
    /// `c · exp(w · (z − ψ(z)))` for a linear fractional `ψ`. Only
    /// pointwise evaluation is available.
    ExpMoebius { c: Complex, w: Complex, map: LinearFractionalMap },
}

impl WcoWeight {
    pub fn exp_linear(c: Complex, w: Complex) -> Result<Self> {
        ensure_finite(c, "weight scale")?;
        ensure_finite(w, "weight exponent")?;
        if c == Complex::new(0.0, 0.0) {
            return Err(FockError::InvalidParams("weight scale must be non-zero".into()));
        }
        Ok(WcoWeight::ExpLinear { c, w })
    }

    pub fn constant(value: Complex) -> Result<Self> {
        Self::exp_linear(value, c(0.0, 0.0))
    }

    pub fn one() -> Self {
        WcoWeight::ExpLinear { c: c(1.0, 0.0), w: c(0.0, 0.0) }
    }

    pub fn eval(&self, z: Complex) -> Result<Complex> {
        let v = match self {
            WcoWeight::ExpLinear { c, w } => c * (w * z).exp(),
            WcoWeight::Series(s) => s.eval(z),
            WcoWeight::ExpMoebius { c, w, map } => c * (w * (z - map.eval(z)?)).exp(),
        };
        ensure_finite(v, "weight evaluation")
    }

    /// Degree-`N` Taylor coefficients at the consumer's truncation order.
    pub fn to_series(&self, params: FockParams) -> Result<TruncatedSeries> {
        match self {
            WcoWeight::ExpLinear { c, w } => series::exp_linear(*w, *c, params),
            WcoWeight::Series(s) => Ok(s.resized(params)),
            WcoWeight::ExpMoebius { .. } => Err(FockError::NonEntireWeight),
        }
    }

    /// True when the weight is a non-zero constant.
    pub fn is_constant(&self) -> bool {
        match self {
            WcoWeight::ExpLinear { w, .. } => *w == c(0.0, 0.0),
            WcoWeight::Series(s) => s.coeffs()[1..].iter().all(|x| *x == c(0.0, 0.0)),
            WcoWeight::ExpMoebius { w, map, .. } => {
                *w == c(0.0, 0.0) || map.as_affine().is_some_and(|m| m.is_identity(0.0))
            }
        }
    }

    pub fn describe(&self) -> serde_json::Value {
        match self {
            WcoWeight::ExpLinear { c, w } => serde_json::json!({
                "kind": "exp_linear", "c": complex_json(*c), "w": complex_json(*w)
            }),
            WcoWeight::Series(s) => serde_json::json!({
                "kind": "series",
                "coeffs": s.coeffs().iter().map(|x| complex_json(*x)).collect::<Vec<_>>(),
            }),
            WcoWeight::ExpMoebius { c, w, map } => serde_json::json!({
                "kind": "exp_moebius", "c": complex_json(*c), "w": complex_json(*w),
                "map": map.coeffs().iter().map(|x| complex_json(*x)).collect::<Vec<_>>(),
            }),
        }
    }
}

impl Serialize for WcoWeight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.describe().serialize(s)
    }
}

pub(crate) fn complex_json(z: Complex) -> serde_json::Value {
    serde_json::json!([z.re, z.im])
}

/// `W_{weight, map}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WcoSymbol {
    pub weight: WcoWeight,
    pub map: SymbolMap,
}

impl WcoSymbol {
    pub fn new(weight: WcoWeight, map: impl Into<SymbolMap>) -> Self {
        Self { weight, map: map.into() }
    }

    pub fn identity() -> Self {
        Self::new(WcoWeight::one(), AffineMap::identity())
    }

    pub fn affine_map(&self) -> Result<&AffineMap> {
        self.map.as_affine().ok_or(FockError::NonAffineMap)
    }
}
