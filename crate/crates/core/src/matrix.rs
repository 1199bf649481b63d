//! Finite sections of operators in the orthonormal basis `e_0, …, e_{N−1}`.

use std::fmt::Write as _;

use nalgebra::DMatrix;

use crate::error::{FockError, Result};
use crate::series::{FockParams, TruncatedSeries};
use crate::Complex;

/// Dense `N × N` matrix with entry `(m, n) = ⟨W e_n, e_m⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    entries: DMatrix<Complex>,
    params: FockParams,
}

impl OperatorMatrix {
    pub fn new(entries: DMatrix<Complex>, params: FockParams) -> Result<Self> {
        let n = params.order();
        if entries.nrows() != n || entries.ncols() != n {
            return Err(FockError::DimensionMismatch(entries.nrows().max(entries.ncols()), n));
        }
        if entries.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(FockError::NonFinite("operator matrix"));
        }
        Ok(Self { entries, params })
    }

    pub fn identity(params: FockParams) -> Self {
        let n = params.order();
        Self { entries: DMatrix::identity(n, n), params }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn params(&self) -> FockParams {
        self.params
    }

    pub fn entries(&self) -> &DMatrix<Complex> {
        &self.entries
    }

    pub fn get(&self, m: usize, n: usize) -> Complex {
        self.entries[(m, n)]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self { entries: self.entries.adjoint(), params: self.params }
    }

    pub fn frobenius(&self) -> f64 {
        self.entries.norm()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self { entries: &self.entries * &other.entries, params: self.params })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self { entries: &self.entries - &other.entries, params: self.params })
    }

    /// Frobenius norm of the leading `block × block` corner.
    pub fn leading_block_norm(&self, block: usize) -> f64 {
        let k = block.min(self.dim());
        self.entries.view((0, 0), (k, k)).norm()
    }

    /// Apply to a series through its coordinates on `e_0..e_{N−1}`. The
    /// result has a zero coefficient at degree `N`.
    pub fn apply(&self, f: &TruncatedSeries) -> Result<TruncatedSeries> {
        if f.params() != self.params {
            return Err(FockError::DimensionMismatch(f.order(), self.params.order()));
        }
        let v = nalgebra::DVector::from_vec(f.orthonormal_coords(self.dim()));
        let out = &self.entries * v;
        TruncatedSeries::from_orthonormal_coords(out.as_slice(), self.params)
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() || self.params.alpha() != other.params.alpha() {
            return Err(FockError::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(())
    }

    /// Row-major CSV, one matrix row per line, each entry as `re,im` with 17
    /// significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for m in 0..self.dim() {
            for n in 0..self.dim() {
                if n > 0 {
                    out.push(',');
                }
                let z = self.entries[(m, n)];
                let _ = write!(out, "{},{}", fmt_sig17(z.re), fmt_sig17(z.im));
            }
            out.push('\n');
        }
        out
    }
}

pub(crate) fn fmt_sig17(x: f64) -> String {
    // Normalize negative zero so identical matrices print identically.
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// `‖M − M†‖_F / max(‖M‖_F, 1)`.
pub fn hermitian_residual(m: &OperatorMatrix) -> f64 {
    let diff = &m.entries - m.entries.adjoint();
    diff.norm() / m.frobenius().max(1.0)
}

/// `‖[M1, M2]‖_F` restricted to the leading `block × block` corner.
pub fn commutator_residual(m1: &OperatorMatrix, m2: &OperatorMatrix, block: usize) -> Result<f64> {
    if m1.dim() != m2.dim() {
        return Err(FockError::DimensionMismatch(m1.dim(), m2.dim()));
    }
    if block > m1.dim() / 2 {
        return Err(FockError::InvalidParams(format!(
            "block {block} exceeds half the dimension {}",
            m1.dim()
        )));
    }
    let c = m1.mul(m2)?.sub(&m2.mul(m1)?)?;
    Ok(c.leading_block_norm(block))
}

/// `‖M†M − MM†‖_F` on the leading `block × block` corner.
pub fn normality_residual(m: &OperatorMatrix, block: usize) -> Result<f64> {
    commutator_residual(&m.adjoint(), m, block)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;

    fn params(n: usize) -> FockParams {
        FockParams::new(1.0, n).unwrap()
    }

    #[test]
    fn identity_is_hermitian_and_commutes() {
        let id = OperatorMatrix::identity(params(6));
        assert_eq!(hermitian_residual(&id), 0.0);
        let m = OperatorMatrix::new(
            DMatrix::from_fn(6, 6, |i, j| c(i as f64 - j as f64, (i * j) as f64 * 0.1)),
            params(6),
        )
        .unwrap();
        assert_eq!(commutator_residual(&m, &id, 3).unwrap(), 0.0);
        assert_eq!(commutator_residual(&m, &m, 3).unwrap(), 0.0);
        assert!(commutator_residual(&m, &id, 4).is_err());
        assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn dimension_checks() {
        assert!(OperatorMatrix::new(DMatrix::identity(3, 3), params(4)).is_err());
        let a = OperatorMatrix::identity(params(4));
        let b = OperatorMatrix::identity(params(6));
        assert!(matches!(commutator_residual(&a, &b, 2), Err(FockError::DimensionMismatch(4, 6))));
    }

    #[test]
    fn csv_is_row_major_pairs() {
        let csv = OperatorMatrix::identity(params(2)).to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0].split(',').count(), 4);
        assert!(lines[0].starts_with("1.0000000000000000e0,0.0000000000000000e0,0.0"));
        assert_eq!(fmt_sig17(-0.0), "0.0000000000000000e0");
    }
}
