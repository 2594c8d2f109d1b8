//! Dense real-symmetric matrices.
//!
//! Everything here is small (dimension in the tens), so the eigensolver is a
//! cyclic Jacobi iteration: slow compared to QR, but it never fails to
//! converge on a symmetric input and is bitwise deterministic.

use std::fmt;

use thiserror::Error;

/// Default absolute tolerance on the smallest eigenvalue for PSD checks.
pub const DEFAULT_PSD_TOL: f64 = 1e-9;

/// Jacobi stops once the off-diagonal Frobenius norm drops below this
/// fraction of the full norm.
const JACOBI_REL_OFF_TOL: f64 = 1e-15;
const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("row {row} has length {len}, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("dimension mismatch: matrix is {n}x{n} but {d1}*{d2} = {}", d1 * d2)]
    DimensionMismatch { n: usize, d1: usize, d2: usize },
    #[error("matrices have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("unsupported trace power {0}, expected 1, 2 or 3")]
    UnsupportedPower(u32),
}

/// A dense `n x n` real symmetric matrix stored row-major.
///
/// Symmetry and finiteness are checked at construction and preserved by every
/// operation on the type.
#[derive(Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1.0; n]).expect("ones are finite")
    }

    pub fn diagonal(diag: &[f64]) -> Result<Self, SpectralError> {
        let n = diag.len();
        let mut m = Self::zeros(n);
        for (i, &d) in diag.iter().enumerate() {
            if !d.is_finite() {
                return Err(SpectralError::NonFinite { row: i, col: i });
            }
            m.data[i * n + i] = d;
        }
        Ok(m)
    }

    /// Builds a matrix from full rows, rejecting anything that is not exactly
    /// symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, SpectralError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(SpectralError::Ragged {
                    row: i,
                    len: row.len(),
                    expected: n,
                });
            }
            data.extend_from_slice(row);
        }
        for i in 0..n {
            for j in 0..n {
                let x = data[i * n + j];
                if !x.is_finite() {
                    return Err(SpectralError::NonFinite { row: i, col: j });
                }
                if j > i && x != data[j * n + i] {
                    return Err(SpectralError::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { n, data })
    }

    /// Builds a matrix by evaluating `f` on the upper triangle (`i <= j`) and
    /// mirroring it.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self, SpectralError> {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let x = f(i, j);
                if !x.is_finite() {
                    return Err(SpectralError::NonFinite { row: i, col: j });
                }
                m.data[i * n + j] = x;
                m.data[j * n + i] = x;
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n.max(1)).map(<[f64]>::to_vec).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm_sq(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    pub fn scale(&self, s: f64) -> Result<Self, SpectralError> {
        Self::from_upper(self.n, |i, j| s * self.get(i, j))
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: f64, other: &SymMatrix) -> Result<Self, SpectralError> {
        if self.n != other.n {
            return Err(SpectralError::SizeMismatch(self.n, other.n));
        }
        Self::from_upper(self.n, |i, j| self.get(i, j) + s * other.get(i, j))
    }

    /// Partial transpose on the second tensor factor of a `d1 x d2` system.
    ///
    /// Viewing the matrix as `d1 x d1` blocks of size `d2 x d2`, each block is
    /// transposed in place: entry `((i,k),(j,l))` moves to `((i,l),(j,k))`.
    pub fn partial_transpose(&self, d1: usize, d2: usize) -> Result<Self, SpectralError> {
        if d1 * d2 != self.n {
            return Err(SpectralError::DimensionMismatch { n: self.n, d1, d2 });
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..d1 {
            for j in 0..d1 {
                for k in 0..d2 {
                    for l in 0..d2 {
                        out.data[(i * d2 + k) * n + (j * d2 + l)] = self.get(i * d2 + l, j * d2 + k);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `tr(M^k)` for `k` in 1..=3 by direct multiplication.
    pub fn trace_power(&self, k: u32) -> Result<f64, SpectralError> {
        let n = self.n;
        match k {
            1 => Ok(self.trace()),
            // tr(M^2) = sum_ij M_ij M_ji = ||M||_F^2 for symmetric M
            2 => Ok(self.frobenius_norm_sq()),
            3 => {
                let sq = self.square();
                let mut t = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        t += sq[i * n + j] * self.get(j, i);
                    }
                }
                Ok(t)
            }
            other => Err(SpectralError::UnsupportedPower(other)),
        }
    }

    fn square(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * self.get(k, j);
                }
            }
        }
        out
    }

    /// All eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Result<Spectrum, SpectralError> {
        if let Some(pos) = self.data.iter().position(|x| !x.is_finite()) {
            return Err(SpectralError::NonFinite {
                row: pos / self.n,
                col: pos % self.n,
            });
        }
        let mut values = jacobi_eigenvalues(self.data.clone(), self.n);
        values.sort_by(f64::total_cmp);
        Ok(Spectrum { values })
    }

    pub fn min_eigenvalue(&self) -> Result<f64, SpectralError> {
        Ok(self.eigenvalues()?.min().unwrap_or(0.0))
    }

    /// True iff the smallest eigenvalue is at least `-tol`.
    pub fn is_psd(&self, tol: f64) -> Result<bool, SpectralError> {
        Ok(self.min_eigenvalue()? >= -tol)
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SymMatrix({}x{}) [", self.n, self.n)?;
        for row in self.data.chunks(self.n.max(1)) {
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

/// Eigenvalues of a symmetric matrix sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min(&self) -> Option<f64> {
        self.values.first().copied()
    }

    pub fn max(&self) -> Option<f64> {
        self.values.last().copied()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            s += a[p * n + q] * a[p * n + q];
        }
    }
    (2.0 * s).sqrt()
}

/// Cyclic Jacobi: sweep over every `(p, q)` pair annihilating `a[p][q]` with a
/// plane rotation until the off-diagonal mass is negligible.
fn jacobi_eigenvalues(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n > 1 && norm > 0.0 {
        for _ in 0..JACOBI_MAX_SWEEPS {
            if off_diagonal_norm(&a, n) <= JACOBI_REL_OFF_TOL * norm {
                break;
            }
            for p in 0..n - 1 {
                for q in (p + 1)..n {
                    let apq = a[p * n + q];
                    if apq == 0.0 {
                        continue;
                    }
                    let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                    // smaller root of t^2 + 2 theta t - 1 = 0
                    let t = if theta.abs() > 1e150 {
                        0.5 / theta
                    } else {
                        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                    };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let akp = a[k * n + p];
                        let akq = a[k * n + q];
                        a[k * n + p] = c * akp - s * akq;
                        a[k * n + q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[p * n + k];
                        let aqk = a[q * n + k];
                        a[p * n + k] = c * apk - s * aqk;
                        a[q * n + k] = s * apk + c * aqk;
                    }
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn k4() -> SymMatrix {
        SymMatrix::from_upper(4, |i, j| if i == j { 0.0 } else { 1.0 }).unwrap()
    }

    #[test]
    fn complete_graph_spectrum() {
        let spec = k4().eigenvalues().unwrap();
        for (got, want) in spec.values().iter().zip([-1.0, -1.0, -1.0, 3.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn zero_matrix_spectrum() {
        let spec = SymMatrix::zeros(4).eigenvalues().unwrap();
        assert_eq!(spec.values(), &[0.0; 4]);
    }

    #[test]
    fn diagonal_spectrum_is_sorted_diagonal() {
        let m = SymMatrix::diagonal(&[0.39, 0.43, 0.09, 0.45]).unwrap();
        let spec = m.eigenvalues().unwrap();
        assert_eq!(spec.values(), &[0.09, 0.39, 0.43, 0.45]);
        assert_eq!(m.min_eigenvalue().unwrap(), 0.09);
    }

    #[test]
    fn rejects_asymmetric_and_non_finite() {
        let err = SymMatrix::from_rows(&[vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap_err();
        assert_eq!(err, SpectralError::NotSymmetric { row: 0, col: 1 });
        let err = SymMatrix::from_rows(&[vec![f64::NAN]]).unwrap_err();
        assert_eq!(err, SpectralError::NonFinite { row: 0, col: 0 });
        let err = SymMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0]]).unwrap_err();
        assert!(matches!(err, SpectralError::Ragged { row: 1, .. }));
    }

    #[test]
    fn scaling_overflow_is_an_error() {
        let m = SymMatrix::identity(2);
        assert!(matches!(m.scale(f64::INFINITY), Err(SpectralError::NonFinite { .. })));
    }

    #[test]
    fn identity_partial_transpose_and_powers() {
        let id = SymMatrix::identity(4);
        assert_eq!(id.partial_transpose(2, 2).unwrap(), id);
        assert_eq!(id.trace_power(3).unwrap(), 4.0);
        assert!(matches!(id.trace_power(4), Err(SpectralError::UnsupportedPower(4))));
        assert!(matches!(
            id.partial_transpose(3, 2),
            Err(SpectralError::DimensionMismatch { n: 4, d1: 3, d2: 2 })
        ));
    }

    #[test]
    fn psd_checks() {
        assert!(!k4().is_psd(DEFAULT_PSD_TOL).unwrap());
        assert!(SymMatrix::diagonal(&[3.0, 0.0, 1.0]).unwrap().is_psd(0.0).unwrap());
    }

    #[test]
    fn trace_cube_matches_eigenvalues() {
        let m = SymMatrix::from_upper(5, |i, j| ((i * 7 + j * 3) % 5) as f64 - 2.0).unwrap();
        let spec = m.eigenvalues().unwrap();
        let cube: f64 = spec.values().iter().map(|x| x * x * x).sum();
        assert_abs_diff_eq!(m.trace_power(3).unwrap(), cube, epsilon = 1e-10);
        assert_abs_diff_eq!(spec.sum(), m.trace(), epsilon = 1e-12);
    }
}
