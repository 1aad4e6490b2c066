//! Dense complex matrices and a Hermitian eigensolver.
//!
//! Everything downstream works with 2x2, 3x3, and 6x6 matrices, so the
//! representation is a plain row-major `Vec<Complex64>` and the eigensolver
//! is a cyclic complex Jacobi iteration. For matrices this small Jacobi is
//! exact to roundoff, needs no pivoting heuristics, and is deterministic:
//! the same input bits always produce the same eigensystem bits.

use num_complex::Complex64;
use thiserror::Error;

/// Off-diagonal Frobenius norm below which the Jacobi iteration stops.
pub const JACOBI_OFF_DIAGONAL_TOL: f64 = 1e-13;

/// Hard cap on Jacobi sweeps. A 6x6 Hermitian matrix converges in well under
/// ten sweeps; hitting this cap means the input was not Hermitian.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Largest tolerated deviation from Hermitian symmetry in eigensolver inputs.
pub const HERMITICITY_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error(
        "entries ({row},{col}) and ({col},{row}) violate Hermitian symmetry by {delta:.3e} \
         (tolerance {tol:.0e})"
    )]
    NotHermitian {
        row: usize,
        col: usize,
        delta: f64,
        tol: f64,
    },
    #[error("{len} entries do not fill a {rows}x{cols} matrix")]
    BadEntryCount {
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error("phase factor for eigenvalue {eigenvalue} has modulus {modulus}, expected 1")]
    NonUnitPhase { eigenvalue: f64, modulus: f64 },
    #[error("Jacobi iteration stalled with off-diagonal norm {off_diagonal:.3e}")]
    ConvergenceStalled { off_diagonal: f64 },
}

/// Row-major dense matrix over `Complex64`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from a row-major entry list.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::BadEntryCount {
                rows,
                cols,
                len: data.len(),
            });
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    /// Convenience constructor for literal matrices in tests and reference
    /// tables: one inner slice per row.
    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let nrows = rows.len();
        let ncols = if nrows == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            data.extend_from_slice(row);
        }
        ComplexMatrix {
            rows: nrows,
            cols: ncols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Matrix product. Panics on incompatible shapes; shapes are fixed at
    /// compile sites in this crate, so a mismatch is a programming error.
    pub fn mul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(
            self.cols,
            v.len(),
            "vector length {} != {}",
            v.len(),
            self.cols
        );
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn add(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        let data = self.data.iter().map(|a| a * factor).collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise absolute difference against `rhs`.
    pub fn max_abs_diff(&self, rhs: &ComplexMatrix) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Checks `self == self.dagger()` within `tol`, reporting the worst
    /// offending entry pair on failure.
    pub fn check_hermitian(&self, tol: f64) -> Result<(), LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut worst = (0usize, 0usize, 0.0f64);
        for i in 0..self.rows {
            for j in i..self.cols {
                let delta = (self[(i, j)] - self[(j, i)].conj()).norm();
                if delta > worst.2 {
                    worst = (i, j, delta);
                }
            }
        }
        if worst.2 > tol {
            return Err(LinalgError::NotHermitian {
                row: worst.0,
                col: worst.1,
                delta: worst.2,
                tol,
            });
        }
        Ok(())
    }

    fn off_diagonal_frobenius(&self) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    sum += self[(i, j)].norm_sqr();
                }
            }
        }
        sum.sqrt()
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues in ascending
/// order and the matching unitary of column eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    values: Vec<f64>,
    vectors: ComplexMatrix,
}

impl EigenSystem {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Column `k` is the eigenvector for `values()[k]`.
    pub fn vectors(&self) -> &ComplexMatrix {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }
}

/// Diagonalizes a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Each rotation zeroes one off-diagonal pivot with the unitary
///
/// ```text
/// U[p][p] = c        U[p][q] = s
/// U[q][p] = -s e^{-i phi}   U[q][q] = c e^{-i phi}
/// ```
///
/// where `e^{i phi}` is the phase of the pivot `A[p][q]`, and the rotation
/// angle comes from the usual symmetric Jacobi formulas applied to the pivot
/// modulus. Sweeps repeat until the off-diagonal Frobenius norm drops below
/// [`JACOBI_OFF_DIAGONAL_TOL`].
///
/// The input must be Hermitian within [`HERMITICITY_TOL`]; eigenvalues come
/// back sorted ascending with ties keeping the order the iteration produced.
pub fn hermitian_eig(matrix: &ComplexMatrix) -> Result<EigenSystem, LinalgError> {
    matrix.check_hermitian(HERMITICITY_TOL)?;
    let n = matrix.rows();

    let mut a = matrix.clone();
    // Symmetrize exactly so roundoff in the input cannot leak into the
    // iteration as spurious anti-Hermitian parts.
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)].conj());
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);

    let mut converged = a.off_diagonal_frobenius() < JACOBI_OFF_DIAGONAL_TOL;
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if converged {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        converged = a.off_diagonal_frobenius() < JACOBI_OFF_DIAGONAL_TOL;
    }
    if !converged {
        return Err(LinalgError::ConvergenceStalled {
            off_diagonal: a.off_diagonal_frobenius(),
        });
    }

    // Sort ascending, carrying eigenvector columns along. The sort is stable
    // so exactly degenerate eigenvalues keep the iteration's ordering.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values: Vec<f64> = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, dst)] = v[(row, src)];
        }
    }

    Ok(EigenSystem { values, vectors })
}

/// One Jacobi rotation zeroing the pivot `a[(p, q)]`, with the eigenvector
/// accumulator `v` updated as `v <- v U`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.rows();
    let pivot = a[(p, q)];
    let b = pivot.norm();
    if b < 1e-300 {
        return;
    }
    let phase = pivot / b; // e^{i phi}

    let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * b);
    // Smaller-magnitude root of t^2 + 2 tau t - 1 = 0 for stability.
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let app = a[(p, p)].re - t * b;
    let aqq = a[(q, q)].re + t * b;

    // Column update: A <- A U.
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * phase.conj() * akq;
        a[(k, q)] = s * akp + c * phase.conj() * akq;
    }
    // Row update: A <- U^dagger A.
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * phase * aqk;
        a[(q, k)] = s * apk + c * phase * aqk;
    }
    // Restore the exactly known entries; the generic updates reach them only
    // up to roundoff.
    a[(p, p)] = Complex64::new(app, 0.0);
    a[(q, q)] = Complex64::new(aqq, 0.0);
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * phase.conj() * vkq;
        v[(k, q)] = s * vkp + c * phase.conj() * vkq;
    }
}

/// Applies a scalar phase function through the spectrum: returns
/// `V diag(f(lambda)) V^dagger`.
///
/// Every `f(lambda)` must have unit modulus within 1e-12, otherwise the
/// result would not be unitary and the call fails.
pub fn unitary_from_spectrum(
    system: &EigenSystem,
    phase_fn: impl Fn(f64) -> Complex64,
) -> Result<ComplexMatrix, LinalgError> {
    let n = system.dim();
    let phases: Vec<Complex64> = system.values().iter().map(|&l| phase_fn(l)).collect();
    for (&lambda, ph) in system.values().iter().zip(&phases) {
        let modulus = ph.norm();
        if (modulus - 1.0).abs() > 1e-12 {
            return Err(LinalgError::NonUnitPhase {
                eigenvalue: lambda,
                modulus,
            });
        }
    }
    let v = system.vectors();
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += v[(i, k)] * phases[k] * v[(j, k)].conj();
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// Trace norm (sum of absolute eigenvalues) of a Hermitian matrix.
pub fn trace_norm_hermitian(matrix: &ComplexMatrix) -> Result<f64, LinalgError> {
    let system = hermitian_eig(matrix)?;
    Ok(system.values().iter().map(|l| l.abs()).sum())
}
