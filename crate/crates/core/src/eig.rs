//! Hermitian eigendecomposition by cyclic complex Jacobi rotations, with a
//! deterministic eigenvector gauge.
//!
//! The gauge: eigenvalues sorted descending; within a degenerate cluster the
//! columns are re-orthonormalized in order of the row index of their leading
//! entry; in every column the entry of largest modulus is made real and
//! nonnegative (ties broken by lowest row index). Identical input bits give
//! identical output bits.

use num_complex::Complex64;

use crate::complex::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tolerances;

/// Result of [`eig_hermitian`]: `h = frame · diag(eigenvalues) · frame†`.
#[derive(Debug, Clone)]
pub struct Eigendecomposition {
    /// Eigenvalues in descending order.
    pub eigenvalues: Vec<f64>,
    /// Columns are the gauge-fixed eigenvectors, in eigenvalue order.
    pub frame: ComplexMatrix,
}

impl Eigendecomposition {
    /// Rebuild the original Hermitian matrix.
    pub fn recompose(&self) -> ComplexMatrix {
        let d = ComplexMatrix::diagonal(&self.eigenvalues);
        self.frame.matmul(&d).matmul(&self.frame.adjoint())
    }
}

/// Diagonalize a Hermitian matrix.
///
/// Rejects inputs whose Hermiticity deviation exceeds the validation
/// tolerance; the computation itself runs on the symmetrized part.
pub fn eig_hermitian(h: &ComplexMatrix) -> Result<Eigendecomposition> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let dev = h.hermiticity_deviation();
    if dev > tolerances::VALIDATION {
        return Err(Error::NotHermitian {
            deviation: dev,
            tolerance: tolerances::VALIDATION,
        });
    }
    let n = h.rows();
    assert!(n >= 1, "empty matrix");

    // Work on the exactly Hermitian part.
    let mut a = h.add(&h.adjoint()).scale(Complex64::new(0.5, 0.0));
    let mut v = ComplexMatrix::identity(n);

    if n > 1 {
        jacobi_sweeps(&mut a, &mut v)?;
    }

    let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (a.get(i, i).re, i)).collect();
    pairs.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());

    let eigenvalues: Vec<f64> = pairs.iter().map(|&(lam, _)| lam).collect();
    let mut frame = ComplexMatrix::zeros(n, n);
    for (new_col, &(_, old_col)) in pairs.iter().enumerate() {
        for row in 0..n {
            frame.set(row, new_col, v.get(row, old_col));
        }
    }

    canonicalize_degenerate_clusters(&mut frame, &eigenvalues);
    for col in 0..n {
        fix_column_phase(&mut frame, col);
    }

    Ok(Eigendecomposition { eigenvalues, frame })
}

fn jacobi_sweeps(a: &mut ComplexMatrix, v: &mut ComplexMatrix) -> Result<()> {
    let n = a.rows();
    let threshold = tolerances::EIG_OFF_DIAGONAL * f64::max(1.0, a.frobenius_norm());
    let skip = threshold / (10.0 * (n * n) as f64);
    let mut off = off_diagonal_norm(a);
    for _sweep in 0..tolerances::EIG_MAX_SWEEPS {
        if off <= threshold {
            return Ok(());
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a.get(p, q);
                let mag = apq.norm();
                if mag <= skip {
                    continue;
                }
                let f = apq / mag;
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let sigma = (app - aqq) / (2.0 * mag);
                let t = if sigma == 0.0 {
                    1.0
                } else {
                    -sigma.signum() / (sigma.abs() + (sigma * sigma + 1.0).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                rotate(a, v, p, q, c, s, f);
            }
        }
        off = off_diagonal_norm(a);
    }
    if off <= threshold {
        Ok(())
    } else {
        Err(Error::EigenNoConvergence {
            sweeps: tolerances::EIG_MAX_SWEEPS,
            off_norm: off,
        })
    }
}

/// Apply `A <- R† A R`, `V <- V R` for the plane rotation
/// `R[p][p]=c, R[p][q]=s, R[q][p]=-s·conj(f), R[q][q]=c·conj(f)`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, c: f64, s: f64, f: Complex64) {
    let n = a.rows();
    let fc = f.conj();
    for i in 0..n {
        let aip = a.get(i, p);
        let aiq = a.get(i, q);
        a.set(i, p, aip * c - aiq * fc * s);
        a.set(i, q, aip * s + aiq * fc * c);
        let vip = v.get(i, p);
        let viq = v.get(i, q);
        v.set(i, p, vip * c - viq * fc * s);
        v.set(i, q, vip * s + viq * fc * c);
    }
    for j in 0..n {
        let apj = a.get(p, j);
        let aqj = a.get(q, j);
        a.set(p, j, apj * c - aqj * f * s);
        a.set(q, j, apj * s + aqj * f * c);
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a.get(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Index of the largest-modulus entry in a column, lowest index among ties.
fn leading_row(frame: &ComplexMatrix, col: usize) -> usize {
    let n = frame.rows();
    let max = (0..n)
        .map(|i| frame.get(i, col).norm())
        .fold(0.0, f64::max);
    (0..n)
        .find(|&i| frame.get(i, col).norm() >= max - 1e-12)
        .unwrap()
}

/// Multiply the column by a unit phase so its leading entry is real >= 0.
fn fix_column_phase(frame: &mut ComplexMatrix, col: usize) {
    let lead = frame.get(leading_row(frame, col), col);
    let mag = lead.norm();
    if mag == 0.0 {
        return;
    }
    let phase = lead.conj() / mag;
    for row in 0..frame.rows() {
        frame.set(row, col, frame.get(row, col) * phase);
    }
}

/// Within each cluster of near-equal eigenvalues, sort the columns by the row
/// index of their leading entry and re-orthonormalize in that order.
fn canonicalize_degenerate_clusters(frame: &mut ComplexMatrix, eigenvalues: &[f64]) {
    let n = eigenvalues.len();
    let scale = eigenvalues.iter().fold(1.0f64, |m, &x| m.max(x.abs()));
    let cluster_tol = tolerances::EIG_DEGENERACY * scale;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (eigenvalues[end - 1] - eigenvalues[end]).abs() <= cluster_tol {
            end += 1;
        }
        if end - start > 1 {
            let mut order: Vec<usize> = (start..end).collect();
            order.sort_by_key(|&c| leading_row(frame, c));
            let cols: Vec<Vec<Complex64>> = order
                .iter()
                .map(|&c| (0..n).map(|r| frame.get(r, c)).collect())
                .collect();
            let ortho = gram_schmidt(&cols);
            for (k, col) in ortho.iter().enumerate() {
                for r in 0..n {
                    frame.set(r, start + k, col[r]);
                }
            }
        }
        start = end;
    }
}

/// Modified Gram-Schmidt over an already near-orthonormal set.
fn gram_schmidt(cols: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let mut out: Vec<Vec<Complex64>> = Vec::with_capacity(cols.len());
    for col in cols {
        let mut v = col.clone();
        for u in &out {
            let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= proj * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in v.iter_mut() {
            *x /= norm;
        }
        out.push(v);
    }
    out
}
