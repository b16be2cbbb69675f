//! Change of coordinates taking (bi)stochastic matrices to affine block form.
//!
//! An orthogonal frame `O` sending the diagonal direction `(1,…,1)/√n` to the
//! last basis vector conjugates every column-stochastic matrix into
//!
//! ```text
//! O M Oᵀ = [ L  t ]
//!          [ 0  1 ]
//! ```
//!
//! with `L` an (n-1)×(n-1) block and `t` a translation that vanishes exactly
//! when `M` is bistochastic. Invertible images form the inhomogeneous (resp.
//! homogeneous) general linear group in dimension n-1; group elements need
//! not map back to nonnegative matrices, so extraction never checks signs.
//!
//! The n = 3 frame uses the fixed rotation with the closed-form
//! coefficients for the block. Those coefficients normalize the two
//! off-diagonal linear entries with a factor `√(3/2)` relative to the raw
//! conjugation entries; [`embed`] and [`extract`] apply and undo that factor
//! for this frame so the block matches the closed forms and the closed-form
//! inverse exactly. The raw conjugation — and only it — composes blocks
//! multiplicatively, so composition laws are stated on conjugation blocks.

use crate::error::{Error, Result};
use crate::real::RealMatrix;
use crate::simplex::StochasticMatrix;
use crate::tolerances;

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// Ratio between the closed-form coefficients `B`, `C` of the n = 3 block
/// and the corresponding entries of `O M Oᵀ`.
fn coefficient_scale() -> f64 {
    1.5f64.sqrt()
}

/// Orthogonal matrix with `O·(1,…,1)ᵀ/√n = (0,…,0,1)ᵀ`.
#[derive(Debug, Clone)]
pub struct EmbeddingFrame {
    n: usize,
    o: RealMatrix,
    /// Blocks for this frame are reported in the n = 3 closed-form
    /// coefficient convention rather than as raw conjugation entries.
    closed_form_coefficients: bool,
}

impl EmbeddingFrame {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.o
    }
}

/// Linear block and translation of an embedded stochastic matrix.
#[derive(Debug, Clone)]
pub struct AffineBlock {
    pub linear: RealMatrix,
    pub translation: Vec<f64>,
}

impl AffineBlock {
    pub fn new(linear: RealMatrix, translation: Vec<f64>) -> Self {
        assert!(linear.rows() == linear.cols());
        assert_eq!(linear.rows(), translation.len());
        Self {
            linear,
            translation,
        }
    }

    /// Affine composition: `(L₁,t₁)∘(L₂,t₂) = (L₁L₂, L₁t₂ + t₁)`, matching
    /// multiplication of the block matrices.
    pub fn compose(&self, other: &Self) -> Self {
        let linear = self.linear.matmul(&other.linear);
        let mut translation = self.linear.matvec(&other.translation);
        for (t, s) in translation.iter_mut().zip(&self.translation) {
            *t += s;
        }
        Self {
            linear,
            translation,
        }
    }
}

/// Frame for dimension `n >= 2`.
///
/// For n = 3 this is the fixed rotation with rows `(1,-1,0)/√2`,
/// `(1,1,-2)/√6`, `(1,1,1)/√3`; other dimensions use a Householder
/// reflection through the plane between the diagonal direction and the last
/// basis vector, with the first row negated to restore determinant +1.
pub fn frame_for(n: usize) -> EmbeddingFrame {
    assert!(n >= 2, "embedding needs n >= 2");
    if n == 3 {
        let o = RealMatrix::from_rows(&[
            vec![1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt(), 0.0],
            vec![1.0 / 6f64.sqrt(), 1.0 / 6f64.sqrt(), -2.0 / 6f64.sqrt()],
            vec![1.0 / 3f64.sqrt(), 1.0 / 3f64.sqrt(), 1.0 / 3f64.sqrt()],
        ])
        .expect("constant frame");
        return EmbeddingFrame {
            n,
            o,
            closed_form_coefficients: true,
        };
    }
    EmbeddingFrame {
        n,
        o: householder_frame(n),
        closed_form_coefficients: false,
    }
}

/// Householder reflection H with `H·(1,…,1)/√n = e_n`, first row negated so
/// the determinant is +1.
fn householder_frame(n: usize) -> RealMatrix {
    let u = 1.0 / (n as f64).sqrt();
    // v = u·e0-direction - e_n
    let mut v = vec![u; n];
    v[n - 1] -= 1.0;
    let norm_sq: f64 = v.iter().map(|x| x * x).sum();
    let mut h = RealMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            h.set(i, j, h.get(i, j) - 2.0 * v[i] * v[j] / norm_sq);
        }
    }
    for j in 0..n {
        h.set(0, j, -h.get(0, j));
    }
    h
}

/// Conjugate a stochastic matrix into block form and split off the linear
/// block and translation.
pub fn embed(m: &StochasticMatrix, frame: &EmbeddingFrame) -> Result<AffineBlock> {
    let n = frame.n;
    if m.dim() != n {
        return Err(Error::DimensionMismatch {
            left: m.dim(),
            right: n,
            context: "embedding",
        });
    }
    let conjugated = frame.o.matmul(m.as_real()).matmul(&frame.o.transpose());
    for j in 0..n {
        let expected = if j == n - 1 { 1.0 } else { 0.0 };
        let value = conjugated.get(n - 1, j);
        if (value - expected).abs() > tolerances::VALIDATION {
            return Err(Error::EmbeddingLastRow {
                col: j,
                value,
                expected,
            });
        }
    }
    let mut linear = RealMatrix::zeros(n - 1, n - 1);
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            linear.set(i, j, conjugated.get(i, j));
        }
    }
    if frame.closed_form_coefficients {
        let scale = coefficient_scale();
        linear.set(0, 1, linear.get(0, 1) * scale);
        linear.set(1, 0, linear.get(1, 0) * scale);
    }
    let translation = (0..n - 1).map(|i| conjugated.get(i, n - 1)).collect();
    Ok(AffineBlock {
        linear,
        translation,
    })
}

/// Invert the embedding. The output has unit column sums by construction but
/// may have negative entries; stochasticity is the caller's question.
pub fn extract(block: &AffineBlock, frame: &EmbeddingFrame) -> RealMatrix {
    let n = frame.n;
    assert_eq!(block.linear.rows(), n - 1, "block size must match frame");
    if frame.closed_form_coefficients {
        return extract3(block);
    }
    let mut conjugated = RealMatrix::zeros(n, n);
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            conjugated.set(i, j, block.linear.get(i, j));
        }
        conjugated.set(i, n - 1, block.translation[i]);
    }
    conjugated.set(n - 1, n - 1, 1.0);
    frame
        .o
        .transpose()
        .matmul(&conjugated)
        .matmul(&frame.o)
}

/// The closed-form inverse for n = 3. The first two rows come directly
/// from the coefficients; the third row is recovered from C, D and the
/// translation via the column-sum relations
/// `y₃ - x₃ = 2√2·C/3`, `3z₃ = 2D + s`, `s = x₃ + y₃ + z₃ = 1 - √2·n`.
fn extract3(block: &AffineBlock) -> RealMatrix {
    let a = block.linear.get(0, 0);
    let b = block.linear.get(0, 1);
    let c = block.linear.get(1, 0);
    let d = block.linear.get(1, 1);
    let m = block.translation[0];
    let nt = block.translation[1];
    let s6 = 6f64.sqrt();

    let x1 = (3.0 * a + SQRT_2 * b + SQRT_2 * c + d + s6 * m + SQRT_2 * nt + 2.0) / 6.0;
    let x2 = (-3.0 * a - SQRT_2 * b + SQRT_2 * c + d - s6 * m + SQRT_2 * nt + 2.0) / 6.0;
    let y1 = (-3.0 * a + SQRT_2 * b - SQRT_2 * c + d + s6 * m + SQRT_2 * nt + 2.0) / 6.0;
    let y2 = (3.0 * a - SQRT_2 * b - SQRT_2 * c + d - s6 * m + SQRT_2 * nt + 2.0) / 6.0;
    let z1 = (-2.0 * SQRT_2 * b - 2.0 * d + s6 * m + SQRT_2 * nt + 2.0) / 6.0;
    let z2 = (2.0 * SQRT_2 * b - 2.0 * d - s6 * m + SQRT_2 * nt + 2.0) / 6.0;

    let s = 1.0 - SQRT_2 * nt;
    let z3 = (2.0 * d + s) / 3.0;
    let x3 = (s - z3 - 2.0 * SQRT_2 * c / 3.0) / 2.0;
    let y3 = (s - z3 + 2.0 * SQRT_2 * c / 3.0) / 2.0;

    RealMatrix::from_rows(&[vec![x1, y1, z1], vec![x2, y2, z2], vec![x3, y3, z3]])
        .expect("finite closed forms")
}
