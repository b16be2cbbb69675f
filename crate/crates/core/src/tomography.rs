//! Spin tomograms of qudit and two-qudit states, the orthostochastic matrix
//! connecting tomograms to spectra, and state reconstruction from tomogram
//! samples.
//!
//! A tomogram holds the outcome probabilities `W(m, U) = ⟨m|UρU†|m⟩` in
//! descending label order `m = j, j-1, …, -j`; joint tomograms order the
//! label pairs lexicographically with the first subsystem outermost.

use num_complex::Complex64;

use crate::complex::ComplexMatrix;
use crate::density::{DensityMatrix, SpectralPair, UnitaryMatrix};
use crate::eig::eig_hermitian;
use crate::error::{Error, Result};
use crate::real::RealMatrix;
use crate::simplex::{ProbabilityVector, StochasticMatrix};
use crate::tolerances;

/// Outcome distribution of a state measured in a rotated frame.
#[derive(Debug, Clone)]
pub struct Tomogram {
    pub frame: UnitaryMatrix,
    pub probabilities: ProbabilityVector,
}

impl Tomogram {
    pub fn dim(&self) -> usize {
        self.probabilities.len()
    }

    /// Spin-projection labels in row order: `j, j-1, …, -j` with
    /// `j = (d-1)/2`. Joint tomograms index label pairs lexicographically
    /// instead.
    pub fn labels(&self) -> Vec<f64> {
        let d = self.dim();
        let j = (d as f64 - 1.0) / 2.0;
        (0..d).map(|k| j - k as f64).collect()
    }
}

/// One measurement record used for reconstruction.
#[derive(Debug, Clone)]
pub struct TomogramSample {
    pub frame: UnitaryMatrix,
    pub probabilities: ProbabilityVector,
}

/// Reconstruction output: the recovered state plus the Frobenius distance
/// moved by the projection onto the positive cone.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub state: DensityMatrix,
    pub projection_distance: f64,
}

/// The diagonal of `UρU†`, clamped to the simplex.
pub fn tomogram(rho: &DensityMatrix, u: &UnitaryMatrix) -> Result<Tomogram> {
    let probabilities = diagonal_probabilities(rho.matrix(), u.matrix())?;
    Ok(Tomogram {
        frame: u.clone(),
        probabilities,
    })
}

/// Tomogram of a bipartite state in a product frame `U_h ⊗ U_k`.
pub fn joint_tomogram(
    rho: &DensityMatrix,
    u_h: &UnitaryMatrix,
    u_k: &UnitaryMatrix,
) -> Result<Tomogram> {
    if rho.dim() != u_h.dim() * u_k.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: u_h.dim() * u_k.dim(),
            context: "joint tomogram",
        });
    }
    tomogram(rho, &u_h.tensor(u_k))
}

fn diagonal_probabilities(rho: &ComplexMatrix, u: &ComplexMatrix) -> Result<ProbabilityVector> {
    if rho.rows() != u.rows() {
        return Err(Error::DimensionMismatch {
            left: rho.rows(),
            right: u.rows(),
            context: "tomogram",
        });
    }
    let rotated = u.matmul(rho).matmul(&u.adjoint());
    let mut w = Vec::with_capacity(rho.rows());
    for m in 0..rho.rows() {
        let z = rotated.get(m, m);
        if z.im.abs() > tolerances::REAL_DIAGONAL {
            return Err(Error::NonRealDiagonal {
                index: m,
                imag: z.im,
            });
        }
        w.push(z.re);
    }
    ProbabilityVector::new(w)
}

/// Square moduli of the entries of `U·U₀`: an orthostochastic (hence
/// bistochastic) matrix.
pub fn orthostochastic_from(u: &UnitaryMatrix, u0: &UnitaryMatrix) -> Result<StochasticMatrix> {
    if u.dim() != u0.dim() {
        return Err(Error::DimensionMismatch {
            left: u.dim(),
            right: u0.dim(),
            context: "orthostochastic matrix",
        });
    }
    let n = u.dim();
    let product = u.matrix().matmul(u0.matrix());
    let mut m = RealMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, product.get(i, j).norm_sqr());
        }
    }
    StochasticMatrix::new_orthostochastic(m)
}

/// The tomogram computed through the simplex: `M·ρ̃` with `M = |U·U₀|²`.
/// Equals the direct tomogram of the recomposed state.
pub fn tomogram_via_spectrum(pair: &SpectralPair, u: &UnitaryMatrix) -> Result<Tomogram> {
    if pair.dim() != u.dim() {
        return Err(Error::DimensionMismatch {
            left: pair.dim(),
            right: u.dim(),
            context: "tomogram via spectrum",
        });
    }
    let m = orthostochastic_from(u, pair.frame())?;
    let probabilities = m.apply(pair.spectrum())?;
    Ok(Tomogram {
        frame: u.clone(),
        probabilities,
    })
}

/// Least-squares reconstruction of a density matrix from tomogram samples.
///
/// The state is parametrized over an orthonormal traceless Hermitian basis
/// with the trace pinned to one, and the linear system
/// `⟨m|UρU†|m⟩ = W(m, U)` is solved by normal equations. Each frame
/// contributes `dim - 1` independent rows beyond normalization, so at least
/// `dim + 1` well-spread frames are needed for the `dim² - 1` unknowns.
/// The solution is projected onto the positive cone (negative eigenvalues
/// clipped, spectrum renormalized) and the projection distance reported.
pub fn reconstruct(samples: &[TomogramSample], dim: usize) -> Result<Reconstruction> {
    assert!(dim >= 2, "reconstruction needs dimension >= 2");
    for sample in samples {
        if sample.frame.dim() != dim || sample.probabilities.len() != dim {
            return Err(Error::DimensionMismatch {
                left: sample.frame.dim(),
                right: dim,
                context: "tomogram sample",
            });
        }
    }
    let basis = traceless_hermitian_basis(dim);
    let params = basis.len(); // dim² - 1

    // Stack the constraint rows: coefficient (U Gα U†)_mm against W_m - 1/d.
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(samples.len() * dim);
    let mut rhs: Vec<f64> = Vec::with_capacity(samples.len() * dim);
    for sample in samples {
        let u = sample.frame.matrix();
        let u_adj = u.adjoint();
        let conjugated: Vec<ComplexMatrix> = basis
            .iter()
            .map(|g| u.matmul(g).matmul(&u_adj))
            .collect();
        for m in 0..dim {
            rows.push(conjugated.iter().map(|c| c.get(m, m).re).collect());
            rhs.push(sample.probabilities.get(m) - 1.0 / dim as f64);
        }
    }

    // Normal equations with an eigenvalue-based rank check.
    let mut ata = RealMatrix::zeros(params, params);
    let mut atb = vec![0.0; params];
    for (row, &b) in rows.iter().zip(&rhs) {
        for a in 0..params {
            atb[a] += row[a] * b;
            for c in 0..params {
                ata.set(a, c, ata.get(a, c) + row[a] * row[c]);
            }
        }
    }
    let ata_c = ComplexMatrix::from_real_rows(
        &(0..params)
            .map(|i| (0..params).map(|j| ata.get(i, j)).collect())
            .collect::<Vec<_>>(),
    )?;
    let eig = eig_hermitian(&ata_c)?;
    let lambda_max = eig.eigenvalues.first().copied().unwrap_or(0.0).max(0.0);
    let threshold = tolerances::RANK_THRESHOLD * lambda_max.max(f64::MIN_POSITIVE);
    let rank = eig
        .eigenvalues
        .iter()
        .filter(|&&lambda| lambda > threshold)
        .count();
    if rank < params {
        return Err(Error::RankDeficient {
            rank,
            needed: params,
            dim,
        });
    }
    // x = V diag(1/λ) V† Aᵀb — the frame is real for a real symmetric input.
    let mut x = vec![0.0; params];
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        let mut coeff = 0.0;
        for k in 0..params {
            coeff += eig.frame.get(k, i).re * atb[k];
        }
        coeff /= lambda;
        for k in 0..params {
            x[k] += coeff * eig.frame.get(k, i).re;
        }
    }

    let residual = rows
        .iter()
        .zip(&rhs)
        .map(|(row, &b)| {
            (row.iter().zip(&x).map(|(a, xi)| a * xi).sum::<f64>() - b).abs()
        })
        .fold(0.0, f64::max);
    if residual > tolerances::RECONSTRUCTION_RESIDUAL {
        return Err(Error::InconsistentSamples {
            residual,
            tolerance: tolerances::RECONSTRUCTION_RESIDUAL,
        });
    }

    // Assemble, then project to the positive cone.
    let mut rho = ComplexMatrix::diagonal(&vec![1.0 / dim as f64; dim]);
    for (g, &xi) in basis.iter().zip(&x) {
        rho = rho.add(&g.scale(Complex64::new(xi, 0.0)));
    }
    let eig_rho = eig_hermitian(&rho)?;
    let clipped: Vec<f64> = eig_rho
        .eigenvalues
        .iter()
        .map(|&lambda| lambda.max(0.0))
        .collect();
    let total: f64 = clipped.iter().sum();
    let renormalized: Vec<f64> = clipped.iter().map(|&lambda| lambda / total).collect();
    let projected = eig_rho
        .frame
        .matmul(&ComplexMatrix::diagonal(&renormalized))
        .matmul(&eig_rho.frame.adjoint());
    let projection_distance = projected.sub(&rho).frobenius_norm();
    Ok(Reconstruction {
        state: DensityMatrix::new(projected)?,
        projection_distance,
    })
}

/// Orthonormal traceless Hermitian basis (generalized Gell-Mann matrices):
/// symmetric and antisymmetric off-diagonal pairs plus diagonal ladders.
fn traceless_hermitian_basis(dim: usize) -> Vec<ComplexMatrix> {
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut basis = Vec::with_capacity(dim * dim - 1);
    for i in 0..dim {
        for j in i + 1..dim {
            let mut sym = ComplexMatrix::zeros(dim, dim);
            sym.set(i, j, Complex64::new(inv_sqrt2, 0.0));
            sym.set(j, i, Complex64::new(inv_sqrt2, 0.0));
            basis.push(sym);
            let mut asym = ComplexMatrix::zeros(dim, dim);
            asym.set(i, j, Complex64::new(0.0, -inv_sqrt2));
            asym.set(j, i, Complex64::new(0.0, inv_sqrt2));
            basis.push(asym);
        }
    }
    for l in 1..dim {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut d = ComplexMatrix::zeros(dim, dim);
        for k in 0..l {
            d.set(k, k, Complex64::new(norm, 0.0));
        }
        d.set(l, l, Complex64::new(-(l as f64) * norm, 0.0));
        basis.push(d);
    }
    basis
}
