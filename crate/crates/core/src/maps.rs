//! Positive maps on density matrices through the pair picture: a state is a
//! gauge-fixed eigenframe plus a point on the simplex, a map is a unitary
//! acting on the frame and a stochastic matrix acting on the spectrum.

use num_complex::Complex64;

use crate::complex::ComplexMatrix;
use crate::density::{DensityMatrix, SpectralPair, UnitaryMatrix};
use crate::eig::eig_hermitian;
use crate::error::{Error, Result};
use crate::simplex::{ProbabilityVector, StochasticMatrix};
use crate::tolerances;

/// A positive map: the unitary acts on the eigenframe, the stochastic
/// matrix on the spectrum.
#[derive(Debug, Clone)]
pub struct PositiveMapSpec {
    frame_action: UnitaryMatrix,
    simplex_action: StochasticMatrix,
}

impl PositiveMapSpec {
    pub fn new(frame_action: UnitaryMatrix, simplex_action: StochasticMatrix) -> Result<Self> {
        if frame_action.dim() != simplex_action.dim() {
            return Err(Error::DimensionMismatch {
                left: frame_action.dim(),
                right: simplex_action.dim(),
                context: "positive map",
            });
        }
        Ok(Self {
            frame_action,
            simplex_action,
        })
    }

    pub fn frame_action(&self) -> &UnitaryMatrix {
        &self.frame_action
    }

    pub fn simplex_action(&self) -> &StochasticMatrix {
        &self.simplex_action
    }
}

/// Which code path produced a set of qubit eigenvectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QubitBranch {
    /// The explicit formulas in terms of the matrix entries.
    ClosedForm,
    /// Diagonal or degenerate input: the generic eigensolver.
    Fallback,
}

/// Eigenvector frame of a qubit state plus the branch that computed it.
#[derive(Debug, Clone)]
pub struct QubitEigenvectors {
    pub frame: UnitaryMatrix,
    pub branch: QubitBranch,
}

/// Split a state into its gauge-fixed eigenframe and descending spectrum.
pub fn decompose(rho: &DensityMatrix) -> Result<SpectralPair> {
    let eig = eig_hermitian(rho.matrix())?;
    // Eigenvalues of a validated state can still carry tiny negatives from
    // rounding; clamp, and renormalize only when the clamping moved the sum
    // noticeably, so clean spectra pass through unchanged.
    let mut clamped: Vec<f64> = eig.eigenvalues.iter().map(|&x| x.max(0.0)).collect();
    let total: f64 = clamped.iter().sum();
    if (total - 1.0).abs() > 1e-13 {
        for x in clamped.iter_mut() {
            *x /= total;
        }
    }
    let spectrum = ProbabilityVector::new(clamped)?;
    SpectralPair::new(UnitaryMatrix::new(eig.frame)?, spectrum)
}

/// Rebuild the density matrix `U₀ · diag(ρ̃) · U₀†` from a pair.
pub fn recompose(pair: &SpectralPair) -> Result<DensityMatrix> {
    let diag = ComplexMatrix::diagonal(pair.spectrum().as_slice());
    DensityMatrix::new(
        pair.frame()
            .matrix()
            .matmul(&diag)
            .matmul(&pair.frame().matrix().adjoint()),
    )
}

fn qubit_entries(rho: &DensityMatrix) -> Result<(f64, Complex64, f64, f64)> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: 2,
            context: "qubit closed form",
        });
    }
    let m = rho.matrix();
    let r11 = m.get(0, 0).re;
    let r12 = m.get(0, 1);
    let r22 = m.get(1, 1).re;
    let det = r11 * r22 - r12.norm_sqr();
    if !(-tolerances::NEGATIVE_CLAMP..=0.25 + tolerances::NEGATIVE_CLAMP).contains(&det) {
        return Err(Error::DeterminantOutOfRange { det });
    }
    Ok((r11, r12, r22, det))
}

/// Qubit eigenvalues in closed form: `1/2 ± (1/2)·√(1 - 4·det ρ)`.
pub fn qubit_spectrum(rho: &DensityMatrix) -> Result<ProbabilityVector> {
    let (_, _, _, det) = qubit_entries(rho)?;
    let root = (1.0 - 4.0 * det).max(0.0).sqrt();
    ProbabilityVector::new(vec![0.5 + 0.5 * root, 0.5 - 0.5 * root])
}

/// Qubit eigenvectors in closed form, with zero phases: each column is
/// `(2ρ₁₂/(1 ± √(1-4·det ρ) - 2ρ₁₁), 1)` normalized. Falls back to the
/// generic eigensolver when `ρ₁₂` vanishes or the denominators do
/// (diagonal or degenerate input).
///
/// The two denominators satisfy `d₊·d₋ = -4|ρ₁₂|²` exactly, so the smaller
/// one is recovered from the larger instead of by direct subtraction, which
/// would cancel catastrophically for near-diagonal states.
pub fn qubit_eigenvectors(rho: &DensityMatrix) -> Result<QubitEigenvectors> {
    let (r11, r12, r22, det) = qubit_entries(rho)?;
    let gap = (1.0 - 4.0 * det).max(0.0).sqrt();
    if r12.norm() <= tolerances::NEGATIVE_CLAMP || gap <= tolerances::NEGATIVE_CLAMP {
        let eig = eig_hermitian(rho.matrix())?;
        return Ok(QubitEigenvectors {
            frame: UnitaryMatrix::new(eig.frame)?,
            branch: QubitBranch::Fallback,
        });
    }
    let delta = r22 - r11;
    // denominators d± = delta ± gap; the same-sign one is exact, the other
    // comes from d₊·d₋ = -4|ρ₁₂|²
    let (ratio_plus, ratio_minus) = if delta >= 0.0 {
        let d_plus = delta + gap;
        (r12 * (2.0 / d_plus), -d_plus / (2.0 * r12.conj()))
    } else {
        let d_minus = delta - gap;
        (-d_minus / (2.0 * r12.conj()), r12 * (2.0 / d_minus))
    };
    let y1 = 1.0 / (ratio_plus.norm_sqr() + 1.0).sqrt();
    let y2 = 1.0 / (ratio_minus.norm_sqr() + 1.0).sqrt();
    let frame = ComplexMatrix::new(
        2,
        2,
        vec![
            ratio_plus * y1,
            ratio_minus * y2,
            Complex64::new(y1, 0.0),
            Complex64::new(y2, 0.0),
        ],
    )?;
    Ok(QubitEigenvectors {
        frame: UnitaryMatrix::new(frame)?,
        branch: QubitBranch::ClosedForm,
    })
}

/// Apply the pair map `(U₀, ρ̃) → (V·U₀, M·ρ̃)` and recompose. The output
/// spectrum is the multiset `M·ρ̃`; with a bistochastic `M` the maximally
/// mixed state is fixed.
pub fn apply_positive_map(pair: &SpectralPair, spec: &PositiveMapSpec) -> Result<DensityMatrix> {
    if pair.dim() != spec.frame_action.dim() {
        return Err(Error::DimensionMismatch {
            left: pair.dim(),
            right: spec.frame_action.dim(),
            context: "positive map application",
        });
    }
    let frame = spec.frame_action.compose(pair.frame())?;
    let spectrum = spec.simplex_action.apply(pair.spectrum())?;
    // The mapped spectrum is not necessarily sorted; conjugation does not
    // care about the order as long as frame columns stay paired with it.
    let diag = ComplexMatrix::diagonal(spectrum.as_slice());
    DensityMatrix::new(
        frame
            .matrix()
            .matmul(&diag)
            .matmul(&frame.matrix().adjoint()),
    )
}

/// Convenience form of [`apply_positive_map`] starting from the density
/// matrix itself.
///
/// The intermediate pair comes from [`decompose`], so at degenerate spectra
/// the result depends on the gauge convention of the eigensolver; use the
/// pair form when the frame matters.
pub fn apply_positive_map_to_state(
    rho: &DensityMatrix,
    spec: &PositiveMapSpec,
) -> Result<DensityMatrix> {
    apply_positive_map(&decompose(rho)?, spec)
}

/// Spectrum of the mixture `λ·ρ₁ + (1-λ)·ρ₂` of two qubit states, computed
/// from the entries of the parts:
/// `1/2 ± (1/2)·√(1 - 4λ²·det ρ₁ - 4(1-λ)²·det ρ₂ - 4λ(1-λ)·γ)` with
/// `γ = ρ₁₁⁽¹⁾ρ₂₂⁽²⁾ + ρ₁₁⁽²⁾ρ₂₂⁽¹⁾ - ρ₁₂⁽¹⁾ρ₂₁⁽²⁾ - ρ₁₂⁽²⁾ρ₂₁⁽¹⁾`.
pub fn mixture_spectrum(
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
    lambda: f64,
) -> Result<ProbabilityVector> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::LambdaOutOfRange { value: lambda });
    }
    let (a11, a12, a22, det1) = qubit_entries(rho1)?;
    let (b11, b12, b22, det2) = qubit_entries(rho2)?;
    let gamma = a11 * b22 + b11 * a22 - 2.0 * (a12 * b12.conj()).re;
    let mu = 1.0 - lambda;
    let arg = 1.0 - 4.0 * lambda * lambda * det1 - 4.0 * mu * mu * det2 - 4.0 * lambda * mu * gamma;
    let root = arg.max(0.0).sqrt();
    ProbabilityVector::new(vec![0.5 + 0.5 * root, 0.5 - 0.5 * root])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotations::{random_unitary, su2_from_euler};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn qubit(r11: f64, r12: Complex64) -> DensityMatrix {
        let m = ComplexMatrix::new(
            2,
            2,
            vec![c(r11, 0.0), r12, r12.conj(), c(1.0 - r11, 0.0)],
        )
        .unwrap();
        DensityMatrix::new(m).unwrap()
    }

    #[test]
    fn decompose_diagonal_qubit() {
        let rho = DensityMatrix::new(ComplexMatrix::diagonal(&[0.7, 0.3])).unwrap();
        let pair = decompose(&rho).unwrap();
        assert_eq!(pair.spectrum().as_slice(), &[0.7, 0.3]);
        assert!(pair
            .frame()
            .matrix()
            .max_abs_diff(&ComplexMatrix::identity(2))
            < 1e-12);
        assert!(recompose(&pair).unwrap().matrix().max_abs_diff(rho.matrix()) < 1e-12);
    }

    #[test]
    fn decompose_bell_density() {
        let mut m = ComplexMatrix::zeros(4, 4);
        for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            m.set(i, j, c(0.5, 0.0));
        }
        let rho = DensityMatrix::new(m).unwrap();
        let pair = decompose(&rho).unwrap();
        let spectrum = pair.spectrum().as_slice();
        assert!((spectrum[0] - 1.0).abs() < 1e-12);
        assert!(spectrum[1].abs() < 1e-12);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        for (row, want) in [0.0, r, r, 0.0].iter().enumerate() {
            assert!((pair.frame().matrix().get(row, 0) - c(*want, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn recompose_identity_frame_and_qubit_closed_form() {
        let spectrum = ProbabilityVector::new(vec![0.8, 0.2]).unwrap();
        let pair = SpectralPair::new(UnitaryMatrix::identity(2), spectrum).unwrap();
        let rho = recompose(&pair).unwrap();
        assert!(rho.matrix().max_abs_diff(&ComplexMatrix::diagonal(&[0.8, 0.2])) < 1e-15);

        // frame su2(0, pi/2, 0), spectrum (1, 0): entries from the
        // hand-evaluated closed form are rho11 = 1/2, rho12 = -1/2.
        let v0 = su2_from_euler(0.0, std::f64::consts::FRAC_PI_2, 0.0);
        let pure = ProbabilityVector::vertex(2, 0);
        let rho = recompose(&SpectralPair::new(v0.clone(), pure).unwrap()).unwrap();
        assert!((rho.matrix().get(0, 0).re - 0.5).abs() < 1e-14);
        assert!((rho.matrix().get(0, 1) - c(-0.5, 0.0)).norm() < 1e-14);

        // entry relations of the recomposition for a generic pair
        let chi = ProbabilityVector::new(vec![0.65, 0.35]).unwrap();
        let v = su2_from_euler(0.4, 1.0, -0.7);
        let rho = recompose(&SpectralPair::new(v.clone(), chi.clone()).unwrap()).unwrap();
        let (v11, v12) = (v.matrix().get(0, 0), v.matrix().get(0, 1));
        let (v21, v22) = (v.matrix().get(1, 0), v.matrix().get(1, 1));
        let chi11 = v11.norm_sqr() * chi.get(0) + v12.norm_sqr() * chi.get(1);
        let chi12 = v11 * v21.conj() * chi.get(0) + v12 * v22.conj() * chi.get(1);
        assert!((rho.matrix().get(0, 0).re - chi11).abs() < 1e-14);
        assert!((rho.matrix().get(0, 1) - chi12).norm() < 1e-14);
        assert!((rho.matrix().get(1, 1).re - (1.0 - chi11)).abs() < 1e-14);
        assert!((rho.matrix().get(1, 0) - chi12.conj()).norm() < 1e-14);
    }

    #[test]
    fn qubit_spectrum_examples() {
        let mixed = DensityMatrix::maximally_mixed(2);
        assert_eq!(qubit_spectrum(&mixed).unwrap().as_slice(), &[0.5, 0.5]);

        let pure = qubit(1.0, c(0.0, 0.0));
        assert_eq!(qubit_spectrum(&pure).unwrap().as_slice(), &[1.0, 0.0]);

        let rho = qubit(0.7, c(0.1, 0.0));
        let s = qubit_spectrum(&rho).unwrap();
        let root = 0.2f64.sqrt();
        assert!((s.get(0) - (0.5 + 0.5 * root)).abs() < 1e-15);
        assert!((s.get(1) - (0.5 - 0.5 * root)).abs() < 1e-15);
        // cross-check against the generic eigensolver
        let eig = eig_hermitian(rho.matrix()).unwrap();
        assert!((s.get(0) - eig.eigenvalues[0]).abs() < 1e-12);
        assert!((s.get(1) - eig.eigenvalues[1]).abs() < 1e-12);
    }

    #[test]
    fn qubit_eigenvectors_closed_form_branch() {
        let rho = qubit(0.7, c(0.1, 0.0));
        let out = qubit_eigenvectors(&rho).unwrap();
        assert_eq!(out.branch, QubitBranch::ClosedForm);
        // residual check: rho u = lambda u for both columns
        let s = qubit_spectrum(&rho).unwrap();
        for colidx in 0..2 {
            let u = out.frame.matrix();
            let col = [u.get(0, colidx), u.get(1, colidx)];
            for row in 0..2 {
                let image = rho.matrix().get(row, 0) * col[0] + rho.matrix().get(row, 1) * col[1];
                assert!((image - col[row] * s.get(colidx)).norm() < 1e-12);
            }
        }

        // symmetric half: eigenvectors (1,1)/sqrt2 and (1,-1)/sqrt2 up to order
        let rho = qubit(0.5, c(0.5, 0.0));
        let out = qubit_eigenvectors(&rho).unwrap();
        assert_eq!(out.branch, QubitBranch::ClosedForm);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let u = out.frame.matrix();
        assert!((u.get(0, 0) - c(r, 0.0)).norm() < 1e-12);
        assert!((u.get(1, 0) - c(r, 0.0)).norm() < 1e-12);
        assert!((u.get(0, 1) - c(-r, 0.0)).norm() < 1e-12);
        assert!((u.get(1, 1) - c(r, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn qubit_eigenvectors_fallback_branch() {
        let rho = qubit(0.7, c(0.0, 0.0));
        let out = qubit_eigenvectors(&rho).unwrap();
        assert_eq!(out.branch, QubitBranch::Fallback);
        assert!(out
            .frame
            .matrix()
            .max_abs_diff(&ComplexMatrix::identity(2))
            < 1e-12);
    }

    #[test]
    fn positive_map_identity_and_pure_rotation() {
        let rho = qubit(0.6, c(0.15, -0.1));
        let pair = decompose(&rho).unwrap();
        let spec = PositiveMapSpec::new(
            UnitaryMatrix::identity(2),
            StochasticMatrix::identity(2),
        )
        .unwrap();
        let image = apply_positive_map(&pair, &spec).unwrap();
        assert!(image.matrix().max_abs_diff(rho.matrix()) < 1e-12);

        // M = I, arbitrary V: exactly V rho V†
        let v = random_unitary(2, 77);
        let spec = PositiveMapSpec::new(v.clone(), StochasticMatrix::identity(2)).unwrap();
        let image = apply_positive_map(&pair, &spec).unwrap();
        let direct = v
            .matrix()
            .matmul(rho.matrix())
            .matmul(&v.matrix().adjoint());
        assert!(image.matrix().max_abs_diff(&direct) < 1e-12);
    }

    #[test]
    fn state_level_map_agrees_with_the_pair_route() {
        let rho = qubit(0.6, c(0.15, -0.1));
        let spec = PositiveMapSpec::new(
            random_unitary(2, 21),
            StochasticMatrix::from_rows(&[vec![0.8, 0.4], vec![0.2, 0.6]]).unwrap(),
        )
        .unwrap();
        let via_pair = apply_positive_map(&decompose(&rho).unwrap(), &spec).unwrap();
        let direct = apply_positive_map_to_state(&rho, &spec).unwrap();
        assert!(direct.matrix().max_abs_diff(via_pair.matrix()) < 1e-14);
    }

    #[test]
    fn positive_map_transports_the_spectrum() {
        let pure = SpectralPair::new(random_unitary(2, 5), ProbabilityVector::vertex(2, 0)).unwrap();
        let l = StochasticMatrix::from_rows(&[vec![0.85, 0.85], vec![0.15, 0.15]]).unwrap();
        let spec = PositiveMapSpec::new(UnitaryMatrix::identity(2), l).unwrap();
        let image = apply_positive_map(&pure, &spec).unwrap();
        let eig = eig_hermitian(image.matrix()).unwrap();
        assert!((eig.eigenvalues[0] - 0.85).abs() < 1e-12);
        assert!((eig.eigenvalues[1] - 0.15).abs() < 1e-12);
    }

    #[test]
    fn bistochastic_map_fixes_maximally_mixed() {
        let pair = decompose(&DensityMatrix::maximally_mixed(2)).unwrap();
        let m = StochasticMatrix::from_rows(&[vec![0.3, 0.7], vec![0.7, 0.3]]).unwrap();
        assert!(m.is_bistochastic());
        let spec = PositiveMapSpec::new(random_unitary(2, 9), m).unwrap();
        let image = apply_positive_map(&pair, &spec).unwrap();
        assert!(image
            .matrix()
            .max_abs_diff(DensityMatrix::maximally_mixed(2).matrix())
            < 1e-12);
    }

    #[test]
    fn mixture_spectrum_matches_direct_diagonalization() {
        let rho1 = qubit(0.8, c(0.05, 0.1));
        let rho2 = qubit(0.4, c(-0.2, 0.12));

        // equal states: the mixture spectrum is the common spectrum
        let same = mixture_spectrum(&rho1, &rho1, 0.3).unwrap();
        let own = qubit_spectrum(&rho1).unwrap();
        assert!(same.max_abs_diff(&own) < 1e-14);

        // orthogonal pure states at lambda = 1/2: maximally mixed
        let up = qubit(1.0, c(0.0, 0.0));
        let down = qubit(0.0, c(0.0, 0.0));
        let s = mixture_spectrum(&up, &down, 0.5).unwrap();
        assert!((s.get(0) - 0.5).abs() < 1e-15);

        // generic pair against the eigensolver of the mixed matrix
        let lambda = 0.3;
        let mixed = rho1
            .matrix()
            .scale(c(lambda, 0.0))
            .add(&rho2.matrix().scale(c(1.0 - lambda, 0.0)));
        let direct = eig_hermitian(&mixed).unwrap();
        let s = mixture_spectrum(&rho1, &rho2, lambda).unwrap();
        assert!((s.get(0) - direct.eigenvalues[0]).abs() < 1e-12);
        assert!((s.get(1) - direct.eigenvalues[1]).abs() < 1e-12);

        assert!(matches!(
            mixture_spectrum(&rho1, &rho2, -0.1),
            Err(Error::LambdaOutOfRange { .. })
        ));
    }
}
