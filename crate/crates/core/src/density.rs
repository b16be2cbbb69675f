//! Validated wrappers for the quantum-state types: unitary matrices, density
//! matrices, and the spectral pair (eigenframe, eigenvalue vector).

use crate::complex::ComplexMatrix;
use crate::eig::eig_hermitian;
use crate::error::{Error, Result};
use crate::simplex::ProbabilityVector;
use crate::tolerances;

/// Square complex matrix with `‖U†U - I‖_max` within the validation tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix(ComplexMatrix);

impl UnitaryMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let dev = m.unitarity_deviation();
        if dev > tolerances::VALIDATION {
            return Err(Error::NotUnitary {
                deviation: dev,
                tolerance: tolerances::VALIDATION,
            });
        }
        Ok(Self(m))
    }

    pub fn identity(n: usize) -> Self {
        Self(ComplexMatrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    /// Product of two unitaries.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
                context: "unitary product",
            });
        }
        Self::new(self.0.matmul(&other.0))
    }

    /// Tensor product of two unitaries.
    pub fn tensor(&self, other: &Self) -> Self {
        // Exact products of unitaries stay within tolerance.
        Self(self.0.tensor(&other.0))
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }
}

/// Hermitian, positive-semidefinite, trace-one complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let dev = m.hermiticity_deviation();
        if dev > tolerances::VALIDATION {
            return Err(Error::NotHermitian {
                deviation: dev,
                tolerance: tolerances::VALIDATION,
            });
        }
        let trace = m.trace();
        if (trace.re - 1.0).abs() > tolerances::VALIDATION {
            return Err(Error::TraceNotOne {
                trace: trace.re,
                tolerance: tolerances::VALIDATION,
            });
        }
        let eig = eig_hermitian(&m)?;
        if let Some(&lambda) = eig
            .eigenvalues
            .iter()
            .find(|&&lambda| lambda < -tolerances::VALIDATION)
        {
            return Err(Error::NegativeEigenvalue {
                eigenvalue: lambda,
                tolerance: tolerances::VALIDATION,
            });
        }
        Ok(Self(m))
    }

    /// Maximally mixed state `I/n`.
    pub fn maximally_mixed(n: usize) -> Self {
        Self(ComplexMatrix::diagonal(&vec![1.0 / n as f64; n]))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    /// Tensor product of two states.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Self::new(self.0.tensor(&other.0))
    }
}

/// Gauge-fixed eigenframe plus eigenvalue probability vector: a density
/// matrix in the form `U₀ · diag(ρ̃) · U₀†` with the spectrum descending.
#[derive(Debug, Clone)]
pub struct SpectralPair {
    frame: UnitaryMatrix,
    spectrum: ProbabilityVector,
}

impl SpectralPair {
    /// Pair a frame with a spectrum. The spectrum must be sorted descending;
    /// column phases are a convention of the producing eigensolver and are
    /// not checked here.
    pub fn new(frame: UnitaryMatrix, spectrum: ProbabilityVector) -> Result<Self> {
        if frame.dim() != spectrum.len() {
            return Err(Error::DimensionMismatch {
                left: frame.dim(),
                right: spectrum.len(),
                context: "spectral pair",
            });
        }
        for i in 1..spectrum.len() {
            if spectrum.get(i) > spectrum.get(i - 1) + tolerances::NEGATIVE_CLAMP {
                return Err(Error::SpectrumNotDescending {
                    index: i,
                    previous: spectrum.get(i - 1),
                    value: spectrum.get(i),
                });
            }
        }
        Ok(Self { frame, spectrum })
    }

    pub fn dim(&self) -> usize {
        self.spectrum.len()
    }

    pub fn frame(&self) -> &UnitaryMatrix {
        &self.frame
    }

    pub fn spectrum(&self) -> &ProbabilityVector {
        &self.spectrum
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn unitary_validation() {
        assert!(UnitaryMatrix::new(ComplexMatrix::identity(3)).is_ok());
        let almost = ComplexMatrix::new(
            2,
            2,
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.999, 0.0)],
        )
        .unwrap();
        assert!(matches!(
            UnitaryMatrix::new(almost),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn density_validation_rejects_each_violation() {
        // trace != 1
        let m = ComplexMatrix::diagonal(&[0.7, 0.7]);
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::TraceNotOne { .. })
        ));

        // not Hermitian
        let m = ComplexMatrix::new(
            2,
            2,
            vec![c(0.5, 0.0), c(0.3, 0.0), c(0.0, 0.0), c(0.5, 0.0)],
        )
        .unwrap();
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::NotHermitian { .. })
        ));

        // negative eigenvalue: trace 1, Hermitian, but indefinite
        let m = ComplexMatrix::new(
            2,
            2,
            vec![c(0.5, 0.0), c(0.8, 0.0), c(0.8, 0.0), c(0.5, 0.0)],
        )
        .unwrap();
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::NegativeEigenvalue { .. })
        ));

        assert!(DensityMatrix::new(ComplexMatrix::diagonal(&[0.25; 4])).is_ok());
    }

    #[test]
    fn tensor_of_unitaries_is_unitary() {
        let u = crate::rotations::random_unitary(2, 11);
        let v = crate::rotations::random_unitary(3, 12);
        let t = u.tensor(&v);
        assert_eq!(t.dim(), 6);
        assert!(t.matrix().unitarity_deviation() < 1e-12);
    }

    #[test]
    fn spectral_pair_requires_descending_spectrum() {
        let frame = UnitaryMatrix::identity(2);
        let ascending = ProbabilityVector::new(vec![0.3, 0.7]).unwrap();
        assert!(matches!(
            SpectralPair::new(frame.clone(), ascending),
            Err(Error::SpectrumNotDescending { index: 1, .. })
        ));
        let descending = ProbabilityVector::new(vec![0.7, 0.3]).unwrap();
        assert!(SpectralPair::new(frame, descending).is_ok());
    }
}
