//! JSON document formats for matrices, vectors, spectral pairs, affine
//! blocks, and tomogram sample sets.
//!
//! Every document declares its kind and is validated against the
//! corresponding library type on load. Complex entries are two-element
//! `[re, im]` arrays; all matrices are row-major nested arrays. Numbers are
//! serialized in the shortest form that round-trips, so a document written
//! by the CLI reloads bit-identically.

use serde::{Deserialize, Serialize};

use qtomo::{
    Complex64, ComplexMatrix, DensityMatrix, ProbabilityVector, RealMatrix, SpectralPair,
    StochasticMatrix, UnitaryMatrix,
};

use crate::CliError;

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MatrixDocument {
    Density {
        rows: usize,
        cols: usize,
        data: Vec<Vec<[f64; 2]>>,
    },
    Unitary {
        rows: usize,
        cols: usize,
        data: Vec<Vec<[f64; 2]>>,
    },
    Stochastic {
        rows: usize,
        cols: usize,
        data: Vec<Vec<f64>>,
    },
    Real {
        rows: usize,
        cols: usize,
        data: Vec<Vec<f64>>,
    },
    Probability {
        len: usize,
        data: Vec<f64>,
    },
}

/// A spectral pair: eigenvector frame plus eigenvalue probability vector.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDocument {
    pub frame: MatrixDocument,
    pub spectrum: MatrixDocument,
}

/// Linear block and translation of an embedded stochastic matrix.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDocument {
    pub linear: MatrixDocument,
    pub translation: Vec<f64>,
}

/// A batch of tomogram samples for reconstruction.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplesDocument {
    pub dim: usize,
    pub samples: Vec<SampleRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleRecord {
    pub frame: MatrixDocument,
    pub probabilities: MatrixDocument,
}

fn complex_cells(
    rows: usize,
    cols: usize,
    data: &[Vec<[f64; 2]>],
) -> Result<ComplexMatrix, CliError> {
    if data.len() != rows || data.iter().any(|row| row.len() != cols) {
        return Err(CliError::validation(format!(
            "data shape does not match declared {rows}x{cols}"
        )));
    }
    let flat: Vec<Complex64> = data
        .iter()
        .flatten()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    Ok(ComplexMatrix::new(rows, cols, flat)?)
}

fn real_cells(rows: usize, cols: usize, data: &[Vec<f64>]) -> Result<RealMatrix, CliError> {
    if data.len() != rows || data.iter().any(|row| row.len() != cols) {
        return Err(CliError::validation(format!(
            "data shape does not match declared {rows}x{cols}"
        )));
    }
    let flat: Vec<f64> = data.iter().flatten().copied().collect();
    Ok(RealMatrix::new(rows, cols, flat)?)
}

impl MatrixDocument {
    pub fn kind(&self) -> &'static str {
        match self {
            MatrixDocument::Density { .. } => "density",
            MatrixDocument::Unitary { .. } => "unitary",
            MatrixDocument::Stochastic { .. } => "stochastic",
            MatrixDocument::Real { .. } => "real",
            MatrixDocument::Probability { .. } => "probability",
        }
    }

    pub fn into_density(self) -> Result<DensityMatrix, CliError> {
        match self {
            MatrixDocument::Density { rows, cols, data } => {
                Ok(DensityMatrix::new(complex_cells(rows, cols, &data)?)?)
            }
            other => Err(CliError::validation(format!(
                "expected a density document, found kind \"{}\"",
                other.kind()
            ))),
        }
    }

    pub fn into_unitary(self) -> Result<UnitaryMatrix, CliError> {
        match self {
            MatrixDocument::Unitary { rows, cols, data } => {
                Ok(UnitaryMatrix::new(complex_cells(rows, cols, &data)?)?)
            }
            other => Err(CliError::validation(format!(
                "expected a unitary document, found kind \"{}\"",
                other.kind()
            ))),
        }
    }

    pub fn into_stochastic(self) -> Result<StochasticMatrix, CliError> {
        match self {
            MatrixDocument::Stochastic { rows, cols, data } => {
                if rows != cols {
                    return Err(CliError::validation(format!(
                        "stochastic matrix must be square, found {rows}x{cols}"
                    )));
                }
                let m = real_cells(rows, cols, &data)?;
                Ok(StochasticMatrix::new(rows, m.data().to_vec())?)
            }
            other => Err(CliError::validation(format!(
                "expected a stochastic document, found kind \"{}\"",
                other.kind()
            ))),
        }
    }

    pub fn into_real(self) -> Result<RealMatrix, CliError> {
        match self {
            MatrixDocument::Real { rows, cols, data } => real_cells(rows, cols, &data),
            other => Err(CliError::validation(format!(
                "expected a real document, found kind \"{}\"",
                other.kind()
            ))),
        }
    }

    pub fn into_probability(self) -> Result<ProbabilityVector, CliError> {
        match self {
            MatrixDocument::Probability { len, data } => {
                if data.len() != len {
                    return Err(CliError::validation(format!(
                        "data length {} does not match declared len {len}",
                        data.len()
                    )));
                }
                Ok(ProbabilityVector::new(data)?)
            }
            other => Err(CliError::validation(format!(
                "expected a probability document, found kind \"{}\"",
                other.kind()
            ))),
        }
    }

    fn complex_data(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
        (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| {
                        let z = m.get(i, j);
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect()
    }

    fn real_data(m: &RealMatrix) -> Vec<Vec<f64>> {
        (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect())
            .collect()
    }

    pub fn from_density(rho: &DensityMatrix) -> Self {
        MatrixDocument::Density {
            rows: rho.dim(),
            cols: rho.dim(),
            data: Self::complex_data(rho.matrix()),
        }
    }

    pub fn from_unitary(u: &UnitaryMatrix) -> Self {
        MatrixDocument::Unitary {
            rows: u.dim(),
            cols: u.dim(),
            data: Self::complex_data(u.matrix()),
        }
    }

    pub fn from_stochastic(m: &StochasticMatrix) -> Self {
        MatrixDocument::Stochastic {
            rows: m.dim(),
            cols: m.dim(),
            data: Self::real_data(m.as_real()),
        }
    }

    pub fn from_real(m: &RealMatrix) -> Self {
        MatrixDocument::Real {
            rows: m.rows(),
            cols: m.cols(),
            data: Self::real_data(m),
        }
    }

    pub fn from_probability(p: &ProbabilityVector) -> Self {
        MatrixDocument::Probability {
            len: p.len(),
            data: p.as_slice().to_vec(),
        }
    }
}

impl PairDocument {
    pub fn from_pair(pair: &SpectralPair) -> Self {
        Self {
            frame: MatrixDocument::from_unitary(pair.frame()),
            spectrum: MatrixDocument::from_probability(pair.spectrum()),
        }
    }

    pub fn into_pair(self) -> Result<SpectralPair, CliError> {
        Ok(SpectralPair::new(
            self.frame.into_unitary()?,
            self.spectrum.into_probability()?,
        )?)
    }
}
