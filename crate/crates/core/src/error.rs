//! Error type shared by all modules.

use thiserror::Error;

/// Library result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong, split by whether the input violated an
/// invariant (validation) or a numerical procedure failed (numerical).
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("entry ({row},{col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {left} vs {right} in {context}")]
    DimensionMismatch {
        left: usize,
        right: usize,
        context: &'static str,
    },

    #[error("matrix is not unitary: max |U†U - I| = {deviation:.3e} exceeds {tolerance:.1e}")]
    NotUnitary { deviation: f64, tolerance: f64 },

    #[error("matrix is not Hermitian: max |H - H†| = {deviation:.3e} exceeds {tolerance:.1e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("trace is {trace:.17}, expected 1 within {tolerance:.1e}")]
    TraceNotOne { trace: f64, tolerance: f64 },

    #[error("matrix has negative eigenvalue {eigenvalue:.3e} below -{tolerance:.1e}")]
    NegativeEigenvalue { eigenvalue: f64, tolerance: f64 },

    #[error("probability vector must be non-empty")]
    EmptyVector,

    #[error("component {index} is {value:.3e}, below the -{tolerance:.1e} floor")]
    NegativeComponent {
        index: usize,
        value: f64,
        tolerance: f64,
    },

    #[error("components sum to {sum:.17}, expected 1 within {tolerance:.1e}")]
    SumNotOne { sum: f64, tolerance: f64 },

    #[error("spectrum increases at index {index}: {previous:.17} < {value:.17}")]
    SpectrumNotDescending {
        index: usize,
        previous: f64,
        value: f64,
    },

    #[error("entry ({row},{col}) of stochastic matrix is {value:.3e}, negative beyond {tolerance:.1e}")]
    NegativeStochasticEntry {
        row: usize,
        col: usize,
        value: f64,
        tolerance: f64,
    },

    #[error("column {col} of stochastic matrix sums to {sum:.17}, expected 1 within {tolerance:.1e}")]
    ColumnSumNotOne {
        col: usize,
        sum: f64,
        tolerance: f64,
    },

    #[error("conjugated matrix has last row entry ({col}) = {value:.3e}, expected {expected}")]
    EmbeddingLastRow {
        col: usize,
        value: f64,
        expected: f64,
    },

    #[error("lambda = {value} is outside [0, 1]")]
    LambdaOutOfRange { value: f64 },

    #[error("det = {det:.17} is outside [0, 1/4] for a 2x2 density matrix")]
    DeterminantOutOfRange { det: f64 },

    #[error("diagonal element {index} has imaginary part {imag:.3e}; input is inconsistent")]
    NonRealDiagonal { index: usize, imag: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    EigenNoConvergence { sweeps: usize, off_norm: f64 },

    #[error("fixed point iteration did not converge within {iterations} iterations (residual {residual:.3e}); Cesaro averaging also failed")]
    PerronNoConvergence { iterations: usize, residual: f64 },

    #[error("powers of the matrix oscillate without converging after {iterations} iterations (residual {residual:.3e}); use the Cesaro limit instead")]
    PowerOscillation { iterations: usize, residual: f64 },

    #[error("matrix is singular (pivot {pivot:.3e} below threshold)")]
    Singular { pivot: f64 },

    #[error("design matrix rank {rank} is below the {needed} independent constraints required for dimension {dim}")]
    RankDeficient {
        rank: usize,
        needed: usize,
        dim: usize,
    },

    #[error("samples are mutually inconsistent: least-squares residual {residual:.3e} exceeds {tolerance:.1e}")]
    InconsistentSamples { residual: f64, tolerance: f64 },
}

impl Error {
    /// True for failures of a numerical procedure (non-convergence, rank
    /// deficiency, singularity) as opposed to invalid input data.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::EigenNoConvergence { .. }
                | Error::PerronNoConvergence { .. }
                | Error::PowerOscillation { .. }
                | Error::Singular { .. }
                | Error::RankDeficient { .. }
                | Error::InconsistentSamples { .. }
        )
    }
}
