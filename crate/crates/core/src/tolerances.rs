//! Shared numerical tolerances.
//!
//! Validation thresholds are looser than identity-check thresholds: a value
//! built from user input may carry accumulated rounding from earlier
//! computations, while an algebraic identity evaluated in one step should be
//! accurate to a few ulps.

/// Validation of constructed objects (unitarity, Hermiticity, trace,
/// column sums, normalization).
pub const VALIDATION: f64 = 1e-10;

/// Arithmetic identity checks (round trips, orthogonality of frames,
/// determinant of SU(2) elements).
pub const IDENTITY: f64 = 1e-12;

/// Components of a probability vector in [-NEGATIVE_CLAMP, 0) are clamped
/// to exactly 0 on construction; anything lower is rejected.
pub const NEGATIVE_CLAMP: f64 = 1e-12;

/// Off-diagonal Frobenius norm at which the Jacobi sweep stops, relative
/// to the scale of the input.
pub const EIG_OFF_DIAGONAL: f64 = 1e-14;

/// Maximum number of Jacobi sweeps before giving up.
pub const EIG_MAX_SWEEPS: usize = 100;

/// Eigenvalues closer than this are treated as one degenerate cluster when
/// fixing the eigenvector gauge.
pub const EIG_DEGENERACY: f64 = 1e-10;

/// Imaginary parts up to this size on a diagonal that must be real are
/// dropped; larger ones are an internal-consistency error.
pub const REAL_DIAGONAL: f64 = 1e-12;

/// Default fixed-point tolerance for Perron vector computation.
pub const PERRON_TOL: f64 = 1e-12;

/// Default iteration cap for fixed-point and power-limit loops.
pub const MAX_ITERATIONS: usize = 1_000_000;

/// Pivot threshold below which a matrix is declared singular.
pub const SINGULAR_PIVOT: f64 = 1e-12;

/// Relative eigenvalue threshold for the rank of a normal-equations system.
pub const RANK_THRESHOLD: f64 = 1e-10;

/// Maximum least-squares residual for mutually consistent tomogram samples.
pub const RECONSTRUCTION_RESIDUAL: f64 = 1e-6;
