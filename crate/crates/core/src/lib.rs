//! Tomographic probability representation of finite-level quantum states.
//!
//! A qudit state is carried by its spin tomograms — outcome distributions
//! `W(m, U) = ⟨m|UρU†|m⟩` over rotated frames — which are points on a
//! probability simplex. The crate implements the pieces that make this
//! picture work end to end:
//!
//! - [`complex`], [`eig`], [`density`], [`rotations`]: the complex-matrix
//!   substrate, a gauge-fixed Hermitian eigensolver, validated state types,
//!   SU(2) frames and seeded random unitaries;
//! - [`simplex`]: probability vectors and the semigroup of (bi)stochastic
//!   matrices acting on them, with Perron vectors, power limits and Cesaro
//!   means;
//! - [`embedding`]: the change of coordinates exhibiting invertible
//!   (bi)stochastic matrices inside the (inhomogeneous) general linear
//!   group, with closed forms at n = 3;
//! - [`tomography`]: tomograms, the orthostochastic matrix `|U·U₀|²`
//!   connecting them to spectra, and least-squares state reconstruction;
//! - [`maps`]: positive maps `(U₀, ρ̃) → (V·U₀, M·ρ̃)` on spectral pairs and
//!   the qubit closed forms;
//! - [`bell`]: two-qubit CHSH analysis up to the `2√2` bound and the
//!   universal stochastic matrix behind it.
//!
//! All operations are pure functions over immutable values and safe to use
//! across threads.

pub mod bell;
pub mod complex;
pub mod density;
pub mod eig;
pub mod embedding;
pub mod error;
pub mod maps;
pub mod real;
pub mod rotations;
pub mod simplex;
pub mod tolerances;
pub mod tomography;

pub use complex::{tensor_product, ComplexMatrix};
pub use density::{DensityMatrix, SpectralPair, UnitaryMatrix};
pub use eig::{eig_hermitian, Eigendecomposition};
pub use error::{Error, Result};
pub use real::RealMatrix;
pub use rotations::{random_unitary, su2_from_euler};
pub use simplex::{bistochastic_orbit_contains, PowerLimit, ProbabilityVector, StochasticMatrix};

pub use num_complex::Complex64;
