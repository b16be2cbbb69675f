//! Probability vectors on the simplex and the semigroup of (bi)stochastic
//! matrices acting on them: composition, Perron analysis, asymptotic limits,
//! and the orbit test for the bistochastic action.

use crate::error::{Error, Result};
use crate::real::RealMatrix;
use crate::tolerances;

/// Nonnegative components summing to one.
///
/// Components in `[-1e-12, 0)` are clamped to exactly 0 on construction so
/// later strict-nonnegativity checks are stable.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector {
    components: Vec<f64>,
}

impl ProbabilityVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyVector);
        }
        let mut clean = components;
        for (i, x) in clean.iter_mut().enumerate() {
            if !x.is_finite() {
                return Err(Error::NonFiniteEntry { row: i, col: 0 });
            }
            if *x < 0.0 {
                if *x < -tolerances::NEGATIVE_CLAMP {
                    return Err(Error::NegativeComponent {
                        index: i,
                        value: *x,
                        tolerance: tolerances::NEGATIVE_CLAMP,
                    });
                }
                *x = 0.0;
            }
        }
        let sum: f64 = clean.iter().sum();
        if (sum - 1.0).abs() > tolerances::VALIDATION {
            return Err(Error::SumNotOne {
                sum,
                tolerance: tolerances::VALIDATION,
            });
        }
        Ok(Self { components: clean })
    }

    /// The barycenter `e₀/n`.
    pub fn uniform(n: usize) -> Self {
        Self {
            components: vec![1.0 / n as f64; n],
        }
    }

    /// The vertex with all mass on one component.
    pub fn vertex(n: usize, index: usize) -> Self {
        assert!(index < n);
        let mut components = vec![0.0; n];
        components[index] = 1.0;
        Self { components }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn get(&self, index: usize) -> f64 {
        self.components[index]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.components
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.len(), other.len());
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Reported by [`StochasticMatrix::power_limit`]: the rank-one limit and the
/// power at which it was reached.
#[derive(Debug, Clone)]
pub struct PowerLimit {
    /// Rank-one matrix whose columns are all the Perron vector.
    pub limit: StochasticMatrix,
    /// Smallest checked `k` with `‖M^k - limit‖_max` within tolerance.
    pub steps: usize,
}

/// Column-stochastic real matrix, with cached bistochastic and
/// orthostochastic classification.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrix {
    n: usize,
    entries: RealMatrix,
    bistochastic: bool,
    orthostochastic: bool,
}

impl StochasticMatrix {
    /// Validate a square matrix as column-stochastic and classify it.
    ///
    /// Entries in `[-1e-10, 0)` are clamped to 0; anything lower is rejected
    /// with its position. Column sums must be 1 within the validation
    /// tolerance. The orthostochastic flag is only ever set by the
    /// tomography module, which builds such matrices from a unitary.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        let raw = RealMatrix::new(n, n, data)?;
        Self::validated(raw, false)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let m = RealMatrix::from_rows(rows)?;
        if m.rows() != m.cols() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        Self::validated(m, false)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            entries: RealMatrix::identity(n),
            bistochastic: true,
            orthostochastic: false,
        }
    }

    pub(crate) fn new_orthostochastic(m: RealMatrix) -> Result<Self> {
        Self::validated(m, true)
    }

    fn validated(mut m: RealMatrix, orthostochastic: bool) -> Result<Self> {
        let n = m.rows();
        for i in 0..n {
            for j in 0..n {
                let x = m.get(i, j);
                if x < 0.0 {
                    if x < -tolerances::VALIDATION {
                        return Err(Error::NegativeStochasticEntry {
                            row: i,
                            col: j,
                            value: x,
                            tolerance: tolerances::VALIDATION,
                        });
                    }
                    m.set(i, j, 0.0);
                }
            }
        }
        for j in 0..n {
            let sum: f64 = (0..n).map(|i| m.get(i, j)).sum();
            if (sum - 1.0).abs() > tolerances::VALIDATION {
                return Err(Error::ColumnSumNotOne {
                    col: j,
                    sum,
                    tolerance: tolerances::VALIDATION,
                });
            }
        }
        let bistochastic = (0..n).all(|i| {
            let sum: f64 = (0..n).map(|j| m.get(i, j)).sum();
            (sum - 1.0).abs() <= tolerances::VALIDATION
        });
        Ok(Self {
            n,
            entries: m,
            bistochastic,
            orthostochastic,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries.get(row, col)
    }

    pub fn is_bistochastic(&self) -> bool {
        self.bistochastic
    }

    pub fn is_orthostochastic(&self) -> bool {
        self.orthostochastic
    }

    pub fn as_real(&self) -> &RealMatrix {
        &self.entries
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries.max_abs_diff(&other.entries)
    }

    /// Push a point on the simplex through the map.
    pub fn apply(&self, p: &ProbabilityVector) -> Result<ProbabilityVector> {
        if p.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: p.len(),
                context: "stochastic apply",
            });
        }
        ProbabilityVector::new(self.entries.matvec(p.as_slice()))
    }

    /// Matrix product, revalidated. Semigroup closure: the product of two
    /// stochastic matrices is stochastic; bistochasticity is preserved when
    /// both factors have it.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
                context: "stochastic compose",
            });
        }
        Self::validated(self.entries.matmul(&other.entries), false)
    }

    /// `λ·self + (1-λ)·other`.
    pub fn convex_combine(&self, other: &Self, lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::LambdaOutOfRange { value: lambda });
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
                context: "convex combination",
            });
        }
        let mixed = self
            .entries
            .scale(lambda)
            .add(&other.entries.scale(1.0 - lambda));
        Self::validated(mixed, false)
    }

    /// Probability eigenvector at eigenvalue 1.
    ///
    /// Power iteration from the barycenter, with Cesaro averaging of the
    /// iterates as a fallback when the orbit cycles. For a bistochastic
    /// matrix the barycenter is already fixed, so the answer is `e₀/n`.
    pub fn perron_vector(&self, tol: f64) -> Result<ProbabilityVector> {
        let n = self.n;
        let mut x = vec![1.0 / n as f64; n];
        let mut residual = f64::INFINITY;
        for _ in 0..tolerances::MAX_ITERATIONS {
            let next = self.entries.matvec(&x);
            residual = max_abs_diff(&next, &x);
            x = next;
            if residual <= tol {
                return ProbabilityVector::new(normalized(x));
            }
        }
        // Cesaro fallback: average the iterates and test the average as a
        // fixed point.
        let mut sum = x.clone();
        let mut count = 1usize;
        for _ in 0..tolerances::MAX_ITERATIONS {
            let next = self.entries.matvec(&x);
            for (s, v) in sum.iter_mut().zip(&next) {
                *s += v;
            }
            x = next;
            count += 1;
            if count.is_multiple_of(64) {
                let avg: Vec<f64> = sum.iter().map(|s| s / count as f64).collect();
                let image = self.entries.matvec(&avg);
                residual = max_abs_diff(&image, &avg);
                if residual <= tol {
                    return ProbabilityVector::new(normalized(avg));
                }
            }
        }
        Err(Error::PerronNoConvergence {
            iterations: 2 * tolerances::MAX_ITERATIONS,
            residual,
        })
    }

    /// Limit of the powers `M^k`, a rank-one matrix with the Perron vector in
    /// every column. Errors when the powers keep oscillating, in which case
    /// the Cesaro limit may still exist.
    pub fn power_limit(&self, tol: f64, max_k: usize) -> Result<PowerLimit> {
        let p = self.perron_vector(tol.min(tolerances::PERRON_TOL))?;
        let n = self.n;
        let mut limit = RealMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                limit.set(i, j, p.get(i));
            }
        }
        let mut power = self.entries.clone();
        let mut residual = f64::INFINITY;
        for k in 1..=max_k {
            residual = power.max_abs_diff(&limit);
            if residual <= tol {
                return Ok(PowerLimit {
                    limit: Self::validated(limit, false)?,
                    steps: k,
                });
            }
            power = power.matmul(&self.entries);
        }
        Err(Error::PowerOscillation {
            iterations: max_k,
            residual,
        })
    }

    /// Cesaro mean `(1/N)·Σ_{k=1..N} M^k`. Always defined; the columns of a
    /// converged Cesaro limit are fixed points of the matrix.
    pub fn cesaro_limit(&self, n_terms: usize) -> RealMatrix {
        assert!(n_terms >= 1, "at least one term");
        let mut power = self.entries.clone();
        let mut sum = power.clone();
        for _ in 2..=n_terms {
            power = power.matmul(&self.entries);
            sum = sum.add(&power);
        }
        sum.scale(1.0 / n_terms as f64)
    }

    /// Matrix inverse, when it exists. Column sums of the inverse are
    /// always 1 (and row sums too, for a bistochastic input), but entries
    /// may be negative: the inverse lives in the matrix group, not
    /// necessarily in the semigroup.
    pub fn inverse_if_exists(&self) -> Result<RealMatrix> {
        self.entries.inverse()
    }
}

/// Whether `w` lies in the convex hull of all permutations of `v` — the
/// orbit of the bistochastic semigroup through `v`. Implemented as the
/// majorization test: partial sums of `w` sorted descending never exceed
/// those of `v`.
pub fn bistochastic_orbit_contains(v: &ProbabilityVector, w: &ProbabilityVector) -> Result<bool> {
    if v.len() != w.len() {
        return Err(Error::DimensionMismatch {
            left: v.len(),
            right: w.len(),
            context: "orbit membership",
        });
    }
    let mut vs = v.as_slice().to_vec();
    let mut ws = w.as_slice().to_vec();
    vs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ws.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut pv = 0.0;
    let mut pw = 0.0;
    for (a, b) in vs.iter().zip(&ws) {
        pv += a;
        pw += b;
        if pw > pv + tolerances::VALIDATION {
            return Ok(false);
        }
    }
    Ok(true)
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn normalized(mut v: Vec<f64>) -> Vec<f64> {
    for x in v.iter_mut() {
        if *x < 0.0 && *x >= -tolerances::NEGATIVE_CLAMP {
            *x = 0.0;
        }
    }
    let sum: f64 = v.iter().sum();
    for x in v.iter_mut() {
        *x /= sum;
    }
    v
}
