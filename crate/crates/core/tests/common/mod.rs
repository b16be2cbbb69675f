//! Seeded generators shared by the integration tests.

use qtomo::{
    random_unitary, ComplexMatrix, DensityMatrix, ProbabilityVector, StochasticMatrix,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random point in the simplex interior.
pub fn simplex_point(n: usize, seed: u64) -> ProbabilityVector {
    let mut r = rng(seed ^ 0x5113);
    let raw: Vec<f64> = (0..n).map(|_| r.gen_range(0.01..1.0)).collect();
    let total: f64 = raw.iter().sum();
    ProbabilityVector::new(raw.iter().map(|x| x / total).collect()).unwrap()
}

/// Random column-stochastic matrix.
pub fn stochastic(n: usize, seed: u64) -> StochasticMatrix {
    let mut r = rng(seed ^ 0xA001);
    let mut data = vec![0.0; n * n];
    for col in 0..n {
        let raw: Vec<f64> = (0..n).map(|_| r.gen_range(0.0..1.0)).collect();
        let total: f64 = raw.iter().sum();
        for row in 0..n {
            data[row * n + col] = raw[row] / total;
        }
    }
    StochasticMatrix::new(n, data).unwrap()
}

/// Strictly positive column-stochastic matrix.
pub fn positive_stochastic(n: usize, seed: u64) -> StochasticMatrix {
    let mut r = rng(seed ^ 0xB002);
    let mut data = vec![0.0; n * n];
    for col in 0..n {
        let raw: Vec<f64> = (0..n).map(|_| r.gen_range(0.05..1.0)).collect();
        let total: f64 = raw.iter().sum();
        for row in 0..n {
            data[row * n + col] = raw[row] / total;
        }
    }
    StochasticMatrix::new(n, data).unwrap()
}

/// Random bistochastic matrix: a convex combination of permutation matrices.
pub fn bistochastic(n: usize, seed: u64) -> StochasticMatrix {
    let mut r = rng(seed ^ 0xC003);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut data = vec![0.0; n * n];
    let k = 2 * n;
    let mut weights: Vec<f64> = (0..k).map(|_| r.gen_range(0.1..1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
    for &w in &weights {
        // Fisher-Yates with the shared rng
        for i in (1..n).rev() {
            let j = r.gen_range(0..=i);
            perm.swap(i, j);
        }
        for (row, &col) in perm.iter().enumerate() {
            data[row * n + col] += w;
        }
    }
    StochasticMatrix::new(n, data).unwrap()
}

/// Random density matrix: a seeded Haar frame around a random spectrum.
pub fn density(dim: usize, seed: u64) -> DensityMatrix {
    let mut r = rng(seed ^ 0xD004);
    let u = random_unitary(dim, seed ^ 0xE005);
    let raw: Vec<f64> = (0..dim).map(|_| r.gen_range(0.01..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let spectrum: Vec<f64> = raw.iter().map(|x| x / total).collect();
    let d = ComplexMatrix::diagonal(&spectrum);
    DensityMatrix::new(u.matrix().matmul(&d).matmul(&u.matrix().adjoint())).unwrap()
}
