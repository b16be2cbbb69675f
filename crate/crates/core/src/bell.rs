//! Two-qubit Bell machinery: the four-setting stochastic matrix built from
//! joint tomograms, the Bell number `B = Tr(M·E)`, the CHSH grid scan with
//! optional refinement, and the universal matrix that saturates `2√2`.

use num_complex::Complex64;

use crate::complex::ComplexMatrix;
use crate::density::{DensityMatrix, UnitaryMatrix};
use crate::error::{Error, Result};
use crate::real::RealMatrix;
use crate::rotations::su2_from_euler;
use crate::simplex::StochasticMatrix;
use crate::tomography::joint_tomogram;

/// Four local measurement frames: `a`, `d` on the first qubit, `b`, `c` on
/// the second.
#[derive(Debug, Clone)]
pub struct BellSetting {
    pub u_a: UnitaryMatrix,
    pub u_b: UnitaryMatrix,
    pub u_c: UnitaryMatrix,
    pub u_d: UnitaryMatrix,
}

impl BellSetting {
    pub fn new(
        u_a: UnitaryMatrix,
        u_b: UnitaryMatrix,
        u_c: UnitaryMatrix,
        u_d: UnitaryMatrix,
    ) -> Result<Self> {
        for u in [&u_a, &u_b, &u_c, &u_d] {
            if u.dim() != 2 {
                return Err(Error::DimensionMismatch {
                    left: u.dim(),
                    right: 2,
                    context: "Bell setting frame",
                });
            }
        }
        Ok(Self { u_a, u_b, u_c, u_d })
    }
}

/// The pure two-qubit state `(|+-⟩ + |-+⟩)/√2` as a density matrix: zeros
/// except the central 2x2 block of 1/2.
pub fn bell_state() -> DensityMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    let half = Complex64::new(0.5, 0.0);
    for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        m.set(i, j, half);
    }
    DensityMatrix::new(m).expect("constant Bell state is a valid density matrix")
}

/// The fixed sign matrix contracting a setting matrix to the CHSH
/// combination `E(a,b) + E(a,c) + E(d,b) - E(d,c)`.
pub fn chsh_sign_matrix() -> RealMatrix {
    RealMatrix::from_rows(&[
        vec![1.0, -1.0, -1.0, 1.0],
        vec![1.0, -1.0, -1.0, 1.0],
        vec![1.0, -1.0, -1.0, 1.0],
        vec![-1.0, 1.0, 1.0, -1.0],
    ])
    .expect("constant sign matrix")
}

/// 4x4 matrix whose columns are the joint tomograms for the setting pairs
/// `(a,b), (a,c), (d,b), (d,c)` — column-stochastic by construction.
pub fn setting_matrix(rho: &DensityMatrix, setting: &BellSetting) -> Result<StochasticMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: 4,
            context: "setting matrix",
        });
    }
    let pairs = [
        (&setting.u_a, &setting.u_b),
        (&setting.u_a, &setting.u_c),
        (&setting.u_d, &setting.u_b),
        (&setting.u_d, &setting.u_c),
    ];
    let mut data = vec![0.0; 16];
    for (col, (u_h, u_k)) in pairs.iter().enumerate() {
        let w = joint_tomogram(rho, u_h, u_k)?;
        for row in 0..4 {
            data[row * 4 + col] = w.probabilities.get(row);
        }
    }
    StochasticMatrix::new(4, data)
}

/// `B = Tr(M·E)` with the fixed sign matrix.
pub fn bell_number(m: &StochasticMatrix) -> Result<f64> {
    if m.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: m.dim(),
            right: 4,
            context: "Bell number",
        });
    }
    let e = chsh_sign_matrix();
    let mut trace = 0.0;
    for k in 0..4 {
        for l in 0..4 {
            trace += m.get(k, l) * e.get(l, k);
        }
    }
    Ok(trace)
}

/// The constant matrix with first three columns
/// `((2+√2)/8, (2-√2)/8, (2-√2)/8, (2+√2)/8)ᵀ` and fourth column with the
/// roles of the two values swapped. It is the setting matrix of the Bell
/// state at CHSH-optimal angles, and `bell_number` of it is exactly `2√2`.
/// Column sums are 1; row sums are `(4 ± √2)/4`, so it is column-stochastic
/// but not bistochastic.
pub fn universal_matrix() -> StochasticMatrix {
    let hi = (2.0 + std::f64::consts::SQRT_2) / 8.0;
    let lo = (2.0 - std::f64::consts::SQRT_2) / 8.0;
    StochasticMatrix::from_rows(&[
        vec![hi, hi, hi, lo],
        vec![lo, lo, lo, hi],
        vec![lo, lo, lo, hi],
        vec![hi, hi, hi, lo],
    ])
    .expect("constant universal matrix is column-stochastic")
}

/// Polar and azimuthal angle of one measurement frame, realized as the
/// unitary `su2(0, θ, φ)`: the frame measuring the spin direction with
/// polar angle θ and azimuth φ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameAngles {
    pub theta: f64,
    pub phi: f64,
}

impl FrameAngles {
    pub fn equatorial(phi: f64) -> Self {
        Self {
            theta: std::f64::consts::FRAC_PI_2,
            phi,
        }
    }

    pub fn unitary(&self) -> UnitaryMatrix {
        su2_from_euler(0.0, self.theta, self.phi)
    }
}

/// One evaluated scan candidate: frame angles in the order `a, b, c, d`.
#[derive(Debug, Clone, Copy)]
pub struct ScanPoint {
    pub frames: [FrameAngles; 4],
    pub bell: f64,
}

impl ScanPoint {
    pub fn setting(&self) -> BellSetting {
        BellSetting::new(
            self.frames[0].unitary(),
            self.frames[1].unitary(),
            self.frames[2].unitary(),
            self.frames[3].unitary(),
        )
        .expect("scan frames are 2x2")
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ScanOptions {
    /// Follow the grid scan with coordinate descent, halving the step down
    /// to 1e-6.
    pub refine: bool,
    /// Scan polar angles too (8 angles instead of 4). The default
    /// equatorial family is enough to reach `2√2` on maximally entangled
    /// states; this costs `grid²` more work.
    pub full_sphere: bool,
}

/// Scan outcome: the best candidate, its setting, and the trace of strict
/// improvements in grid order.
#[derive(Debug, Clone)]
pub struct ScanResult {
    pub best: ScanPoint,
    pub trace: Vec<ScanPoint>,
}

impl ScanResult {
    pub fn setting(&self) -> BellSetting {
        self.best.setting()
    }
}

/// Exhaustive grid scan of the CHSH objective over four measurement frames.
///
/// Each frame ranges over `grid_per_angle` equatorial azimuths (uniform on
/// `[0, 2π)`); with `full_sphere` the polar angles are scanned as well. The
/// evaluation order is lexicographic in the angle indices `(a, b, c, d)` and
/// only strict improvements move the argmax, so ties resolve to the lowest
/// lexicographic index and the result is deterministic.
pub fn chsh_scan(
    rho: &DensityMatrix,
    grid_per_angle: usize,
    options: ScanOptions,
) -> Result<ScanResult> {
    assert!(grid_per_angle >= 2, "need at least two grid points");
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: 4,
            context: "CHSH scan",
        });
    }

    let settings = frame_grid(grid_per_angle, options.full_sphere);
    // Correlation table over (first-qubit frame, second-qubit frame).
    let table = correlation_table(rho, &settings)?;

    let mut result = if options.full_sphere {
        scan_decomposed(&settings, &table)
    } else {
        scan_lexicographic(&settings, &table)
    };

    if options.refine {
        let refined = refine(rho, result.best)?;
        if refined.bell > result.best.bell {
            result.best = refined;
        }
    }
    Ok(result)
}

fn frame_grid(grid: usize, full_sphere: bool) -> Vec<FrameAngles> {
    let mut settings = Vec::new();
    if full_sphere {
        for t in 0..grid {
            let theta = std::f64::consts::PI * t as f64 / (grid - 1) as f64;
            for p in 0..grid {
                let phi = 2.0 * std::f64::consts::PI * p as f64 / grid as f64;
                settings.push(FrameAngles { theta, phi });
            }
        }
    } else {
        for p in 0..grid {
            let phi = 2.0 * std::f64::consts::PI * p as f64 / grid as f64;
            settings.push(FrameAngles::equatorial(phi));
        }
    }
    settings
}

fn correlation_table(rho: &DensityMatrix, settings: &[FrameAngles]) -> Result<Vec<Vec<f64>>> {
    let frames: Vec<UnitaryMatrix> = settings.iter().map(FrameAngles::unitary).collect();
    let mut table = vec![vec![0.0; settings.len()]; settings.len()];
    for (i, first) in frames.iter().enumerate() {
        for (j, second) in frames.iter().enumerate() {
            let w = joint_tomogram(rho, first, second)?.probabilities;
            table[i][j] = w.get(0) - w.get(1) - w.get(2) + w.get(3);
        }
    }
    Ok(table)
}

fn scan_lexicographic(settings: &[FrameAngles], table: &[Vec<f64>]) -> ScanResult {
    let n = settings.len();
    let mut best_bell = f64::NEG_INFINITY;
    let mut best = [0usize; 4];
    let mut trace = Vec::new();
    for a in 0..n {
        let row_a = &table[a];
        for b in 0..n {
            let f_ab = row_a[b];
            for c in 0..n {
                let f_abc = f_ab + row_a[c];
                for d in 0..n {
                    let bell = f_abc + table[d][b] - table[d][c];
                    if bell > best_bell {
                        best_bell = bell;
                        best = [a, b, c, d];
                        trace.push(point(settings, best, bell));
                    }
                }
            }
        }
    }
    ScanResult {
        best: point(settings, best, best_bell),
        trace,
    }
}

/// For the 8-angle mode the inner two maximizations decouple: given frames
/// (a, d), the best b maximizes `F[a][b] + F[d][b]` and the best c maximizes
/// `F[a][c] - F[d][c]`.
fn scan_decomposed(settings: &[FrameAngles], table: &[Vec<f64>]) -> ScanResult {
    let n = settings.len();
    let mut best_bell = f64::NEG_INFINITY;
    let mut best = [0usize; 4];
    let mut trace = Vec::new();
    for a in 0..n {
        for d in 0..n {
            let mut best_b = (f64::NEG_INFINITY, 0usize);
            let mut best_c = (f64::NEG_INFINITY, 0usize);
            for k in 0..n {
                let plus = table[a][k] + table[d][k];
                if plus > best_b.0 {
                    best_b = (plus, k);
                }
                let minus = table[a][k] - table[d][k];
                if minus > best_c.0 {
                    best_c = (minus, k);
                }
            }
            let bell = best_b.0 + best_c.0;
            if bell > best_bell {
                best_bell = bell;
                best = [a, best_b.1, best_c.1, d];
                trace.push(point(settings, best, bell));
            }
        }
    }
    ScanResult {
        best: point(settings, best, best_bell),
        trace,
    }
}

fn point(settings: &[FrameAngles], idx: [usize; 4], bell: f64) -> ScanPoint {
    ScanPoint {
        frames: [
            settings[idx[0]],
            settings[idx[1]],
            settings[idx[2]],
            settings[idx[3]],
        ],
        bell,
    }
}

fn objective(rho: &DensityMatrix, frames: &[FrameAngles; 4]) -> Result<f64> {
    let setting = ScanPoint {
        frames: *frames,
        bell: 0.0,
    }
    .setting();
    bell_number(&setting_matrix(rho, &setting)?)
}

/// Coordinate descent over the frame angles, halving the step until 1e-6.
fn refine(rho: &DensityMatrix, start: ScanPoint) -> Result<ScanPoint> {
    let mut frames = start.frames;
    let mut best = objective(rho, &frames)?;
    let mut step = 0.1;
    while step > 1e-6 {
        let mut improved = false;
        for k in 0..4 {
            for (pick_theta, dir) in [
                (false, 1.0),
                (false, -1.0),
                (true, 1.0),
                (true, -1.0),
            ] {
                let mut candidate = frames;
                if pick_theta {
                    candidate[k].theta += dir * step;
                } else {
                    candidate[k].phi += dir * step;
                }
                let bell = objective(rho, &candidate)?;
                if bell > best {
                    best = bell;
                    frames = candidate;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok(ScanPoint { frames, bell: best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eig::eig_hermitian;
    use crate::rotations::random_unitary;

    const TWO_SQRT_2: f64 = 2.0 * std::f64::consts::SQRT_2;

    #[test]
    fn bell_state_basics() {
        let rho = bell_state();
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-15);
        let eig = eig_hermitian(rho.matrix()).unwrap();
        let want = [1.0, 0.0, 0.0, 0.0];
        for (have, want) in eig.eigenvalues.iter().zip(want) {
            assert!((have - want).abs() < 1e-12);
        }
    }

    #[test]
    fn setting_matrix_on_maximally_mixed() {
        let rho = DensityMatrix::maximally_mixed(4);
        let id = UnitaryMatrix::identity(2);
        let setting = BellSetting::new(id.clone(), id.clone(), id.clone(), id).unwrap();
        let m = setting_matrix(&rho, &setting).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!((m.get(i, j) - 0.25).abs() < 1e-14);
            }
        }
        assert!((bell_number(&m).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn setting_matrix_of_bell_state_in_identity_frames() {
        let id = UnitaryMatrix::identity(2);
        let setting = BellSetting::new(id.clone(), id.clone(), id.clone(), id).unwrap();
        let m = setting_matrix(&bell_state(), &setting).unwrap();
        for col in 0..4 {
            assert!((m.get(0, col) - 0.0).abs() < 1e-14);
            assert!((m.get(1, col) - 0.5).abs() < 1e-14);
            assert!((m.get(2, col) - 0.5).abs() < 1e-14);
            assert!((m.get(3, col) - 0.0).abs() < 1e-14);
        }
    }

    #[test]
    fn bell_state_columns_have_paired_rows() {
        // For the Bell state every column is (x, 1/2-x, 1/2-x, x).
        let setting = BellSetting::new(
            random_unitary(2, 1),
            random_unitary(2, 2),
            random_unitary(2, 3),
            random_unitary(2, 4),
        )
        .unwrap();
        let m = setting_matrix(&bell_state(), &setting).unwrap();
        for col in 0..4 {
            assert!((m.get(0, col) - m.get(3, col)).abs() < 1e-12);
            assert!((m.get(1, col) - m.get(2, col)).abs() < 1e-12);
            assert!((m.get(0, col) + m.get(1, col) - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn bell_number_of_rank_one_columns() {
        // all columns e1: Tr(ME) sums the first column of E, giving 2
        let m = StochasticMatrix::from_rows(&[
            vec![1.0; 4],
            vec![0.0; 4],
            vec![0.0; 4],
            vec![0.0; 4],
        ])
        .unwrap();
        assert!((bell_number(&m).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn universal_matrix_saturates_cirelson() {
        let m = universal_matrix();
        assert!(!m.is_bistochastic());
        for j in 0..4 {
            let sum: f64 = (0..4).map(|i| m.get(i, j)).sum();
            assert!((sum - 1.0).abs() < 1e-15);
        }
        assert!((bell_number(&m).unwrap() - TWO_SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn bell_number_is_linear() {
        let m1 = universal_matrix();
        let m2 = StochasticMatrix::identity(4);
        let lambda = 0.37;
        let mix = m1.convex_combine(&m2, lambda).unwrap();
        let want = lambda * bell_number(&m1).unwrap() + (1.0 - lambda) * bell_number(&m2).unwrap();
        assert!((bell_number(&mix).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn scan_on_maximally_mixed_is_flat_and_deterministic() {
        // the objective is 0 up to rounding noise at every grid point, so
        // only the determinism of the reported argmax is meaningful
        let rho = DensityMatrix::maximally_mixed(4);
        let a = chsh_scan(&rho, 8, ScanOptions::default()).unwrap();
        let b = chsh_scan(&rho, 8, ScanOptions::default()).unwrap();
        assert!(a.best.bell.abs() < 1e-12);
        for (x, y) in a.best.frames.iter().zip(&b.best.frames) {
            assert_eq!(x.phi.to_bits(), y.phi.to_bits());
            assert_eq!(x.theta.to_bits(), y.theta.to_bits());
        }
    }

    #[test]
    fn scan_reaches_cirelson_on_bell_state() {
        let result = chsh_scan(
            &bell_state(),
            16,
            ScanOptions {
                refine: true,
                full_sphere: false,
            },
        )
        .unwrap();
        assert!((result.best.bell - TWO_SQRT_2).abs() < 1e-6);
        // the argmax setting reproduces the universal matrix
        let m = setting_matrix(&bell_state(), &result.setting()).unwrap();
        assert!(m.max_abs_diff(&universal_matrix()) < 1e-6);
    }

    #[test]
    fn scan_respects_classical_bound_on_separable_state() {
        let rho = DensityMatrix::new(ComplexMatrix::diagonal(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        let result = chsh_scan(
            &rho,
            16,
            ScanOptions {
                refine: true,
                full_sphere: false,
            },
        )
        .unwrap();
        assert!(result.best.bell <= 2.0 + 1e-9);
    }

    #[test]
    fn full_sphere_scan_agrees_on_bell_state() {
        let result = chsh_scan(
            &bell_state(),
            8,
            ScanOptions {
                refine: true,
                full_sphere: true,
            },
        )
        .unwrap();
        assert!((result.best.bell - TWO_SQRT_2).abs() < 1e-6);
    }
}
