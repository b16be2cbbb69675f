//! File-based command line for the tomographic-probability toolkit.
//!
//! Inputs and outputs are JSON documents with declared kinds (see
//! [`document`]); every load runs the corresponding validator. Scalars are
//! printed with 15 significant digits. Exit codes: 0 success, 2 validation
//! failure, 3 numerical failure.

mod document;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use qtomo::bell::{
    bell_number, bell_state, chsh_scan, setting_matrix, universal_matrix, BellSetting,
    ScanOptions, ScanPoint, ScanResult,
};
use qtomo::embedding::{embed, extract, frame_for, AffineBlock};
use qtomo::maps::{apply_positive_map, decompose, recompose, PositiveMapSpec};
use qtomo::tomography::{joint_tomogram, orthostochastic_from, reconstruct, tomogram, TomogramSample};
use qtomo::{bistochastic_orbit_contains, random_unitary, UnitaryMatrix};

use document::{BlockDocument, MatrixDocument, PairDocument, SamplesDocument};

/// Error carrying the exit-code class.
#[derive(Debug)]
pub struct CliError {
    message: String,
    numerical: bool,
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            numerical: false,
        }
    }

    fn exit_code(&self) -> u8 {
        if self.numerical {
            3
        } else {
            2
        }
    }
}

impl From<qtomo::Error> for CliError {
    fn from(err: qtomo::Error) -> Self {
        Self {
            numerical: err.is_numerical(),
            message: err.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        Self::validation(err.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        Self::validation(format!("malformed document: {err}"))
    }
}

#[derive(Parser)]
#[command(
    name = "qtomo",
    about = "Spin tomograms, stochastic semigroup limits, positive maps, and Bell-CHSH scans",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutArg {
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Split a density matrix into its eigenframe and spectrum.
    Decompose {
        #[arg(long)]
        state: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Rebuild a density matrix from a spectral pair.
    Recompose {
        #[arg(long)]
        pair: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Measurement distribution of a state in a rotated frame.
    Tomogram {
        #[arg(long)]
        state: PathBuf,
        /// Unitary document, or `random:<dim>` (seeded by QTOMO_SEED).
        #[arg(long)]
        unitary: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Joint distribution of a bipartite state in a product frame.
    JointTomogram {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        unitary_a: String,
        #[arg(long)]
        unitary_b: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Orthostochastic matrix of square moduli of U·U0.
    Ostoch {
        #[arg(long)]
        unitary: String,
        /// The frame U0 multiplied on the right.
        #[arg(long)]
        frame: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Least-squares state reconstruction from tomogram samples.
    Reconstruct {
        /// Samples document: {"dim": d, "samples": [{frame, probabilities}]}.
        #[arg(long = "in")]
        input: PathBuf,
        /// Cross-check against the dimension declared in the document.
        #[arg(long)]
        dim: Option<usize>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Apply the positive map (V, M) to a state or spectral pair.
    Map {
        #[arg(long, conflicts_with = "state", required_unless_present = "state")]
        pair: Option<PathBuf>,
        #[arg(long)]
        state: Option<PathBuf>,
        /// The unitary V acting on the frame.
        #[arg(long)]
        unitary: String,
        /// The stochastic matrix M acting on the spectrum.
        #[arg(long)]
        matrix: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Probability eigenvector of a stochastic matrix at eigenvalue 1.
    Perron {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Cesaro mean (1/N)·sum of the first N powers.
    Cesaro {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Rank-one limit of the matrix powers, if the powers converge.
    PowerLimit {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 100_000)]
        max_k: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Conjugate a stochastic matrix into affine block coordinates.
    Embed {
        #[arg(long)]
        matrix: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Invert the block embedding (output may leave the semigroup).
    Extract {
        #[arg(long)]
        block: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Is w in the convex hull of the permutations of v?
    OrbitCheck {
        #[arg(long)]
        v: PathBuf,
        #[arg(long)]
        w: PathBuf,
    },
    /// The built-in maximally entangled two-qubit state.
    BellState {
        #[command(flatten)]
        out: OutArg,
    },
    /// Four-setting stochastic matrix of joint tomograms.
    SettingMatrix {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        unitary_a: String,
        #[arg(long)]
        unitary_b: String,
        #[arg(long)]
        unitary_c: String,
        #[arg(long)]
        unitary_d: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// CHSH combination B = Tr(M·E) of a 4x4 stochastic matrix.
    BellNumber {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Grid scan of the CHSH objective over measurement angles.
    BellScan {
        /// 4x4 density document (default: the built-in Bell state).
        #[arg(long)]
        state: Option<PathBuf>,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        /// Refine the grid optimum by coordinate descent.
        #[arg(long)]
        refine: bool,
        /// Scan polar angles too (8 angles instead of 4).
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// The universal stochastic matrix that saturates 2*sqrt(2).
    Universal {
        #[command(flatten)]
        out: OutArg,
    },
}

/// Counter handing out consecutive seeds for `random:<dim>` inputs,
/// starting from QTOMO_SEED (default 0).
struct SeedSource {
    next: u64,
}

impl SeedSource {
    fn from_env() -> Result<Self, CliError> {
        let next = match std::env::var("QTOMO_SEED") {
            Ok(value) => value
                .parse::<u64>()
                .map_err(|_| CliError::validation(format!("QTOMO_SEED must be an integer, got \"{value}\"")))?,
            Err(_) => 0,
        };
        Ok(Self { next })
    }

    fn next_seed(&mut self) -> u64 {
        let seed = self.next;
        self.next += 1;
        seed
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::validation(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn load_unitary(spec: &str, seeds: &mut SeedSource) -> Result<UnitaryMatrix, CliError> {
    if let Some(rest) = spec.strip_prefix("random:") {
        let dim: usize = rest
            .parse()
            .map_err(|_| CliError::validation(format!("bad random unitary spec \"{spec}\"")))?;
        if dim == 0 {
            return Err(CliError::validation("random unitary dimension must be positive"));
        }
        return Ok(random_unitary(dim, seeds.next_seed()));
    }
    read_json::<MatrixDocument>(Path::new(spec))?.into_unitary()
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn write_json_doc<T: Serialize>(out: &Option<PathBuf>, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_output(out, &text)
}

/// 15 significant digits.
fn sig(x: f64) -> String {
    format!("{:.14e}", x)
}

fn scan_csv(result: &ScanResult, full: bool) -> String {
    let mut csv = String::new();
    if full {
        csv.push_str("theta_a,phi_a,theta_b,phi_b,theta_c,phi_c,theta_d,phi_d,B\n");
    } else {
        csv.push_str("phi_a,phi_b,phi_c,phi_d,B\n");
    }
    let mut push_point = |point: &ScanPoint| {
        let mut fields = Vec::new();
        for frame in &point.frames {
            if full {
                fields.push(sig(frame.theta));
            }
            fields.push(sig(frame.phi));
        }
        fields.push(sig(point.bell));
        csv.push_str(&fields.join(","));
        csv.push('\n');
    };
    for point in &result.trace {
        push_point(point);
    }
    let best = &result.best;
    let names = ["a", "b", "c", "d"];
    let mut summary = format!("# summary: B = {}", sig(best.bell));
    for (name, frame) in names.iter().zip(&best.frames) {
        if full {
            summary.push_str(&format!(" theta_{name}={}", sig(frame.theta)));
        }
        summary.push_str(&format!(" phi_{name}={}", sig(frame.phi)));
    }
    summary.push('\n');
    csv.push_str(&summary);
    csv
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut seeds = SeedSource::from_env()?;
    match cli.command {
        Command::Decompose { state, out } => {
            let rho = read_json::<MatrixDocument>(&state)?.into_density()?;
            let pair = decompose(&rho)?;
            write_json_doc(&out.out, &PairDocument::from_pair(&pair))
        }
        Command::Recompose { pair, out } => {
            let pair = read_json::<PairDocument>(&pair)?.into_pair()?;
            let rho = recompose(&pair)?;
            write_json_doc(&out.out, &MatrixDocument::from_density(&rho))
        }
        Command::Tomogram { state, unitary, out } => {
            let rho = read_json::<MatrixDocument>(&state)?.into_density()?;
            let u = load_unitary(&unitary, &mut seeds)?;
            let t = tomogram(&rho, &u)?;
            write_json_doc(&out.out, &MatrixDocument::from_probability(&t.probabilities))
        }
        Command::JointTomogram {
            state,
            unitary_a,
            unitary_b,
            out,
        } => {
            let rho = read_json::<MatrixDocument>(&state)?.into_density()?;
            let u_h = load_unitary(&unitary_a, &mut seeds)?;
            let u_k = load_unitary(&unitary_b, &mut seeds)?;
            let t = joint_tomogram(&rho, &u_h, &u_k)?;
            write_json_doc(&out.out, &MatrixDocument::from_probability(&t.probabilities))
        }
        Command::Ostoch { unitary, frame, out } => {
            let u = load_unitary(&unitary, &mut seeds)?;
            let u0 = load_unitary(&frame, &mut seeds)?;
            let m = orthostochastic_from(&u, &u0)?;
            write_json_doc(&out.out, &MatrixDocument::from_stochastic(&m))
        }
        Command::Reconstruct { input, dim, out } => {
            let doc: SamplesDocument = read_json(&input)?;
            if let Some(dim) = dim {
                if dim != doc.dim {
                    return Err(CliError::validation(format!(
                        "--dim {dim} does not match the document dimension {}",
                        doc.dim
                    )));
                }
            }
            let mut samples = Vec::with_capacity(doc.samples.len());
            for record in doc.samples {
                samples.push(TomogramSample {
                    frame: record.frame.into_unitary()?,
                    probabilities: record.probabilities.into_probability()?,
                });
            }
            let rec = reconstruct(&samples, doc.dim)?;
            eprintln!("projection_distance = {}", sig(rec.projection_distance));
            write_json_doc(&out.out, &MatrixDocument::from_density(&rec.state))
        }
        Command::Map {
            pair,
            state,
            unitary,
            matrix,
            out,
        } => {
            let pair = match (pair, state) {
                (Some(path), None) => read_json::<PairDocument>(&path)?.into_pair()?,
                (None, Some(path)) => {
                    decompose(&read_json::<MatrixDocument>(&path)?.into_density()?)?
                }
                _ => unreachable!("clap enforces exactly one of --pair/--state"),
            };
            let v = load_unitary(&unitary, &mut seeds)?;
            let m = read_json::<MatrixDocument>(&matrix)?.into_stochastic()?;
            let spec = PositiveMapSpec::new(v, m)?;
            let image = apply_positive_map(&pair, &spec)?;
            write_json_doc(&out.out, &MatrixDocument::from_density(&image))
        }
        Command::Perron { matrix, tol, out } => {
            let m = read_json::<MatrixDocument>(&matrix)?.into_stochastic()?;
            let p = m.perron_vector(tol)?;
            write_json_doc(&out.out, &MatrixDocument::from_probability(&p))
        }
        Command::Cesaro { matrix, n, out } => {
            if n == 0 {
                return Err(CliError::validation("--n must be at least 1"));
            }
            let m = read_json::<MatrixDocument>(&matrix)?.into_stochastic()?;
            let limit = m.cesaro_limit(n);
            write_json_doc(&out.out, &MatrixDocument::from_real(&limit))
        }
        Command::PowerLimit {
            matrix,
            tol,
            max_k,
            out,
        } => {
            let m = read_json::<MatrixDocument>(&matrix)?.into_stochastic()?;
            let limit = m.power_limit(tol, max_k)?;
            eprintln!("steps = {}", limit.steps);
            write_json_doc(&out.out, &MatrixDocument::from_stochastic(&limit.limit))
        }
        Command::Embed { matrix, out } => {
            let m = read_json::<MatrixDocument>(&matrix)?.into_stochastic()?;
            let frame = frame_for(m.dim());
            let block = embed(&m, &frame)?;
            let doc = BlockDocument {
                linear: MatrixDocument::from_real(&block.linear),
                translation: block.translation.clone(),
            };
            write_json_doc(&out.out, &doc)
        }
        Command::Extract { block, out } => {
            let doc: BlockDocument = read_json(&block)?;
            let linear = doc.linear.into_real()?;
            if linear.rows() != linear.cols() || linear.rows() != doc.translation.len() {
                return Err(CliError::validation(
                    "block linear part must be square and match the translation length",
                ));
            }
            let n = linear.rows() + 1;
            let frame = frame_for(n);
            let m = extract(&AffineBlock::new(linear, doc.translation), &frame);
            write_json_doc(&out.out, &MatrixDocument::from_real(&m))
        }
        Command::OrbitCheck { v, w } => {
            let v = read_json::<MatrixDocument>(&v)?.into_probability()?;
            let w = read_json::<MatrixDocument>(&w)?.into_probability()?;
            let inside = bistochastic_orbit_contains(&v, &w)?;
            println!("{inside}");
            Ok(())
        }
        Command::BellState { out } => {
            write_json_doc(&out.out, &MatrixDocument::from_density(&bell_state()))
        }
        Command::SettingMatrix {
            state,
            unitary_a,
            unitary_b,
            unitary_c,
            unitary_d,
            out,
        } => {
            let rho = read_json::<MatrixDocument>(&state)?.into_density()?;
            let setting = BellSetting::new(
                load_unitary(&unitary_a, &mut seeds)?,
                load_unitary(&unitary_b, &mut seeds)?,
                load_unitary(&unitary_c, &mut seeds)?,
                load_unitary(&unitary_d, &mut seeds)?,
            )?;
            let m = setting_matrix(&rho, &setting)?;
            write_json_doc(&out.out, &MatrixDocument::from_stochastic(&m))
        }
        Command::BellNumber { matrix } => {
            let m = read_json::<MatrixDocument>(&matrix)?.into_stochastic()?;
            println!("{}", sig(bell_number(&m)?));
            Ok(())
        }
        Command::BellScan {
            state,
            grid,
            refine,
            full,
            out,
        } => {
            if grid < 2 {
                return Err(CliError::validation("--grid must be at least 2"));
            }
            let rho = match state {
                Some(path) => read_json::<MatrixDocument>(&path)?.into_density()?,
                None => bell_state(),
            };
            let result = chsh_scan(
                &rho,
                grid,
                ScanOptions {
                    refine,
                    full_sphere: full,
                },
            )?;
            write_output(&out.out, &scan_csv(&result, full))
        }
        Command::Universal { out } => {
            write_json_doc(&out.out, &MatrixDocument::from_stochastic(&universal_matrix()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.exit_code())
        }
    }
}
