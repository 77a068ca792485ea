//! Command-line surface: `analyze`, `gen`, `oracle`.
//!
//! Exit codes: 0 nonsingular, 3 singular, 4 not diagonally dominant,
//! 1 usage or input error.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::Result;
use crate::io::{parse_matrix, parse_matrix_exact, parse_weights, MatrixFormat, Report, SCHEMA};
use crate::matrix::{Complex, ComplexMatrix, Tolerances};
use crate::oracle::{
    gen_fixture, gen_perturbed_instance, gen_reducible_instance, gen_singular_instance, gen_strict_instance,
    rank_det_oracle, rng_from_seed, FixtureKind, DEFAULT_PIVOT_TOL,
};
use crate::verdict::{analyze, analyze_exact, MatrixVerdict};

pub const EXIT_NONSINGULAR: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_SINGULAR: i32 = 3;
pub const EXIT_NOT_DOMINANT: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "ddsing",
    version,
    about = "Certified singularity test for diagonally dominant matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportArg {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Planted,
    Perturbed,
    Strict,
    Reducible,
    Laplacian,
    Kolmogorov,
    MarkovM,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide singularity of a matrix and emit a report.
    Analyze {
        /// Matrix file, or `-` for standard input.
        #[arg(long)]
        input: PathBuf,
        /// Input format; guessed from the extension when omitted.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Positive column weights for generalized dominance.
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long, default_value_t = Tolerances::default().tol_dom)]
        tol_dominance: f64,
        #[arg(long, default_value_t = Tolerances::default().tol_angle)]
        tol_angle: f64,
        #[arg(long, default_value_t = Tolerances::default().tol_res)]
        tol_residual: f64,
        /// Exact rational arithmetic (real matrices only).
        #[arg(long)]
        exact: bool,
        /// Include certificates in the report.
        #[arg(long)]
        certificate: bool,
        #[arg(long, value_enum, default_value = "json")]
        report: ReportArg,
    },
    /// Emit a generated matrix as JSON, with a sidecar describing it.
    Gen {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Phase perturbation for `perturbed`.
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        /// Also write the sidecar to this file.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Rank, determinant and null space by plain elimination.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long, default_value_t = DEFAULT_PIVOT_TOL)]
        pivot_tol: f64,
    },
}

fn read_input(path: &Path) -> Result<Vec<u8>> {
    if path == Path::new("-") {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read(path)?)
    }
}

fn resolve_format(arg: Option<FormatArg>, path: &Path) -> MatrixFormat {
    match arg {
        Some(FormatArg::Json) => MatrixFormat::Json,
        Some(FormatArg::Csv) => MatrixFormat::Csv,
        None => MatrixFormat::from_path(path),
    }
}

/// Maps a verdict to the process exit code.
pub fn exit_code(v: &MatrixVerdict) -> i32 {
    if !v.applicable {
        EXIT_NOT_DOMINANT
    } else if v.singular {
        EXIT_SINGULAR
    } else {
        EXIT_NONSINGULAR
    }
}

fn pairs(v: &[Complex]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

/// Runs the CLI with explicit argument and output streams; returns the exit code.
pub fn run_cli<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_ERROR
                }
            };
            return code;
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn execute(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Analyze {
            input,
            format,
            weights,
            tol_dominance,
            tol_angle,
            tol_residual,
            exact,
            certificate,
            report,
        } => {
            let tol = Tolerances::new(tol_dominance, tol_angle, tol_residual)?;
            let bytes = read_input(&input)?;
            let format = resolve_format(format, &input);
            let weights = match weights {
                Some(p) => Some(parse_weights(&std::fs::read(p)?)?),
                None => None,
            };
            let mut verdict = if exact {
                analyze_exact(&parse_matrix_exact(&bytes, format)?, &tol, weights.as_deref())?
            } else {
                analyze(&parse_matrix(&bytes, format)?, &tol, weights.as_deref())?
            };
            for e in &verdict.certificate_errors {
                writeln!(stderr, "warning: {e}")?;
            }
            if !certificate {
                verdict.certificates.clear();
                verdict.certificate_errors.clear();
                for b in &mut verdict.blocks {
                    if let crate::verdict::BlockDecision::Singular { certificate, .. } = &mut b.verdict {
                        *certificate = None;
                    }
                }
            }
            let code = exit_code(&verdict);
            let doc = Report::new(verdict);
            match report {
                ReportArg::Json => writeln!(stdout, "{}", doc.to_json()?)?,
                ReportArg::Text => write!(stdout, "{}", doc.to_text())?,
            }
            Ok(code)
        }
        Command::Gen {
            kind,
            n,
            density,
            seed,
            delta,
            sidecar,
        } => {
            let (matrix, gamma): (ComplexMatrix, Option<Vec<Complex>>) = match kind {
                KindArg::Planted => {
                    let p = gen_singular_instance(n, density, seed)?;
                    (p.a, Some(p.gamma))
                }
                KindArg::Perturbed => {
                    let p = gen_singular_instance(n, density, seed)?;
                    (gen_perturbed_instance(&p, delta)?, None)
                }
                KindArg::Strict => (gen_strict_instance(n, density, &mut rng_from_seed(seed))?, None),
                KindArg::Reducible => (gen_reducible_instance(n.max(2), &mut rng_from_seed(seed))?.a, None),
                KindArg::Laplacian | KindArg::Kolmogorov | KindArg::MarkovM => {
                    let fk = match kind {
                        KindArg::Laplacian => FixtureKind::Laplacian,
                        KindArg::Kolmogorov => FixtureKind::Kolmogorov,
                        _ => FixtureKind::MarkovM,
                    };
                    let a = gen_fixture(fk, n, seed)?;
                    // row balance makes the all-ones vector a null vector
                    let ones = vec![Complex::new(1.0, 0.0); a.n()];
                    (a, Some(ones))
                }
            };
            let side = json!({
                "schema": SCHEMA,
                "kind": format!("{kind:?}").to_lowercase(),
                "n": matrix.n(),
                "density": density,
                "seed": seed,
                "planted_gamma": gamma.as_deref().map(pairs),
            });
            let mut doc = serde_json::to_value(&matrix)?;
            doc["schema"] = json!(SCHEMA);
            doc["sidecar"] = side.clone();
            if let Some(path) = sidecar {
                std::fs::write(path, serde_json::to_string_pretty(&side)?)?;
            }
            writeln!(stdout, "{}", serde_json::to_string(&doc)?)?;
            Ok(0)
        }
        Command::Oracle {
            input,
            format,
            pivot_tol,
        } => {
            let a = parse_matrix(&read_input(&input)?, resolve_format(format, &input))?;
            let r = rank_det_oracle(&a, pivot_tol)?;
            let doc = json!({
                "schema": SCHEMA,
                "n": a.n(),
                "rank": r.rank,
                "singular": r.is_singular(a.n()),
                "det": [r.det.re, r.det.im],
                "null_basis": r.null_basis.iter().map(|v| pairs(v)).collect::<Vec<_>>(),
                "pivot_tol": pivot_tol,
            });
            writeln!(stdout, "{}", serde_json::to_string_pretty(&doc)?)?;
            Ok(0)
        }
    }
}
