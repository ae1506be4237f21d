//! Command-line front end. [`run`] does all the work so tests can drive it
//! without spawning a process.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bounds::{bound_report_with_tol, BoundOptions, SemiNormKind};
use crate::cassini::refined_obr_region_with_tol;
use crate::discs::{classic_discs, second_type_discs_of_transpose, Axis};
use crate::error::Error;
use crate::geometry::Region;
use crate::matrix::{check_eigenpair, parse_matrix, Eigenpair, Problem, RealMatrix, DEFAULT_TOL};
use crate::oracle::{eigenvalues_with_seed, DEFAULT_SEED};
use crate::refine::{refine, shifted_pair_region, Refined};
use crate::render::{render_svg, Scene, BLUE, GRAY, TURQUOISE};
use crate::similarity::{to_row_sum_form, RowSumForm};

/// Environment variable holding the oracle's retry seed.
pub const SEED_VAR: &str = "EIGENFENCE_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "eigenfence",
    version,
    about = "Eigenvalue inclusion regions and bounds from a known real eigenpair"
)]
struct Cli {
    /// Residual tolerance for the eigenpair check.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Second-type region of the constant row-sum form.
    Locate {
        problem: PathBuf,
        /// Also emit the classic row and column discs of the input.
        #[arg(long)]
        classic: bool,
    },
    /// Column-shifted matrices and the refined region.
    Refine { problem: PathBuf },
    /// Upper bounds on the other eigenvalues.
    Bound {
        problem: PathBuf,
        /// Powers to evaluate (repeat or comma-separate).
        #[arg(long = "k", value_delimiter = ',', default_values_t = [1u32, 2, 3])]
        k: Vec<u32>,
        /// Semi-norm: 1 or inf (both when omitted).
        #[arg(long)]
        norm: Option<String>,
        /// Include determinant bounds.
        #[arg(long)]
        det: bool,
    },
    /// Cassini-oval region of the refined matrices.
    Obr { problem: PathBuf },
    /// SVG figure of selected regions.
    Render {
        problem: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_values_t = vec![LayerKind::Classic, LayerKind::Second])]
        layers: Vec<LayerKind>,
        /// Overlay the oracle eigenvalues.
        #[arg(long)]
        eigs: bool,
        #[arg(long, default_value_t = crate::render::DEFAULT_RESOLUTION)]
        resolution: usize,
        #[arg(long, default_value_t = crate::render::DEFAULT_SIZE_PX)]
        size: u32,
    },
    /// Oracle eigenvalues, modulus descending.
    Eig { matrix: PathBuf },
    /// Residual of the problem's eigenpair.
    Validate { problem: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LayerKind {
    Classic,
    Second,
    Refined,
    Obr,
}

impl std::fmt::Display for LayerKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

enum Failure {
    Input(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Math(e.to_string())
        }
    }
}

type CmdResult = std::result::Result<String, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> std::result::Result<Problem, Failure> {
    Ok(Problem::from_json(&read(path)?)?)
}

fn with_pair(path: &Path) -> std::result::Result<(RealMatrix, Eigenpair), Failure> {
    let p = load(path)?;
    let pair = p.eigenpair.ok_or(Error::MissingEigenpair)?;
    Ok((p.matrix, pair))
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn seed() -> u64 {
    std::env::var(SEED_VAR).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

/// Parses `args` (program name first) and runs one command.
/// Returns the exit code: 0 success, 1 mathematical failure, 2 bad input.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let mut notices = Vec::new();
    match dispatch(&cli, &mut notices) {
        Ok(text) => {
            for n in notices {
                let _ = writeln!(err, "{n}");
            }
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Math(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn row_sum_form(
    a: &RealMatrix,
    p: &Eigenpair,
    tol: f64,
    notices: &mut Vec<String>,
) -> std::result::Result<RowSumForm, Failure> {
    let form = to_row_sum_form(a, p, tol)?;
    if let Some(d) = &form.desingularization {
        let perm: Vec<String> = d.perm.iter().map(|i| (i + 1).to_string()).collect();
        notices.push(format!(
            "note: eigenvector has {} zero component(s); desingularized with ordering [{}]",
            d.k,
            perm.join(", ")
        ));
    }
    Ok(form)
}

fn dispatch(cli: &Cli, notices: &mut Vec<String>) -> CmdResult {
    let tol = cli.tol;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Failure::Input(format!("--tol must be positive, got {tol}")));
    }
    match &cli.command {
        Command::Locate { problem, classic } => {
            let (a, p) = with_pair(problem)?;
            let form = row_sum_form(&a, &p, tol, notices)?;
            let b = &form.similarity.b;
            let region = Region::DiscUnion(second_type_discs_of_transpose(b)?);
            let mut doc = json!({
                "row_sum": form.similarity.row_sum,
                "b": b,
                "region": region,
            });
            if *classic {
                doc["classic"] = json!({
                    "rows": Region::DiscUnion(classic_discs(&a, Axis::Rows)),
                    "columns": Region::DiscUnion(classic_discs(&a, Axis::Columns)),
                });
            }
            Ok(pretty(&doc))
        }
        Command::Refine { problem } => {
            let (a, p) = with_pair(problem)?;
            let form = row_sum_form(&a, &p, tol, notices)?;
            let b = &form.similarity.b;
            let refined = refine(b)?;
            let region = refined.region()?;
            let doc: Value = match &refined {
                Refined::Even(r) => json!({
                    "b": b,
                    "f": r.f,
                    "betas": r.betas,
                    "region": region,
                }),
                Refined::Odd(r) => json!({
                    "b": b,
                    "f": r.f,
                    "g": r.g,
                    "betas": r.betas,
                    "gammas": r.gammas,
                    "region": region,
                    "shifted_pair_region": shifted_pair_region(b)?,
                }),
            };
            Ok(pretty(&doc))
        }
        Command::Bound { problem, k, norm, det } => {
            let (a, p) = with_pair(problem)?;
            row_sum_form(&a, &p, tol, notices)?;
            let norms = match norm.as_deref() {
                None => vec![SemiNormKind::L1, SemiNormKind::LInf],
                Some(s) => vec![s.parse::<SemiNormKind>().map_err(|e| Failure::Input(e.to_string()))?],
            };
            if k.contains(&0) {
                return Err(Failure::Input("--k values must be at least 1".into()));
            }
            let opts = BoundOptions { powers: k.clone(), norms, det: *det };
            Ok(pretty(&bound_report_with_tol(&a, &p, &opts, tol)?))
        }
        Command::Obr { problem } => {
            let (a, p) = with_pair(problem)?;
            row_sum_form(&a, &p, tol, notices)?;
            Ok(pretty(&refined_obr_region_with_tol(&a, &p, tol)?))
        }
        Command::Render { problem, out, layers, eigs, resolution, size } => {
            let pr = load(problem)?;
            let a = &pr.matrix;
            let needs_pair = layers.iter().any(|l| *l != LayerKind::Classic);
            let form = match (&pr.eigenpair, needs_pair) {
                (Some(p), true) => Some(row_sum_form(a, p, tol, notices)?),
                (None, true) => return Err(Error::MissingEigenpair.into()),
                _ => None,
            };
            let mut scene = Scene::new().resolution(*resolution).size_px(*size);
            for layer in layers {
                let b = form.as_ref().map(|f| &f.similarity.b);
                scene = match layer {
                    LayerKind::Classic => {
                        scene.layer(Region::DiscUnion(classic_discs(a, Axis::Columns)), GRAY, 1.0)
                    }
                    LayerKind::Second => scene.layer(
                        Region::DiscUnion(second_type_discs_of_transpose(b.expect("pair checked"))?),
                        BLUE,
                        0.85,
                    ),
                    LayerKind::Refined => {
                        scene.layer(refine(b.expect("pair checked"))?.region()?, TURQUOISE, 0.85)
                    }
                    LayerKind::Obr => {
                        let p = pr.eigenpair.as_ref().expect("pair checked");
                        scene.layer(refined_obr_region_with_tol(a, p, tol)?, TURQUOISE, 0.85)
                    }
                };
            }
            if *eigs {
                scene = scene.points(eigenvalues_with_seed(a, seed())?.sorted());
            }
            let svg = render_svg(&scene)?;
            match out {
                Some(path) => {
                    std::fs::write(path, svg)
                        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(svg),
            }
        }
        Command::Eig { matrix } => {
            let a = parse_matrix(&read(matrix)?)?;
            let s = eigenvalues_with_seed(&a, seed())?;
            Ok(s.sorted().iter().map(|z| format!("{z}\n")).collect())
        }
        Command::Validate { problem } => {
            let (a, p) = with_pair(problem)?;
            let residual = check_eigenpair(&a, &p, tol)?;
            if residual > tol {
                return Err(Error::InvalidEigenpair { residual, tol }.into());
            }
            Ok(format!("ok: residual {residual:e} <= {tol:e}\n"))
        }
    }
}

/// Convenience for the binary: runs with the process arguments and streams.
pub fn main_with_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
