//! Command-line verbs.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ncgasket::algebra::{extend_to, Chain, HARMONIC_T};
use ncgasket::classical::{edges, vertex_records};
use ncgasket::energy::element_energy;
use ncgasket::random::{random_classical, random_element, random_hermitian};
use ncgasket::spectral::{
    approximation_defects, energy_zeta, lip_norm, residue_estimate, zeta_trace, ResidueEstimate,
    WeightPath, ZetaProfile,
};
use ncgasket::{GasketElement, GasketError};
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::io::{element_to_string, read_element, write_text, IoError};
use crate::report::VerificationReport;
use crate::suites::{find_suite, seeded_rng, SuiteConfig, DEFAULT_SEED, SUITES};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Algebra(#[from] GasketError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Parser)]
#[command(
    name = "ncgasket",
    version,
    about = "Finite-level computations on the noncommutative Sierpinski gasket"
)]
pub struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, env = "NCGASKET_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct an element.
    Gen(GenArgs),
    /// Apply an algebra operation to element files.
    Op(OpArgs),
    /// Dirichlet energy report of an element.
    Energy(EnergyArgs),
    /// Symmetric extension to a higher level.
    Extend(ExtendArgs),
    /// Restriction to a lower level.
    Restrict(RestrictArgs),
    /// Trace or energy zeta profile as CSV.
    Zeta(ZetaArgs),
    /// Lipschitz seminorm and approximation defects.
    Lip(LipArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Export classical vertices or edges as CSV.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RandomKind {
    General,
    Hermitian,
    Classical,
}

#[derive(Debug, Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct GenSource {
    /// α^n_j: LEVEL J.
    #[arg(long, num_args = 2, value_names = ["LEVEL", "J"])]
    alpha: Option<Vec<usize>>,
    #[arg(long, value_name = "LEVEL")]
    identity: Option<usize>,
    #[arg(long, value_name = "LEVEL")]
    zero: Option<usize>,
    #[arg(long, value_name = "LEVEL")]
    random: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    source: GenSource,
    /// Distribution for --random (default general).
    #[arg(long, value_enum)]
    kind: Option<RandomKind>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Commutator,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum UnaryOp {
    Adjoint,
    Coembed,
    CondExpectation,
}

#[derive(Debug, Args)]
#[group(id = "operation", required = true, multiple = false)]
pub struct OpKind {
    #[arg(long, value_enum)]
    binary: Option<BinaryOp>,
    #[arg(long, value_enum)]
    unary: Option<UnaryOp>,
}

#[derive(Debug, Args)]
pub struct OpArgs {
    #[command(flatten)]
    kind: OpKind,
    left: PathBuf,
    right: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EnergyArgs {
    #[arg(long)]
    element: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq)]
pub enum ExtendMode {
    Harmonic,
    Affine,
    None,
}

#[derive(Debug, Args)]
pub struct ExtendArgs {
    #[arg(long)]
    element: PathBuf,
    /// Extension parameter t in [0.5, 1).
    #[arg(long, default_value_t = HARMONIC_T)]
    t: f64,
    /// Number of levels to add.
    #[arg(long, default_value_t = 1)]
    levels: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RestrictArgs {
    #[arg(long)]
    element: PathBuf,
    /// Target level; defaults to one below the element.
    #[arg(long)]
    to: Option<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq)]
pub enum ZetaMode {
    Trace,
    Energy,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    #[arg(long)]
    element: PathBuf,
    #[arg(long, value_enum, default_value = "trace")]
    mode: ZetaMode,
    #[arg(long, value_enum, default_value = "harmonic")]
    extend: ExtendMode,
    /// LO:HI:STEP.
    #[arg(long, value_parser = parse_grid)]
    s_grid: Grid,
    /// Number of explicit levels above the element.
    #[arg(long, default_value_t = 4)]
    levels: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also write the residue estimate as JSON here.
    #[arg(long)]
    residue: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LipArgs {
    #[arg(long)]
    element: PathBuf,
    #[arg(long, value_enum, default_value = "affine")]
    extend: ExtendMode,
    #[arg(long, default_value_t = 2)]
    levels: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name, or "all".
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long)]
    levels: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ExportWhat {
    Vertices,
    Edges,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long, value_enum, default_value = "vertices")]
    what: ExportWhat,
    #[arg(long)]
    level: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

/// Parses `LO:HI:STEP` (inclusive of HI up to rounding) or a single value.
pub fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<f64> = s
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [x] if x.is_finite() => Ok(Grid(vec![x])),
        [lo, hi, step] if lo.is_finite() && hi.is_finite() && step > 0.0 && hi >= lo => {
            let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
            if count > 100_000 {
                return Err(format!("grid of {count} points is too large"));
            }
            Ok(Grid((0..count).map(|i| lo + i as f64 * step).collect()))
        }
        _ => Err(format!(
            "expected LO:HI:STEP with STEP > 0 and HI ≥ LO, got {s:?}"
        )),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn chain_for(a: &GasketElement, mode: ExtendMode, levels: usize) -> Result<Chain, CliError> {
    let top = a.level() + levels;
    Ok(match mode {
        ExtendMode::Harmonic => Chain::harmonic(a, top)?,
        ExtendMode::Affine => Chain::affine(a, top)?,
        ExtendMode::None => {
            if levels > 0 {
                return Err(usage("--extend none takes --levels 0"));
            }
            Chain::restrictions(a)
        }
    })
}

/// Outcome of a successful run.
#[derive(Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    let seed = cli.seed;
    match cli.command {
        Command::Gen(args) => {
            let s = args.source;
            if args.kind.is_some() && s.random.is_none() {
                return Err(usage("--kind applies to --random only"));
            }
            let e = if let Some(v) = s.alpha {
                GasketElement::alpha(v[0], v[1])?
            } else if let Some(n) = s.identity {
                GasketElement::identity(n)
            } else if let Some(n) = s.zero {
                GasketElement::zero(n)
            } else if let Some(n) = s.random {
                if n > crate::io::MAX_FILE_LEVEL {
                    return Err(usage(format!(
                        "random level {n} exceeds {}",
                        crate::io::MAX_FILE_LEVEL
                    )));
                }
                let mut rng = seeded_rng(seed);
                match args.kind.unwrap_or(RandomKind::General) {
                    RandomKind::General => random_element(n, &mut rng),
                    RandomKind::Hermitian => random_hermitian(n, &mut rng),
                    RandomKind::Classical => random_classical(n, &mut rng),
                }
            } else {
                unreachable!("clap requires one source")
            };
            write_text(args.output.as_deref(), &element_to_string(&e))?;
        }
        Command::Op(args) => {
            let a = read_element(&args.left)?;
            let e = match (args.kind.binary, args.kind.unary, &args.right) {
                (Some(op), None, Some(r)) => {
                    let b = read_element(r)?;
                    match op {
                        BinaryOp::Add => a.add(&b)?,
                        BinaryOp::Sub => a.sub(&b)?,
                        BinaryOp::Mul => a.mul(&b)?,
                        BinaryOp::Commutator => a.mul(&b)?.sub(&b.mul(&a)?)?,
                    }
                }
                (None, Some(op), None) => match op {
                    UnaryOp::Adjoint => a.adjoint(),
                    UnaryOp::Coembed => a.coembed(),
                    UnaryOp::CondExpectation => a.cond_expectation(),
                },
                (Some(_), None, None) => {
                    return Err(usage("binary operations take two element files"))
                }
                _ => return Err(usage("unary operations take one element file")),
            };
            write_text(args.output.as_deref(), &element_to_string(&e))?;
        }
        Command::Energy(args) => {
            let a = read_element(&args.element)?;
            let r = element_energy(&a);
            #[derive(Serialize)]
            struct Out {
                level: usize,
                energy: f64,
                renormalized: f64,
                per_pair: [f64; 3],
                osc: f64,
            }
            let out = Out {
                level: r.level,
                energy: r.energy,
                renormalized: r.renormalized,
                per_pair: r.per_pair,
                osc: a.osc()?,
            };
            write_text(args.output.as_deref(), &to_json(&out))?;
        }
        Command::Extend(args) => {
            let a = read_element(&args.element)?;
            let top = a.level() + args.levels;
            if top > crate::io::MAX_FILE_LEVEL {
                return Err(usage(format!(
                    "target level {top} exceeds {}",
                    crate::io::MAX_FILE_LEVEL
                )));
            }
            let e = extend_to(&a, args.t, top)?;
            write_text(args.output.as_deref(), &element_to_string(&e))?;
        }
        Command::Restrict(args) => {
            let a = read_element(&args.element)?;
            let to = match args.to {
                Some(m) => m,
                None => a
                    .level()
                    .checked_sub(1)
                    .ok_or_else(|| usage("level-0 elements have no restriction"))?,
            };
            write_text(
                args.output.as_deref(),
                &element_to_string(&a.restrict_to(to)?),
            )?;
        }
        Command::Zeta(args) => {
            let a = read_element(&args.element)?;
            let chain = chain_for(&a, args.extend, args.levels)?;
            let grid = args.s_grid.0;
            let profile = match args.mode {
                ZetaMode::Trace => zeta_trace(&chain, grid, chain.top())?,
                ZetaMode::Energy => energy_zeta(&chain, grid, chain.top(), WeightPath::Formula)?,
            };
            write_text(args.output.as_deref(), &zeta_csv(&profile)?)?;
            if let Some(path) = args.residue {
                write_text(
                    Some(&path),
                    &to_json(&ResidueRecord::from(residue_estimate(&profile)?)),
                )?;
            }
        }
        Command::Lip(args) => {
            let a = read_element(&args.element)?;
            let chain = chain_for(&a, args.extend, args.levels)?;
            let l = lip_norm(&chain, chain.top())?;
            #[derive(Serialize)]
            struct Defect {
                level: usize,
                defect: f64,
                bound: f64,
                exact: bool,
            }
            #[derive(Serialize)]
            struct Out {
                value: f64,
                attained_at: usize,
                stationary: bool,
                defects: Vec<Defect>,
            }
            let defects = approximation_defects(&chain, l.value)?
                .into_iter()
                .map(|d| Defect {
                    level: d.level,
                    defect: d.defect,
                    bound: d.bound,
                    exact: d.exact,
                })
                .collect();
            let out = Out {
                value: l.value,
                attained_at: l.attained_at,
                stationary: l.stationary,
                defects,
            };
            write_text(args.output.as_deref(), &to_json(&out))?;
        }
        Command::Verify(args) => {
            let cfg = SuiteConfig {
                seed,
                levels: args.levels,
                samples: args.samples,
            };
            let selected: Vec<_> = if args.suite == "all" {
                SUITES.iter().collect()
            } else {
                let names: Vec<&str> = args.suite.split(',').collect();
                names
                    .iter()
                    .map(|n| {
                        find_suite(n).ok_or_else(|| {
                            usage(format!("unknown suite {n:?}; known: {}", suite_names()))
                        })
                    })
                    .collect::<Result<_, _>>()?
            };
            let mut reports: Vec<VerificationReport> = Vec::with_capacity(selected.len());
            for suite in selected {
                let r = suite.run(&cfg).map_err(CliError::Usage)?;
                eprintln!("{}", r.summary_line());
                reports.push(r);
            }
            let ok = reports.iter().all(VerificationReport::passed);
            let text = if reports.len() == 1 {
                to_json(&reports[0])
            } else {
                to_json(&reports)
            };
            write_text(args.output.as_deref(), &text)?;
            if !ok {
                return Ok(Outcome::VerificationFailed);
            }
        }
        Command::Export(args) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            match args.what {
                ExportWhat::Vertices => {
                    w.write_record(["label", "x", "y", "age"])?;
                    for r in vertex_records(args.level)? {
                        w.write_record([
                            r.label,
                            r.x.to_string(),
                            r.y.to_string(),
                            r.age.to_string(),
                        ])?;
                    }
                }
                ExportWhat::Edges => {
                    w.write_record(["from", "to"])?;
                    for (a, b) in edges(args.level) {
                        w.write_record([a.to_string(), b.to_string()])?;
                    }
                }
            }
            write_text(args.output.as_deref(), &csv_string(w)?)?;
        }
    }
    Ok(Outcome::Success)
}

fn suite_names() -> String {
    SUITES.iter().map(|s| s.name).collect::<Vec<_>>().join(", ")
}

fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Serialize)]
struct ResidueRecord {
    analytic: [f64; 2],
    numerical: [f64; 2],
    numerical_error: f64,
    tail: &'static str,
}

impl From<ResidueEstimate> for ResidueRecord {
    fn from(r: ResidueEstimate) -> Self {
        Self {
            analytic: [r.analytic.re, r.analytic.im],
            numerical: [r.numerical.re, r.numerical.im],
            numerical_error: r.numerical_error,
            tail: match r.source {
                ncgasket::spectral::TailSource::Model => "model",
                ncgasket::spectral::TailSource::RatioTest => "ratio-test",
            },
        }
    }
}

/// `s, partial_sum, tail_corrected, cutoff`, real parts; imaginary parts
/// follow in two extra columns when any of them is nonzero. Grid points at
/// or below the abscissa leave `tail_corrected` empty.
pub fn zeta_csv(p: &ZetaProfile) -> Result<String, CliError> {
    let complex = p.partial_sums().iter().any(|z| z.im != 0.0)
        || p.tail_corrected().iter().flatten().any(|z| z.im != 0.0);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["s", "partial_sum", "tail_corrected", "cutoff"];
    if complex {
        header.extend(["partial_sum_im", "tail_corrected_im"]);
    }
    w.write_record(&header)?;
    let cutoff = p.cutoff().to_string();
    for ((s, sum), tc) in p
        .s_grid()
        .iter()
        .zip(p.partial_sums())
        .zip(p.tail_corrected())
    {
        let tc: Option<Complex64> = *tc;
        let mut row = vec![
            s.to_string(),
            sum.re.to_string(),
            tc.map(|z| z.re.to_string()).unwrap_or_default(),
            cutoff.clone(),
        ];
        if complex {
            row.push(sum.im.to_string());
            row.push(tc.map(|z| z.im.to_string()).unwrap_or_default());
        }
        w.write_record(&row)?;
    }
    csv_string(w)
}
