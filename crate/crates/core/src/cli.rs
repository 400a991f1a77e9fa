//! The `gog` command line.
//!
//! Exit codes: 0 success, 1 invalid input data, 2 usage error, 3 a property
//! or internal identity failed. Diagnostics go to the error stream as one
//! line `error[CODE]: message`.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::classify::{classify, largeness_report};
use crate::counting::{count_series, CountError};
use crate::gog::{parse_gog, serialize_gog, GraphOfGroups};
use crate::invariants::{check_edge_bound, euler_char, free_rank, type_vector, RationalDisplay};
use crate::normalize::normalize_fully;
use crate::verify::{run_suite, Suite};

pub const DEFAULT_TERMS: usize = 20;
pub const MAX_TERMS: usize = 200;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PROPERTY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "gog",
    about = "Graphs of finite groups: invariants, counting and classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a GOG file
    Validate { file: PathBuf },
    /// Contract trivial spanning-tree edges
    Normalize {
        file: PathBuf,
        /// Print the contraction log as comments
        #[arg(long)]
        steps: bool,
    },
    /// m, Euler characteristic, type and free rank
    Invariants { file: PathBuf },
    /// Free-subgroup counts f_1..f_N
    Count {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TERMS)]
        terms: usize,
        /// Also print g as p/q
        #[arg(long)]
        g: bool,
    },
    /// Shape classification of the normalized datum
    Classify { file: PathBuf },
    /// Largeness criteria
    Largeness {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TERMS)]
        prefix: usize,
    },
    /// Run a property suite: convolution, ode, parity, growth or oracle
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        bound: Option<u64>,
    },
}

struct Failure {
    exit: i32,
    code: &'static str,
    message: String,
}

impl Failure {
    fn usage(code: &'static str, message: impl Into<String>) -> Self {
        Failure {
            exit: EXIT_USAGE,
            code,
            message: message.into(),
        }
    }

    fn property(code: &'static str, message: impl Into<String>) -> Self {
        Failure {
            exit: EXIT_PROPERTY,
            code,
            message: message.into(),
        }
    }
}

impl From<CountError> for Failure {
    fn from(e: CountError) -> Self {
        Failure::property("E_COUNT", e.to_string())
    }
}

fn load(path: &PathBuf) -> Result<GraphOfGroups, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage("E_IO", format!("{}: {e}", path.display())))?;
    parse_gog(&text).map_err(|e| Failure {
        exit: EXIT_INVALID,
        code: e.code(),
        message: e.to_string(),
    })
}

fn check_terms(n: usize, flag: &str, min: usize) -> Result<(), Failure> {
    if n < min || n > MAX_TERMS {
        return Err(Failure::usage(
            "E_USAGE",
            format!("--{flag} must be between {min} and {MAX_TERMS}"),
        ));
    }
    Ok(())
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<S: AsRef<str>>(args: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args.iter().map(|s| s.as_ref())) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            } else {
                let first = rendered.lines().next().unwrap_or("invalid arguments");
                let _ = writeln!(
                    err,
                    "error[E_USAGE]: {}",
                    first.trim_start_matches("error: ")
                );
                EXIT_USAGE
            };
        }
    };
    let mut buffer = Vec::new();
    match execute(cli.command, &mut buffer) {
        Ok(code) => {
            let _ = out.write_all(&buffer);
            code
        }
        Err(f) => {
            let _ = out.write_all(&buffer);
            let _ = writeln!(err, "error[{}]: {}", f.code, f.message);
            f.exit
        }
    }
}

fn execute(command: Command, out: &mut Vec<u8>) -> Result<i32, Failure> {
    match command {
        Command::Validate { file } => {
            let gog = load(&file)?;
            let g = gog.graph();
            writeln!(
                out,
                "ok vertices={} geometric_edges={}",
                g.vertex_count(),
                g.geometric_edge_count()
            )
            .unwrap();
        }
        Command::Normalize { file, steps } => {
            let gog = load(&file)?;
            let (normalized, log) = normalize_fully(&gog);
            if steps {
                for (i, s) in log.iter().enumerate() {
                    writeln!(
                        out,
                        "# step {}: contract {} merging {} into {}",
                        i + 1,
                        s.contracted_edge,
                        s.removed_vertex,
                        s.surviving_vertex
                    )
                    .unwrap();
                }
                writeln!(out, "# {} contraction(s)", log.len()).unwrap();
            }
            out.extend_from_slice(serialize_gog(normalized.gog()).as_bytes());
        }
        Command::Invariants { file } => {
            let gog = load(&file)?;
            let tv = type_vector(&gog);
            let mu = free_rank(&gog)
                .map_err(|e| Failure::property("E_NON_INTEGRAL_RANK", e.to_string()))?;
            writeln!(out, "m={}", tv.m).unwrap();
            writeln!(out, "chi={}", RationalDisplay(&euler_char(&gog))).unwrap();
            writeln!(out, "mu={mu}").unwrap();
            for (kappa, z) in &tv.zeta {
                writeln!(out, "zeta_{kappa}={z}").unwrap();
            }
            let (normalized, _) = normalize_fully(&gog);
            let half_edges = normalized.gog().graph().half_edge_count();
            let ok = check_edge_bound(&normalized);
            writeln!(
                out,
                "edge_bound={} half_edges={half_edges} two_mu={}",
                if ok { "ok" } else { "VIOLATED" },
                2 * mu
            )
            .unwrap();
            if !ok {
                return Err(Failure::property(
                    "E_EDGE_BOUND",
                    "normalized datum exceeds 2·mu half-edges",
                ));
            }
        }
        Command::Count { file, terms, g } => {
            check_terms(terms, "terms", 1)?;
            let gog = load(&file)?;
            let series = count_series(&gog, terms)?;
            for lambda in 1..=terms {
                write!(out, "{lambda} {}", series.f(lambda)).unwrap();
                if g {
                    write!(out, " {}", RationalDisplay(&series.g[lambda])).unwrap();
                }
                writeln!(out).unwrap();
            }
        }
        Command::Classify { file } => {
            let gog = load(&file)?;
            let (normalized, _) = normalize_fully(&gog);
            let report = classify(&normalized)
                .map_err(|e| Failure::property("E_UNCLASSIFIABLE", e.to_string()))?;
            writeln!(out, "{report}").unwrap();
            writeln!(out, "label={}", report.label).unwrap();
            let params: Vec<String> = report
                .params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            writeln!(out, "params {}", params.join(" ")).unwrap();
            writeln!(out, "witness {}", report.witness.join(" ")).unwrap();
        }
        Command::Largeness { file, prefix } => {
            check_terms(prefix, "prefix", 2)?;
            let gog = load(&file)?;
            let (normalized, _) = normalize_fully(&gog);
            let r = largeness_report(&normalized, prefix)?;
            writeln!(out, "chi_negative={}", r.chi_negative).unwrap();
            writeln!(out, "rank_ge_2={}", r.rank_ge_2).unwrap();
            writeln!(out, "structural_vii={}", r.structural_vii).unwrap();
            writeln!(
                out,
                "f_strictly_increasing_prefix(N={prefix})={}",
                r.f_strictly_increasing_prefix
            )
            .unwrap();
            for name in [
                "infinitely_many_ends",
                "pride_equivalent_to_F2",
                "fast_subgroup_growth",
            ] {
                writeln!(out, "{name}=implied-equivalent, not computed").unwrap();
            }
            if !r.criteria_agree() {
                return Err(Failure::property(
                    "E_LARGENESS",
                    "computed criteria disagree",
                ));
            }
        }
        Command::Verify { suite, seed, bound } => {
            let suite = Suite::from_name(&suite).ok_or_else(|| {
                Failure::usage(
                    "E_UNKNOWN_SUITE",
                    format!("unknown suite `{suite}` (convolution, ode, parity, growth, oracle)"),
                )
            })?;
            let outcomes = run_suite(suite, seed, bound.unwrap_or(suite.default_bound()));
            for o in &outcomes {
                writeln!(out, "{o}").unwrap();
            }
            if outcomes.iter().any(|o| !o.passed) {
                return Err(Failure::property(
                    "E_PROPERTY",
                    format!("suite `{}` failed", suite.name()),
                ));
            }
        }
    }
    Ok(EXIT_OK)
}
