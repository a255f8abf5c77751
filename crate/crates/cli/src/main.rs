//! `qdcss`: build, inspect and simulate quasi-dyadic CSS codes.
//!
//! Exit codes: 0 success, 2 invalid spec or arguments, 3 infeasible or
//! non-orthogonal construction, 4 I/O failure.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qdcss::cycles::{girth_bfs, TannerGraph};
use qdcss::sim::{Accounting, RunOptions};
use qdcss::{catalog, parse_spec, BuiltCode, CodeSpec, ConstructionKind, DistanceMode, HeuristicConfig};

#[derive(Parser)]
#[command(name = "qdcss", version, about = "Quasi-dyadic dual-containing CSS codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CodeArg {
    /// Path to a JSON code spec.
    #[arg(long, conflicts_with = "code", required_unless_present = "code")]
    spec: Option<PathBuf>,
    /// Name of a built-in code (see `qdcss list`).
    #[arg(long)]
    code: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum DistanceKind {
    Exhaustive,
    Isd,
}

#[derive(Clone, Copy, ValueEnum)]
enum AccountingArg {
    Joint,
    XOnly,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in code names.
    List,
    /// Build a code and print its spec and matrix statistics.
    Construct {
        #[command(flatten)]
        code: CodeArg,
        /// Also write the expanded matrix as rows of 0/1 characters.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Check orthogonality, rank and code parameters.
    Check {
        #[command(flatten)]
        code: CodeArg,
        /// Skip the DPM automorphism check.
        #[arg(long)]
        no_automorphisms: bool,
    },
    /// Girth and short-cycle counts of the Tanner graph.
    Cycles {
        #[command(flatten)]
        code: CodeArg,
        /// Longest cycle length to count; 8 uses exhaustive enumeration.
        #[arg(long, default_value_t = 6)]
        cap: usize,
    },
    /// Minimum distance by exhaustive search or information-set decoding.
    Distance {
        #[command(flatten)]
        code: CodeArg,
        #[arg(long, value_enum, default_value_t = DistanceKind::Exhaustive)]
        mode: DistanceKind,
        #[arg(long, default_value_t = 4)]
        max_weight: usize,
        #[arg(long, default_value_t = 10_000)]
        iterations: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Logical error rate over a grid of depolarizing probabilities.
    Simulate {
        #[command(flatten)]
        code: CodeArg,
        /// Comma-separated depolarizing probabilities. May be empty.
        #[arg(long, default_value = "")]
        p_grid: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        target_errors: u64,
        #[arg(long, default_value_t = 1_000_000)]
        max_trials: u64,
        #[arg(long, default_value_t = 100)]
        max_iters: usize,
        /// Check-message scale in (0, 1]; 1 is plain min-sum.
        #[arg(long, default_value_t = 1.0)]
        normalization: f64,
        #[arg(long, value_enum, default_value_t = AccountingArg::Joint)]
        accounting: AccountingArg,
        #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
        out: OutFormat,
        /// Write to this file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Draw Construction B supports with disjoint difference sets and print a spec.
    Heuristic {
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        max_attempts: usize,
        #[arg(long, default_value_t = 50)]
        local_threshold: usize,
    },
    /// Build a dual-containing bicycle code and print its spec and parameters.
    BaselineBicycle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        row_weight: usize,
        #[arg(long)]
        target_k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum CliError {
    Code(qdcss::Error),
    Io(String, io::Error),
    Output(String),
}

impl From<qdcss::Error> for CliError {
    fn from(e: qdcss::Error) -> Self {
        CliError::Code(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use qdcss::Error::*;
        match self {
            CliError::Code(Infeasible(_) | NotOrthogonal(..) | HeuristicExhausted { .. } | SearchTooLarge { .. }) => 3,
            CliError::Code(_) => 2,
            CliError::Io(..) | CliError::Output(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Code(e) => e.to_string(),
            CliError::Io(path, e) => format!("{path}: {e}"),
            CliError::Output(m) => m.clone(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn load_spec(arg: &CodeArg) -> CliResult<CodeSpec> {
    if let Some(name) = &arg.code {
        return catalog::by_name(name).ok_or_else(|| {
            CliError::Code(qdcss::Error::InvalidSpec(format!(
                "unknown code `{name}`; known: {}",
                catalog::NAMES.join(", ")
            )))
        });
    }
    let path = arg.spec.as_ref().expect("clap requires --spec or --code");
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    parse_spec(&text).map_err(|e| match e {
        qdcss::Error::InvalidSpec(m) => CliError::Code(qdcss::Error::InvalidSpec(format!("{}: {m}", path.display()))),
        other => CliError::Code(other),
    })
}

fn parse_grid(text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>().map_err(|e| {
                CliError::Code(qdcss::Error::InvalidSpec(format!("--p-grid entry `{t}`: {e}")))
            })
        })
        .collect()
}

fn print_json<T: Serialize>(value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Output(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| CliError::Io(p.display().to_string(), e)),
        None => io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::Io("stdout".into(), e)),
    }
}

#[derive(Serialize)]
struct MatrixStats {
    rows: usize,
    cols: usize,
    ones: usize,
    row_weight_min: usize,
    row_weight_max: usize,
    col_weight_min: usize,
    col_weight_max: usize,
    ell: Option<u32>,
    block_rows: Option<usize>,
    block_cols: Option<usize>,
}

fn stats(b: &BuiltCode) -> MatrixStats {
    let rw = b.h.row_weights();
    let cw = b.h.col_weights();
    MatrixStats {
        rows: b.h.rows(),
        cols: b.h.cols(),
        ones: b.h.weight(),
        row_weight_min: rw.iter().copied().min().unwrap_or(0),
        row_weight_max: rw.iter().copied().max().unwrap_or(0),
        col_weight_min: cw.iter().copied().min().unwrap_or(0),
        col_weight_max: cw.iter().copied().max().unwrap_or(0),
        ell: b.ell(),
        block_rows: b.array.as_ref().map(|a| a.w()),
        block_cols: b.array.as_ref().map(|a| a.u()),
    }
}

#[derive(Serialize)]
struct ConstructReport<'a> {
    spec: &'a CodeSpec,
    matrix: MatrixStats,
}

#[derive(Serialize)]
struct CheckReport {
    label: String,
    orthogonal_blocks: Option<bool>,
    orthogonal_dense: bool,
    params: qdcss::css::CodeParams,
    dpm_automorphisms: Option<bool>,
}

#[derive(Serialize)]
struct CycleReport {
    label: String,
    census: qdcss::cycles::CycleCensus,
    four_cycles_blockwise: Option<qdcss::cycles::FourCycleCount>,
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::List => {
            for name in catalog::NAMES {
                let spec = catalog::by_name(name).expect("listed names resolve");
                println!("{name}\t{}", spec.label());
            }
            Ok(())
        }
        Command::Construct { code, matrix } => {
            let spec = load_spec(&code)?;
            let built = spec.build()?;
            if let Some(path) = matrix {
                let mut text = String::with_capacity(built.h.rows() * (built.h.cols() + 1));
                for row in built.h.to_dense() {
                    text.extend(row.iter().map(|&b| if b == 1 { '1' } else { '0' }));
                    text.push('\n');
                }
                write_output(Some(&path), text.as_bytes())?;
            }
            print_json(&ConstructReport {
                spec: &built.spec,
                matrix: stats(&built),
            })
        }
        Command::Check { code, no_automorphisms } => {
            let spec = load_spec(&code)?;
            let built = spec.build()?;
            let orthogonal_blocks = built.array.as_ref().map(qdcss::check_orthogonality);
            let orthogonal_dense = qdcss::construction::is_self_orthogonal(&built.h);
            let css = built.css()?;
            let dpm_automorphisms = match built.ell() {
                Some(ell) if !no_automorphisms => Some(qdcss::verify_dpm_automorphisms(&css, ell)?),
                _ => None,
            };
            print_json(&CheckReport {
                label: built.label(),
                orthogonal_blocks,
                orthogonal_dense,
                params: css.params(),
                dpm_automorphisms,
            })
        }
        Command::Cycles { code, cap } => {
            let spec = load_spec(&code)?;
            let built = spec.build()?;
            let census = girth_bfs(&TannerGraph::new(&built.h), cap);
            print_json(&CycleReport {
                label: built.label(),
                census,
                four_cycles_blockwise: built.array.as_ref().map(qdcss::count_4cycles_blockwise),
            })
        }
        Command::Distance {
            code,
            mode,
            max_weight,
            iterations,
            seed,
        } => {
            let spec = load_spec(&code)?;
            let css = spec.build()?.css()?;
            let mode = match mode {
                DistanceKind::Exhaustive => DistanceMode::Exhaustive { max_weight },
                DistanceKind::Isd => DistanceMode::Probabilistic { iterations, seed },
            };
            print_json(&qdcss::min_distance(&css, mode)?)
        }
        Command::Simulate {
            code,
            p_grid,
            seed,
            target_errors,
            max_trials,
            max_iters,
            normalization,
            accounting,
            out,
            output,
        } => {
            let p_grid = parse_grid(&p_grid)?;
            let spec = load_spec(&code)?;
            let built = spec.build()?;
            let css = built.css()?;
            let mut opts = RunOptions::new(built.label(), seed);
            opts.stop.target_errors = target_errors;
            opts.stop.max_trials = max_trials;
            opts.accounting = match accounting {
                AccountingArg::Joint => Accounting::Joint,
                AccountingArg::XOnly => Accounting::XOnly,
            };
            let mut results = Vec::with_capacity(p_grid.len());
            for &p in &p_grid {
                let ch = qdcss::ChannelModel::new(p)?;
                let mut cfg = qdcss::Config::for_depolarizing(p);
                cfg.max_iterations = max_iters;
                cfg.normalization = normalization;
                let r = qdcss::run_point(&css, &ch, &cfg, &opts)?;
                if r.hit_max_trials {
                    eprintln!(
                        "warning: p={p} stopped at max_trials={max_trials} with {} errors",
                        r.logical_errors
                    );
                }
                results.push(r);
            }
            let bytes = match out {
                OutFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&results).map_err(|e| CliError::Output(e.to_string()))?;
                    s.push('\n');
                    s.into_bytes()
                }
                OutFormat::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    let csv_err = |e: csv::Error| CliError::Output(e.to_string());
                    w.write_record(["p", "trials", "logical_errors", "ler", "ci_lo", "ci_hi"])
                        .map_err(csv_err)?;
                    for r in &results {
                        w.write_record([
                            r.p.to_string(),
                            r.trials.to_string(),
                            r.logical_errors.to_string(),
                            r.ler.to_string(),
                            r.ci_lo.to_string(),
                            r.ci_hi.to_string(),
                        ])
                        .map_err(csv_err)?;
                    }
                    w.into_inner().map_err(|e| CliError::Output(e.to_string()))?
                }
            };
            write_output(output.as_deref(), &bytes)
        }
        Command::Heuristic {
            ell,
            u,
            v,
            seed,
            max_attempts,
            local_threshold,
        } => {
            let mut cfg = HeuristicConfig::new(ell, u, v, seed);
            cfg.max_attempts = max_attempts;
            cfg.local_threshold = local_threshold;
            let supports = qdcss::generate_supports(&cfg)?;
            print_json(&CodeSpec {
                construction: Some(ConstructionKind::B),
                ell: Some(ell),
                u: Some(u),
                v: Some(v),
                supports: Some(supports),
                ..CodeSpec::default()
            })
        }
        Command::BaselineBicycle {
            n,
            row_weight,
            target_k,
            seed,
        } => {
            let spec = CodeSpec {
                construction: Some(ConstructionKind::Bicycle),
                n: Some(n),
                row_weight: Some(row_weight),
                target_k: Some(target_k),
                seed: Some(seed),
                ..CodeSpec::default()
            };
            let built = spec.build()?;
            let css = built.css()?;
            #[derive(Serialize)]
            struct Report<'a> {
                spec: &'a CodeSpec,
                matrix: MatrixStats,
                params: qdcss::css::CodeParams,
            }
            print_json(&Report {
                spec: &spec,
                matrix: stats(&built),
                params: css.params(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
