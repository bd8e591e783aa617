//! `antiramsey` — anti-Ramsey numbers of forests from the command line.
//!
//! Subcommands: `formula` (closed-form values), `construct` (extremal
//! rainbow-free colorings with certificates), `detect` (exact rainbow
//! search), `verify` (batch campaigns), `oracle` (exhaustive small-n
//! search), `spider` (deletion-minimum scan). Exit codes: 0 success/found,
//! 1 not found / failed rows, 2 invalid invocation, 3 oracle timeout.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use antiramsey_cli::harness::{self, VerifyMode};
use antiramsey_core::coloring::EdgeColoring;
use antiramsey_core::construct::{self, Variant};
use antiramsey_core::oracle::{self, SearchStatus};
use antiramsey_core::{detect, formulas, ForestSpec, FormulaConfig};

#[derive(Parser)]
#[command(name = "antiramsey", version, about = "Anti-Ramsey numbers of forests: formulas, extremal colorings, detection and exhaustive verification")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Emit JSON output
    #[arg(long, global = true)]
    json: bool,
    /// Write output to this path (reports get .csv/.json suffixes)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads: 0 = default parallelism, 1 = sequential
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Time budget in seconds for exhaustive searches
    #[arg(long, global = true, default_value_t = 60)]
    budget_sec: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the anti-Ramsey (or Turán) formula for a pattern
    Formula {
        /// Pattern: S(p1,...), P(l1,...), M(t), DS(p,q), SP(a1,...), OMEGA2
        #[arg(long)]
        forest: String,
        #[arg(long)]
        n: u64,
        /// Evaluate the Turán number instead
        #[arg(long)]
        ex: bool,
    },
    /// Generate an extremal rainbow-free coloring plus its certificate
    Construct {
        #[arg(long)]
        forest: String,
        #[arg(long)]
        n: usize,
        /// auto | clique | join (linear forests only)
        #[arg(long, default_value = "auto")]
        variant: String,
    },
    /// Search a coloring file for a rainbow copy of a pattern
    Detect {
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        forest: String,
    },
    /// Verify formula/construction/certificate agreement over a host range
    Verify {
        #[arg(long)]
        forest: String,
        #[arg(long)]
        n_from: u64,
        #[arg(long)]
        n_to: u64,
        /// certificate | exhaustive | both
        #[arg(long, default_value = "certificate")]
        mode: String,
        /// Also run the exact oracle on feasible rows
        #[arg(long)]
        with_oracle: bool,
    },
    /// Exhaustive exact search for tiny hosts
    Oracle {
        #[arg(long)]
        forest: Option<String>,
        #[arg(long)]
        n: usize,
        /// Per-vertex palette caps c1,...,cn (switches to the cap maximizer)
        #[arg(long)]
        caps: Option<String>,
    },
    /// Scan spiders: deletion minimums, equality case, join construction
    Spider {
        #[arg(long)]
        max_legs: u32,
        #[arg(long)]
        max_len: u32,
        /// Host order for the construction check (default: twice the order)
        #[arg(long)]
        sample_n: Option<usize>,
    },
}

fn parse_forest(text: &str) -> Result<ForestSpec> {
    text.parse::<ForestSpec>().with_context(|| format!("cannot parse forest `{text}`"))
}

fn emit(cli: &Cli, text: String) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {path:?}")),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn emit_report(cli: &Cli, report: &harness::VerificationReport) -> Result<u8> {
    if let Some(base) = &cli.out {
        let json_path = base.with_extension("json");
        let csv_path = base.with_extension("csv");
        fs::write(&json_path, report.to_json()).with_context(|| format!("writing {json_path:?}"))?;
        let mut csv_buf = Vec::new();
        report.write_csv(&mut csv_buf)?;
        fs::write(&csv_path, csv_buf).with_context(|| format!("writing {csv_path:?}"))?;
    }
    if cli.json {
        println!("{}", report.to_json());
    } else {
        for row in &report.rows {
            println!(
                "{:10} n={:<4} formula={:<12} construction={:<8} cert={:<5} detect={:<5} {} {}",
                row.family,
                row.n,
                row.formula_lower.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
                row.construction_colors.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
                row.certificate_ok.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
                row.detector_ok.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
                row.status,
                row.note,
            );
        }
        println!("campaign: {} ({} rows)", report.campaign, report.rows.len());
    }
    Ok(report.exit_code())
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.cmd {
        Cmd::Formula { forest, n, ex } => {
            let f = parse_forest(forest)?;
            let cfg = FormulaConfig::default();
            let res = if *ex {
                formulas::ex_formula(&f, *n, &cfg)?
            } else {
                formulas::ar_formula(&f, *n, &cfg)?
            };
            let text = if cli.json {
                serde_json::to_string_pretty(&res)?
            } else {
                format!(
                    "{} on K_{}: status={:?} lower={} upper={} source={}",
                    res.family,
                    res.n,
                    res.status,
                    res.lower.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
                    res.upper.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
                    res.source,
                )
            };
            emit(cli, text)?;
            Ok(0)
        }
        Cmd::Construct { forest, n, variant } => {
            let f = parse_forest(forest)?;
            let variant: Variant = variant.parse()?;
            let (col, cert) = match (f.kind(), variant) {
                (_, Variant::Auto) => construct::auto(*n, &f)?,
                _ => construct::linear_forest(*n, &f, variant)?,
            };
            match &cli.out {
                Some(path) => {
                    fs::write(path, col.to_file_string())
                        .with_context(|| format!("writing {path:?}"))?;
                    let cert_path = PathBuf::from(format!("{}.cert.json", path.display()));
                    fs::write(&cert_path, serde_json::to_string_pretty(&cert)?)
                        .with_context(|| format!("writing {cert_path:?}"))?;
                    println!(
                        "wrote K_{} coloring with {} colors to {} (certificate: {})",
                        col.n(),
                        col.num_colors(),
                        path.display(),
                        cert_path.display()
                    );
                }
                None => bail!("construct requires --out <path> for the coloring file"),
            }
            Ok(0)
        }
        Cmd::Detect { coloring, forest } => {
            let f = parse_forest(forest)?;
            let file = fs::File::open(coloring).with_context(|| format!("opening {coloring:?}"))?;
            let col = EdgeColoring::read_from(std::io::BufReader::new(file))?;
            match detect::find_rainbow(&col, &f)? {
                Some(emb) => {
                    detect::validate_embedding(&col, &f, &emb)
                        .context("internal error: witness failed validation")?;
                    let mut out = String::new();
                    for (u, v, c) in &emb.edges {
                        out.push_str(&format!("{u} {v} {c}\n"));
                    }
                    print!("{out}");
                    Ok(0)
                }
                None => {
                    println!("NONE");
                    Ok(1)
                }
            }
        }
        Cmd::Verify { forest, n_from, n_to, mode, with_oracle } => {
            let f = parse_forest(forest)?;
            let mode: VerifyMode = mode.parse()?;
            let budget = with_oracle.then(|| Duration::from_secs(cli.budget_sec));
            let report = harness::run_verify(&f, *n_from, *n_to, mode, cli.threads, budget)?;
            emit_report(cli, &report)
        }
        Cmd::Oracle { forest, n, caps } => {
            let budget = Duration::from_secs(cli.budget_sec);
            let outcome = match caps {
                Some(list) => {
                    let caps: Vec<u32> = list
                        .split(',')
                        .map(|t| t.trim().parse::<u32>().context("parsing caps"))
                        .collect::<Result<_>>()?;
                    oracle::max_colors_with_caps(*n, &caps, budget, cli.threads)?
                }
                None => {
                    let spec = forest
                        .as_deref()
                        .context("oracle needs --forest (or --caps for the cap maximizer)")?;
                    let f = parse_forest(spec)?;
                    oracle::ar_exact(*n, &f, budget, cli.threads)?
                }
            };
            emit(cli, serde_json::to_string_pretty(&outcome)?)?;
            Ok(if outcome.status == SearchStatus::Exact { 0 } else { 3 })
        }
        Cmd::Spider { max_legs, max_len, sample_n } => {
            let report = harness::run_spider_scan(*max_legs, *max_len, *sample_n, cli.threads)?;
            emit_report(cli, &report)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            let mut stderr = std::io::stderr();
            let _ = writeln!(stderr, "error: {err:#}");
            ExitCode::from(2)
        }
    }
}
