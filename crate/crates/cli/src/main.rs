//! `pfaff`: decide integrability of Pfaffian systems given as text files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;
use pfaff::{build_chain, minimal_order, ChainReport, Error, Limits, Report, SystemFile};

#[derive(Parser)]
#[command(name = "pfaff", version, about = "Integrability of Pfaffian systems")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunConfig {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Largest total degree allowed during Gröbner basis computations.
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..))]
    max_degree: u32,

    /// Largest number of basis elements.
    #[arg(long, global = true, default_value_t = 4096, value_parser = positive)]
    max_basis: usize,

    /// Largest number of S-pairs processed.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = positive)]
    max_pairs: usize,

    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

impl RunConfig {
    fn limits(&self) -> Limits {
        Limits {
            max_degree: self.max_degree,
            max_basis: self.max_basis,
            max_pairs: self.max_pairs,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the verdict, the integral dimension and the stabilization index.
    Decide { file: PathBuf },
    /// Print every ideal of the chain with its dimension.
    Chain { file: PathBuf },
    /// Find the least differentiation order that exposes inconsistency.
    Nullstellensatz {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        k_max: u32,
    },
}

const EXIT_INPUT: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_INTERNAL: u8 = 1;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.config.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();

    let (file, result) = match &cli.command {
        Command::Decide { file } => (file, decide(file, &cli.config)),
        Command::Chain { file } => (file, chain(file, &cli.config)),
        Command::Nullstellensatz { file, k_max } => {
            (file, nullstellensatz(file, *k_max, &cli.config))
        }
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            report_error(file, &e);
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    if e.is_resource_limit() {
        return EXIT_RESOURCE;
    }
    match e {
        Error::Syntax { .. }
        | Error::Parse { .. }
        | Error::Io { .. }
        | Error::InvalidSystem(_)
        | Error::InvalidRing(_)
        | Error::UnknownVariable(_)
        | Error::NonAutonomous => EXIT_INPUT,
        _ => EXIT_INTERNAL,
    }
}

fn report_error(file: &Path, e: &Error) {
    match e {
        Error::Syntax {
            line,
            column,
            message,
        } => eprintln!("{}:{line}:{column}: error: {message}", file.display()),
        Error::NonAutonomous => eprintln!(
            "{}: error: the system depends on its independent variables; \
             the jet search needs an autonomous system (use `pfaff decide`, which autonomizes)",
            file.display()
        ),
        e if e.is_resource_limit() => eprintln!(
            "{}: error: {e}; raise --max-degree, --max-basis or --max-pairs to continue",
            file.display()
        ),
        e => eprintln!("{}: error: {e}", file.display()),
    }
}

fn run_chain(file: &Path, config: &RunConfig) -> pfaff::Result<ChainReport> {
    let system = SystemFile::read(file)?.into_system();
    info!(
        "{} unknowns, {} independent variables, {} constraints",
        system.n(),
        system.m(),
        system.g().len()
    );
    build_chain(&system, &config.limits())
}

fn verdict_line(r: &Report) -> String {
    format!(
        "{}, rho={}, p_infinity={}",
        if r.verdict {
            "INTEGRABLE"
        } else {
            "NOT INTEGRABLE"
        },
        r.rho,
        r.p_infinity
    )
}

fn decide(file: &Path, config: &RunConfig) -> pfaff::Result<String> {
    let report = Report::from(&run_chain(file, config)?);
    if config.json {
        return Ok(report.to_json() + "\n");
    }
    let mut out = verdict_line(&report) + "\n";
    if report.autonomized {
        writeln!(out, "autonomized: {} unknowns", report.n_aut).unwrap();
    }
    for s in &report.steps {
        writeln!(out, "step {}: dim {}", s.p, s.dim).unwrap();
    }
    Ok(out)
}

fn chain(file: &Path, config: &RunConfig) -> pfaff::Result<String> {
    let report = Report::from(&run_chain(file, config)?);
    if config.json {
        return Ok(report.to_json() + "\n");
    }
    let mut out = String::new();
    if report.autonomized {
        writeln!(out, "autonomized: {} unknowns", report.n_aut).unwrap();
    }
    for s in &report.steps {
        let flag = if s.trivial { ", trivial" } else { "" };
        writeln!(out, "step {}: dim {}{flag}", s.p, s.dim).unwrap();
        if s.generators.is_empty() {
            writeln!(out, "  (zero ideal)").unwrap();
        }
        for g in &s.generators {
            writeln!(out, "  {g}").unwrap();
        }
    }
    writeln!(out, "{}", verdict_line(&report)).unwrap();
    Ok(out)
}

fn nullstellensatz(file: &Path, k_max: u32, config: &RunConfig) -> pfaff::Result<String> {
    let system = SystemFile::read(file)?.into_system();
    let k = minimal_order(&system, k_max, &config.limits())?;
    if config.json {
        let value = serde_json::json!({ "k": k, "k_max": k_max });
        return Ok(serde_json::to_string_pretty(&value).expect("json value") + "\n");
    }
    Ok(match k {
        Some(k) => format!("k = {k}\n"),
        None => format!("no certificate ≤ {k_max}\n"),
    })
}
