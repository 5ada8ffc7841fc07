mod commands;
mod jobs;
mod trace;
mod verify;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use serde_json::Value;

use normpit_core::limits::{with_limits, Limits};
use normpit_core::Error;

use commands::Answer;
use verify::Suite;

#[derive(Parser)]
#[command(name = "normpit", version, about = "Gröbner bases, curve normalization and PIT for ΣΠΣΠ circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Log kernel progress to stderr.
    #[arg(long, global = true)]
    trace: bool,
    #[arg(long, global = true, env = "NORMPIT_SEED", default_value_t = 0)]
    seed: u64,
    /// Cap on critical pairs per Buchberger run.
    #[arg(long, global = true)]
    max_pairs: Option<usize>,
    /// Cap on polynomial degrees met during a computation.
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    /// Wall-clock limit in seconds.
    #[arg(long, global = true)]
    timeout: Option<f64>,
    /// Worker threads for independent instances.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Gröbner basis of an ideal.
    Gb { input: PathBuf },
    /// Elimination ideal over the variables that are kept.
    Eliminate {
        input: PathBuf,
        #[arg(long = "vars", value_delimiter = ',', required = true)]
        vars: Vec<String>,
    },
    /// Maximal ideals of a zero-dimensional ideal.
    Maxideals { input: PathBuf },
    /// Integral closure of the coordinate ring of a plane curve.
    Normalize {
        input: PathBuf,
        /// Noether direction c1,c2.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        direction: Option<Vec<i64>>,
    },
    /// Hitting set for circuits with the given parameters.
    Hitset {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value = "GF(7)")]
        field: String,
        /// Degree of the bounded-degree generator.
        #[arg(long = "degree-bound", default_value_t = 1)]
        degree_bound: usize,
        /// Circuits without the homogeneity assumption.
        #[arg(long)]
        inhom: bool,
    },
    /// Decide whether a circuit is identically zero.
    Pit { input: PathBuf },
    /// Cross-check the kernels against brute force.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

pub enum Failure {
    Input(String),
    Cap(String),
    Internal(String),
    Disagreement(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceCap(m) => Failure::Cap(m),
            Error::Internal(_) | Error::BoundViolation(_) | Error::NotClosed => Failure::Internal(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

fn read_doc(path: &Path) -> Result<Value, Failure> {
    let mut text = String::new();
    let read = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn dispatch(cli: &Cli) -> Result<Answer, Failure> {
    match &cli.command {
        Command::Gb { input } => commands::gb(&read_doc(input)?),
        Command::Eliminate { input, vars } => commands::eliminate_vars(&read_doc(input)?, vars),
        Command::Maxideals { input } => commands::maxideals(&read_doc(input)?),
        Command::Normalize { input, direction } => commands::normalize(&read_doc(input)?, direction.as_deref()),
        Command::Hitset { n, d, delta, field, degree_bound, inhom } => {
            commands::hitset(*n, *d, *delta, field, *degree_bound, *inhom)
        }
        Command::Pit { input } => commands::pit(&read_doc(input)?, cli.seed),
        Command::Verify { suite } => match verify::run(*suite, cli.seed, cli.jobs) {
            (doc, true) => Ok(doc.into()),
            (doc, false) => Err(Failure::Disagreement(doc)),
        },
    }
}

fn emit(doc: &Value, output: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(doc).expect("serializable") + "\n";
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Internal(format!("stdout: {e}"))),
    }
}

fn limits(cli: &Cli) -> Result<Limits, Failure> {
    let mut l = Limits { max_pairs: cli.max_pairs, max_degree: cli.max_degree, ..Limits::default() };
    if let Some(t) = cli.timeout {
        let t = Duration::try_from_secs_f64(t).map_err(|e| Failure::Input(format!("--timeout: {e}")))?;
        l = l.with_timeout(t);
    }
    Ok(l)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    trace::init(cli.trace);
    let result = limits(&cli).and_then(|l| with_limits(l, || dispatch(&cli)));
    let outcome = result.and_then(|a| emit(&a.doc, cli.output.as_deref()).map(|_| a.negative));
    match outcome {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(Failure::Disagreement(doc)) => match emit(&doc, cli.output.as_deref()) {
            Ok(()) => ExitCode::from(1),
            Err(_) => ExitCode::from(4),
        },
        Err(Failure::Input(m)) => {
            eprintln!("normpit: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("normpit: resource cap reached: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("normpit: internal error: {m}");
            ExitCode::from(4)
        }
    }
}
