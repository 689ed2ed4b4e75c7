use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dbk_cli::{build_space, parse_document, run};
use dbk_core::models::CATALOG;
use dbk_core::{catalog, DbError, Dimension};

#[derive(Parser)]
#[command(name = "dbk", version, about = "Spectral toolkit for de Branges spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task of a JSON document and emit a JSON report.
    Run {
        spec: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for per-task CSV tables.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Overrides the document seed.
        #[arg(long, env = "DBK_SEED")]
        seed: Option<u64>,
    },
    /// List the built-in models.
    Catalog,
    /// Print a model summary.
    Describe { model: String },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run { spec, out, csv, seed } => run_command(&spec, out, csv, seed),
        Command::Catalog => {
            for (name, about) in CATALOG {
                println!("{name:<16} {about}");
            }
            ExitCode::SUCCESS
        }
        Command::Describe { model } => match catalog(&model) {
            Ok(space) => {
                println!("name        {}", space.name());
                println!("provenance  {}", space.provenance().tag());
                let (kind, size) = match space.dim() {
                    Dimension::Finite(n) => ("finite", n),
                    Dimension::Truncated(n) => ("truncated", n),
                };
                println!("dimension   {kind} {size}");
                println!("s0          {}", space.s0());
                println!("s_half      {}", space.s_half());
                let (lo, hi) = space.numerics().window;
                println!("window      [{lo}, {hi}]");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("dbk: {e}");
                ExitCode::from(2)
            }
        },
    }
}

fn run_command(spec: &PathBuf, out: Option<PathBuf>, csv: Option<PathBuf>, seed: Option<u64>) -> ExitCode {
    let text = match fs::read_to_string(spec) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("dbk: cannot read {}: {e}", spec.display());
            return ExitCode::from(2);
        }
    };
    let doc = match parse_document(&text) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("dbk: {}: {e}", spec.display());
            return ExitCode::from(2);
        }
    };
    let space = match build_space(&doc) {
        Ok(s) => s,
        Err(e @ DbError::InvalidModel(_)) => {
            eprintln!("dbk: {}: {e}", spec.display());
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("dbk: model: {e}");
            return ExitCode::from(1);
        }
    };
    let seed = seed.or(doc.numerics.seed).unwrap_or(0);
    let outcome = run(&doc, &space, seed);
    let text = outcome.report.to_pretty();
    match &out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("dbk: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if let Some(dir) = csv {
        if let Err(e) = fs::create_dir_all(&dir) {
            eprintln!("dbk: cannot create {}: {e}", dir.display());
            return ExitCode::from(1);
        }
        for (name, body) in &outcome.tables {
            if let Err(e) = fs::write(dir.join(name), body) {
                eprintln!("dbk: cannot write {name}: {e}");
                return ExitCode::from(1);
            }
        }
    }
    for line in &outcome.failures {
        eprintln!("dbk: FAIL {line}");
    }
    if outcome.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
