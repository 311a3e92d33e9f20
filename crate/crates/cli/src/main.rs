//! `modlie`: command-line front end.
//!
//! Exit codes: 0 ok, 1 mathematical failure or unmet precondition, 2 malformed
//! input, 3 unsupported feature.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "modlie", version, about = "Restricted Lie algebras over small finite fields")]
pub struct Cli {
    /// Rerun in GF(p^d); d must be a multiple of the file's degree.
    #[arg(long, global = true)]
    pub field_degree: Option<u32>,
    /// Render aligned text instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Write the report to a file instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for character sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Override a parameter declared in the algebra file, e.g. alpha=0,1.
    #[arg(long = "param", global = true, value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Dim2,
    Sl2,
    Dim4,
    Dim3alpha,
    Generic,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Jacobi identity, p-map axioms and restrictability.
    Verify { algebra: PathBuf },
    /// Whether (ad x)^p lies in ad L for every basis element.
    Restrictable { algebra: PathBuf },
    /// Minimal p-envelope of a centerless algebra.
    Penv { algebra: PathBuf },
    /// Jordan–Chevalley decomposition of one element.
    Jcd {
        algebra: PathBuf,
        #[arg(long)]
        element: String,
    },
    /// Reduced enveloping algebra u(L,S).
    Env {
        algebra: PathBuf,
        #[arg(long)]
        character: PathBuf,
        /// Report the dimension.
        #[arg(long)]
        dim: bool,
        /// Multiply two elements given in the text form c*e^(a1,..,an).
        #[arg(long, num_args = 2, value_names = ["U", "V"])]
        mul: Option<Vec<String>>,
    },
    /// Induced module from a subalgebra module.
    Induce {
        algebra: PathBuf,
        #[arg(long)]
        character: PathBuf,
        #[arg(long)]
        request: PathBuf,
    },
    /// Irreducible modules with a given character.
    Classify {
        algebra: PathBuf,
        #[arg(long)]
        character: PathBuf,
        #[arg(long, value_enum)]
        family: Family,
    },
    /// Composition factors of the regular u(L,S)-module.
    Oracle {
        algebra: PathBuf,
        #[arg(long)]
        character: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let report = commands::run(&cli);
    let text = if cli.pretty { render::pretty(&report) } else { render::json(&report) };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code)
}
