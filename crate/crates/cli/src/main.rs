//! `leviscope`: command-line front end.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use report::{Outcome, RunReport};

#[derive(Parser, Debug)]
#[command(name = "leviscope", version, about = "Exact checks for real-analytic Levi-flat hypersurfaces and line singularities")]
struct Cli {
    /// Print a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether {F = 0} is Levi-flat.
    CheckLevi { file: String },
    /// Replace conjugated variables by independent ones.
    Complexify { file: String },
    /// Generators and dimension of the complexified singular set.
    Sing { file: String },
    /// The Segre variety of F at a point.
    Segre {
        file: String,
        /// Comma-separated coordinates, e.g. "0, 1/2, i".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Line-singularity invariants: I² membership, tangent ideal, c(f).
    Ils { file: String },
    /// Match a germ against the normal-form table.
    Classify { file: String },
    /// Operations on the built-in tables.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Strict transform in one chart of a coordinate blow-up.
    Blowup {
        file: String,
        /// Comma-separated center variables, e.g. "y1,y2,w1,w2".
        #[arg(long)]
        center: String,
        /// Center variable that becomes the exceptional coordinate.
        #[arg(long)]
        chart: Option<String>,
        /// Renamings "old=new,…" for center variables.
        #[arg(long)]
        names: Option<String>,
    },
    /// Check the hypotheses of the normal-form theorems for F = Re(P) + H.
    CheckTheoremA {
        file: String,
        /// Table row, e.g. "D n=3" or "J,k=2".
        #[arg(long = "normal-form")]
        normal_form: String,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// Run every table row and quadric through the checks.
    Verify {
        /// Ambient dimension minus one (at least 3).
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = std::time::Instant::now();
    let (name, outcome) = commands::run(&cli.command);
    let elapsed = start.elapsed().as_millis();
    match outcome {
        Ok(Outcome {
            inputs,
            result,
            text,
            verdict,
        }) => {
            if cli.json {
                let report = RunReport::new(name, inputs, result, elapsed);
                emit(&format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable")));
            } else {
                emit(&text);
            }
            ExitCode::from(if verdict { 0 } else { 1 })
        }
        Err(e) => {
            if cli.json {
                let err = serde_json::json!({ "command": name, "error": e.to_string() });
                emit(&format!("{}\n", serde_json::to_string_pretty(&err).expect("serializable")));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Writes to stdout, ignoring a closed pipe (e.g. output piped into `head`).
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}
