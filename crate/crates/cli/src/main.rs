use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use tonnetz::peck::{assemble, classify_assembly, parse_moves};
use tonnetz::report::{peck_sweep, render_classification, render_peck_line, tally_line, to_dot};
use tonnetz::{
    build_complex, enumerate, normalize_shape, render_csv, render_json, render_table, report_row,
    verify, ExportDocument, TriadShape,
};

const EXIT_USAGE: u8 = 1;
const EXIT_MISMATCH: u8 = 2;
const EXIT_IO: u8 = 3;

/// Generalized Tonnetze: build, classify and export spaces of triads.
#[derive(Parser)]
#[command(name = "tonnetz", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify C(n1,n2,n3); the intervals may be given in any order.
    Classify {
        n1: u32,
        n2: u32,
        n3: u32,
        #[arg(long, value_enum, default_value_t = ClassifyFormat::Text)]
        format: ClassifyFormat,
    },
    /// List every triad shape in an N-tone scale.
    Enumerate {
        #[arg(long)]
        edo: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Table)]
        format: TableFormat,
    },
    /// Write the complex as JSON or as a DOT face-adjacency graph.
    Export {
        n1: u32,
        n2: u32,
        n3: u32,
        #[arg(long, value_enum)]
        format: ExportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check counts, classifications and components for all N up to a bound.
    Verify {
        #[arg(long)]
        max_edo: u32,
    },
    /// Build Peck assemblies of the circle of tetrahedra C(n1,n2,n1+n2).
    Peck {
        n1: u32,
        n2: u32,
        /// Junction moves, e.g. FSS.
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        sequence: Option<String>,
        /// Sweep every move sequence and print the tally.
        #[arg(long)]
        all: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassifyFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Json,
    Dot,
}

/// Failure carrying the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn usage(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        error: error.into(),
    }
}

fn io_failure(error: anyhow::Error) -> Failure {
    Failure {
        code: EXIT_IO,
        error,
    }
}

fn internal(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: EXIT_MISMATCH,
        error: error.into(),
    }
}

fn shape_arg(n1: u32, n2: u32, n3: u32) -> Result<TriadShape, Failure> {
    normalize_shape([n1, n2, n3]).map_err(usage)
}

fn emit(text: &str) -> Result<(), Failure> {
    let mut stdout = io::stdout().lock();
    stdout
        .write_all(text.as_bytes())
        .and_then(|()| stdout.flush())
        .context("writing to standard output")
        .map_err(io_failure)
}

fn with_newline(mut text: String) -> String {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    text
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Classify { n1, n2, n3, format } => {
            let row = report_row(&shape_arg(n1, n2, n3)?).map_err(internal)?;
            match format {
                ClassifyFormat::Text => emit(&render_classification(&row)),
                ClassifyFormat::Json => {
                    let json = serde_json::to_string_pretty(&row).map_err(internal)?;
                    emit(&with_newline(json))
                }
            }
        }
        Command::Enumerate { edo, format } => {
            if edo < 3 {
                return Err(usage(anyhow::anyhow!(
                    "--edo must be at least 3, got {edo}"
                )));
            }
            let rows = enumerate(edo).map_err(internal)?;
            let text = match format {
                TableFormat::Table => render_table(&rows),
                TableFormat::Json => with_newline(render_json(&rows).map_err(internal)?),
                TableFormat::Csv => render_csv(&rows).map_err(internal)?,
            };
            emit(&text)
        }
        Command::Export {
            n1,
            n2,
            n3,
            format,
            out,
        } => {
            let complex = build_complex(&shape_arg(n1, n2, n3)?);
            let text = match format {
                ExportFormat::Json => with_newline(
                    ExportDocument::from_complex(&complex)
                        .to_json()
                        .map_err(internal)?,
                ),
                ExportFormat::Dot => to_dot(&complex),
            };
            match out {
                Some(path) => fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))
                    .map_err(io_failure),
                None => emit(&text),
            }
        }
        Command::Verify { max_edo } => {
            if max_edo < 3 {
                return Err(usage(anyhow::anyhow!(
                    "--max-edo must be at least 3, got {max_edo}"
                )));
            }
            let summary = verify(max_edo);
            let mut text = String::new();
            for m in &summary.mismatches {
                text.push_str(&format!("MISMATCH {}: {}\n", m.shape, m.detail));
            }
            let (checked, bad) = (summary.shapes_checked, summary.mismatches.len());
            text.push_str(&format!(
                "{checked} {} checked, {bad} {}\n",
                if checked == 1 { "shape" } else { "shapes" },
                if bad == 1 { "mismatch" } else { "mismatches" }
            ));
            emit(&text)?;
            if summary.passed() {
                Ok(())
            } else {
                Err(internal(anyhow::anyhow!(
                    "verification failed for N <= {max_edo}"
                )))
            }
        }
        Command::Peck {
            n1,
            n2,
            sequence,
            all,
        } => {
            let shape = TriadShape::new(n1.min(n2), n1.max(n2), n1 + n2).map_err(usage)?;
            if all {
                let results = peck_sweep(&shape).map_err(usage)?;
                let mut text = String::new();
                for (word, kind) in &results {
                    text.push_str(&render_peck_line(word, *kind));
                    text.push('\n');
                }
                text.push_str(&tally_line(&results));
                text.push('\n');
                emit(&text)
            } else {
                let word = sequence.expect("clap requires --sequence without --all");
                let moves = parse_moves(&word).map_err(usage)?;
                let assembly = assemble(&shape, &moves).map_err(usage)?;
                emit(&format!("{}\n", classify_assembly(&assembly)))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code, error }) => {
            let kind = match code {
                EXIT_USAGE => "invalid input",
                EXIT_IO => "I/O error",
                _ => "verification error",
            };
            eprintln!("tonnetz: {kind}: {error:#}");
            ExitCode::from(code)
        }
    }
}
