use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tauhh::cohomology::{ComputeOptions, DEFAULT_BAR_CAP};
use tauhh::selfcheck::{run_selfcheck, Bounds};
use tauhh_cli::{exit, parse_field, report_from_file, ReportSettings};

#[derive(Parser)]
#[command(name = "tauhh", version, about = "Hochschild and tau-Hochschild invariants of bound quiver algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute every invariant of a presentation file, checking all routes.
    Report {
        file: PathBuf,
        /// Ground field, `q` or `fp:<p>`; overrides the file.
        #[arg(long, value_parser = parse_field)]
        field: Option<tauhh::linalg::Field>,
        /// Largest nilpotency degree searched for admissibility.
        #[arg(long, default_value_t = tauhh::bqa::DEFAULT_LENGTH_CAP)]
        cap: usize,
        /// Largest bar complex (basis of C^3) that is built.
        #[arg(long, default_value_t = DEFAULT_BAR_CAP)]
        bar_cap: usize,
        /// Emit JSON instead of the table.
        #[arg(long)]
        json: bool,
        /// Skip the bar complex routes.
        #[arg(long)]
        skip_bar: bool,
        /// Print nothing; report through the exit code.
        #[arg(long)]
        quiet: bool,
    },
    /// Check random presentations against every route and closed form.
    Selfcheck {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = Bounds::default().max_vertices)]
        max_vertices: usize,
        #[arg(long, default_value_t = Bounds::default().max_arrows)]
        max_arrows: usize,
    },
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Report { file, field, cap, bar_cap, json, skip_bar, quiet } => {
            let settings = ReportSettings {
                field,
                length_cap: cap,
                compute: ComputeOptions { bar: !skip_bar, bar_cap },
            };
            match report_from_file(&file, &settings) {
                Ok(doc) => {
                    if !quiet {
                        if json {
                            emit(&format!("{}\n", doc.to_json()));
                        } else {
                            emit(&doc.render_text());
                        }
                    }
                    doc.exit_code()
                }
                Err(f) => {
                    eprintln!("error: {}", f.message);
                    f.code
                }
            }
        }
        Command::Selfcheck { seed, count, max_vertices, max_arrows } => {
            let summary = run_selfcheck(seed, count, Bounds { max_vertices, max_arrows });
            emit(&summary.render());
            if summary.ok() {
                exit::OK
            } else {
                exit::MISMATCH
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::INPUT as u8 } else { exit::OK as u8 });
        }
    };
    ExitCode::from(run(cli) as u8)
}
