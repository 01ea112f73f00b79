use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use curvegen::dsl;
use curvegen::p1;
use curvegen::report;
use curvegen::selftest;

#[derive(Parser)]
#[command(
    name = "curvegen",
    about = "Generator and classical-generator analysis on smooth projective curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a DSL request file and print a report.
    Analyze {
        /// Path to the request file.
        file: String,
        /// Emit the machine-readable JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Exact brute-force oracles.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
    /// Run the built-in property suites.
    Selftest,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Exhaustive line-bundle checks on the projective line.
    P1 {
        #[arg(long, default_value_t = 20)]
        max_degree: i64,
    },
}

// exit codes: 0 success, 1 analysis error, 2 parse error
fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze { file, json } => {
            let source = match fs::read_to_string(&file) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: cannot read {file}: {e}");
                    return ExitCode::from(1);
                }
            };
            let req = match dsl::parse(&source) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match report::run(&req) {
                Ok(rep) => {
                    if json {
                        println!("{}", report::to_json(&rep));
                    } else {
                        print!("{}", report::to_text(&rep));
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Command::Oracle { which } => match which {
            OracleCommand::P1 { max_degree } => {
                if max_degree < 1 {
                    eprintln!("error: --max-degree must be at least 1");
                    return ExitCode::from(1);
                }
                let cross = p1::euler_cross_check(max_degree);
                let pairs = p1::semiorthogonal_pairs(max_degree);
                let offset_law_holds = pairs.iter().all(|(a, b)| *b == a - 1)
                    && pairs.len() as i64 == 2 * max_degree;
                let out = serde_json::json!({
                    "oracle": "p1",
                    "euler_cross_check": cross,
                    "semiorthogonal_pairs": pairs,
                    "offset_law_holds": offset_law_holds,
                });
                println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
                if cross.failures == 0 && offset_law_holds {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
        },
        Command::Selftest => {
            if selftest::run_selftest() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
