use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cdgl_core::cosimplicial::{build_ln, default_truncation};
use cdgl_core::quillen::{FiniteSimplicialSet, Lambda};
use cdgl_core::verify::{run_suite, Model, Suite, SuiteOptions};
use cdgl_core::Error;

#[derive(Parser)]
#[command(name = "cdgl", version, about = "Build and verify Lawrence-Sullivan simplices, realizations and Quillen models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Write the presentation of L_n with its solver trace.
    BuildLn {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        /// Word-length truncation; 4 for n <= 3 and 3 above when omitted.
        #[arg(long)]
        truncation: Option<usize>,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and print its report.
    Verify {
        #[arg(value_parser = ["lemma", "ln-conditions", "ez-aw", "bch", "phi", "homotopy", "ce"])]
        suite: String,
        #[arg(long)]
        truncation: Option<usize>,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// s2 or s2vs2.
        #[arg(long, default_value = "s2")]
        model: String,
        /// A dgl presentation used instead of the model (homotopy, ce).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Include per-check timings (output is then no longer reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Homology of lambda(X) for a reduced finite simplicial set X.
    Lambda {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        truncation: usize,
        #[arg(long, default_value_t = 3)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn read(path: &PathBuf) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::BuildLn { n, truncation, out } => {
            let n = usize::try_from(n).map_err(|_| Error::input(format!("n must be non-negative, got {n}")))?;
            let t = truncation.unwrap_or(default_truncation(n));
            let text = build_ln(n, t)?.to_text();
            match out {
                Some(p) => fs::write(&p, text)?,
                None => print!("{text}"),
            }
            Ok(true)
        }
        Command::Verify {
            suite,
            truncation,
            cap,
            seed,
            format,
            model,
            input,
            timings,
        } => {
            let opts = SuiteOptions {
                truncation,
                cap,
                seed,
                model: model.parse::<Model>()?,
                input: input.as_ref().map(read).transpose()?,
            };
            let report = run_suite(suite.parse::<Suite>()?, &opts)?;
            let report = if timings { report } else { report.without_timings() };
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => print!("{}", report.to_json()),
            }
            Ok(report.passed())
        }
        Command::Lambda {
            input,
            truncation,
            cap,
            format,
        } => {
            let space = FiniteSimplicialSet::from_json(&read(&input)?)?;
            let lambda = Lambda::new(space, truncation, cap)?;
            let rows = lambda.homology();
            match format {
                Format::Text => {
                    println!("H(λX), truncation {truncation}");
                    for r in &rows {
                        println!(
                            "degree {}: {} (chains {}, cycles {}, boundaries {})",
                            r.degree,
                            r.homology(),
                            r.chains,
                            r.cycles,
                            r.boundaries
                        );
                    }
                }
                Format::Json => {
                    let v = serde_json::json!({
                        "truncation": truncation,
                        "cap": cap,
                        "degrees": rows.iter().map(|r| serde_json::json!({
                            "degree": r.degree,
                            "dimension": r.homology(),
                            "chains": r.chains,
                            "cycles": r.cycles,
                            "boundaries": r.boundaries,
                        })).collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&v)?);
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("cdgl: {e}");
            if e.is_input() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
