use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use jacsyz::corpus::run_corpus;
use jacsyz::report::{self, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
use jacsyz::{analyze_text, parse_vars, AnalyzeError, AnalyzeOptions, FieldMode};

#[derive(Parser)]
#[command(name = "jacsyz", version, about = "Graded invariants of Jacobian ideals of projective hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one homogeneous polynomial.
    Analyze {
        /// Polynomial text, e.g. "x^2*y^2 + z^4".
        #[arg(long)]
        poly: String,
        /// Comma-separated variable names.
        #[arg(long, default_value = "x,y,z")]
        vars: String,
        /// exact, mod:<prime> or mod:random
        #[arg(long, default_value = "exact")]
        field: FieldMode,
        /// Truncation degree (default T + 2n + 4).
        #[arg(long)]
        kmax: Option<usize>,
        /// Candidate complete-intersection degrees a_1,..,a_n.
        #[arg(long, value_delimiter = ',')]
        ci_degrees: Option<Vec<usize>>,
        /// Write the JSON report here ("-" for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the per-degree CSV table here ("-" for stdout).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the built-in example corpus against its golden values.
    Corpus {
        /// Only entries whose name contains this substring.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, default_value = "exact")]
        field: FieldMode,
    },
}

fn write_out(path: &Path, content: &str) -> std::io::Result<()> {
    if path.as_os_str() == "-" {
        print!("{content}");
        Ok(())
    } else {
        fs::write(path, content)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { EXIT_OK as u8 });
        }
    };
    let code = match cli.command {
        Command::Analyze {
            poly,
            vars,
            field,
            kmax,
            ci_degrees,
            json,
            csv,
        } => {
            let options = AnalyzeOptions {
                field,
                kmax,
                ci_degrees,
            };
            let result = analyze_text(&poly, &parse_vars(&vars), &options);
            let code = report::exit_code(&result);
            let report = match &result {
                Ok(r) => Some(r),
                Err(AnalyzeError::NonIsolated(r)) => {
                    eprintln!("warning: {}", result.as_ref().unwrap_err());
                    Some(r.as_ref())
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    None
                }
            };
            if let Some(r) = report {
                let to_stdout = |p: &Option<PathBuf>| p.as_deref().is_some_and(|p| p.as_os_str() == "-");
                if !to_stdout(&json) && !to_stdout(&csv) {
                    print!("{}", report::summary(r));
                }
                let mut io_failed = false;
                if let Some(path) = &json {
                    if let Err(e) = write_out(path, &report::to_json(r)) {
                        eprintln!("error: writing {}: {e}", path.display());
                        io_failed = true;
                    }
                }
                if let Some(path) = &csv {
                    if let Err(e) = write_out(path, &report::to_csv(r)) {
                        eprintln!("error: writing {}: {e}", path.display());
                        io_failed = true;
                    }
                }
                if io_failed {
                    return ExitCode::from(EXIT_USAGE as u8);
                }
            }
            code
        }
        Command::Corpus { filter, field } => {
            let summary = run_corpus(filter.as_deref(), field);
            for o in &summary.outcomes {
                let status = match &o.result {
                    Ok(_) if o.identities_pass() && o.mismatches.is_empty() => "PASS".to_string(),
                    Ok(r) if !r.identities_pass() => format!(
                        "FAIL identities: {}",
                        r.failed_checks().iter().map(|c| c.name.as_str()).collect::<Vec<_>>().join(", ")
                    ),
                    Ok(_) => "MISMATCH".to_string(),
                    Err(e) => format!("FAIL {e}"),
                };
                println!("{:<26} {status}", o.name);
                for m in &o.mismatches {
                    println!("    {m}");
                }
            }
            if summary.outcomes.is_empty() {
                println!("no corpus entries match");
            }
            if !field.is_exact() && summary.mismatches().next().is_some() {
                println!("note: modular dimensions differ from the exact golden values (unlucky prime?)");
            }
            if summary.passed() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
    };
    ExitCode::from(code as u8)
}
