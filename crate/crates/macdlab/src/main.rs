use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use macdlab::cli_verify::{compute, run_suite, Caps, Format, Object, Suite, SuiteConfig};
use macdlab::combinatorics::{Composition, Partition};

#[derive(Parser)]
#[command(name = "macdlab", version, about = "Stable-limit non-symmetric Macdonald functions, computed and checked exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one object in text or JSON.
    Compute {
        object: Object,
        /// Comma-separated composition, e.g. `1,0,2`.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        mu: String,
        /// Comma-separated partition.
        #[arg(long, default_value = "")]
        lambda: String,
        /// Number of variables for `E`.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite; exits 0 iff every instance passes.
    Verify {
        suite: Suite,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        degree: Option<usize>,
        /// Bound on `|mu| + |lambda|` or `|lambda|` of the instances.
        #[arg(long = "max-size", visible_alias = "max")]
        max_size: Option<usize>,
        /// Last step of convergence checks.
        #[arg(long)]
        max_m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `json` gives one JSON line per instance.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn run(cli: Cli) -> Result<bool, Box<dyn std::error::Error>> {
    let caps = Caps::from_env()?;
    match cli.command {
        Command::Compute { object, mu, lambda, n, format, out } => {
            let mu: Composition = mu.parse()?;
            let lambda: Partition = lambda.parse()?;
            let s = compute(object, &mu, &lambda, n, format, &caps)?;
            emit(&out, &format!("{s}\n"))?;
            Ok(true)
        }
        Command::Verify { suite, n, degree, max_size, max_m, seed, format, out } => {
            let cfg = SuiteConfig { caps, seed, n, degree, max_size, max_m };
            let reports = run_suite(suite, &cfg)?;
            let mut text = String::new();
            for r in &reports {
                let line = match format {
                    Format::Json => r.to_json_line(),
                    Format::Text => r.to_string(),
                };
                text.push_str(&line);
                text.push('\n');
            }
            emit(&out, &text)?;
            let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
            for r in &failed {
                eprintln!("{r}");
            }
            if reports.is_empty() {
                eprintln!("no instances");
            }
            Ok(failed.is_empty() && !reports.is_empty())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
