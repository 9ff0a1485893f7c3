use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use slocc_cli::records::Mode;
use slocc_cli::verify::Suite;
use slocc_cli::{classify, orbit, verify};
use slocc_core::oracle::orbit::Canonical;
use slocc_core::ToleranceConfig;

#[derive(Parser)]
#[command(name = "slocc", version, about = "SLOCC classification of 3- and 4-qubit pure states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify line-delimited JSON state records.
    Classify {
        /// Input file, or `-` for stdin.
        input: PathBuf,
        /// Force every record into this mode instead of its own.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long, env = "SLOCC_EPS2")]
        eps2: Option<f64>,
        #[arg(long, env = "SLOCC_EPS4")]
        eps4: Option<f64>,
        /// Output file; stdout when omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Emit random orbit states of a canonical class.
    Orbit {
        /// One of ghz3, w3, a_bc, b_ac, c_ab, abc_product, ghz4, w4, c4,
        /// eprxepr, paironly4, separable4, tripleghz4, triplew4.
        #[arg(long, value_parser = parse_class)]
        class: Canonical,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run a property suite; exits 1 on any violation.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_class(s: &str) -> Result<Canonical, String> {
    Canonical::from_name(s).ok_or_else(|| {
        let names: Vec<_> = Canonical::ALL.iter().map(|c| c.name()).collect();
        format!("unknown class {s:?}; expected one of {}", names.join(", "))
    })
}

fn writer(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("slocc: {msg}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify {
            input,
            mode,
            eps2,
            eps4,
            output,
        } => {
            let defaults = ToleranceConfig::default();
            let tol = match ToleranceConfig::new(
                eps2.unwrap_or(defaults.eps2),
                eps4.unwrap_or(defaults.eps4),
                defaults.det_floor,
                defaults.norm_cap,
            ) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            let out = match writer(&output) {
                Ok(w) => w,
                Err(e) => return fail(format!("cannot open output: {e}")),
            };
            let result = if input.as_os_str() == "-" {
                classify::run(io::stdin().lock(), out, mode, &tol)
            } else {
                match File::open(&input) {
                    Ok(f) => classify::run(BufReader::new(f), out, mode, &tol),
                    Err(e) => return fail(format!("cannot open {}: {e}", input.display())),
                }
            };
            match result {
                Ok(0) => ExitCode::SUCCESS,
                Ok(_) => ExitCode::from(2),
                Err(e) => fail(e),
            }
        }
        Command::Orbit {
            class,
            seed,
            count,
            mode,
            output,
        } => match writer(&output).and_then(|w| orbit::run(class, seed, count, mode, w)) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(e),
        },
        Command::Verify { suite, trials, seed } => {
            let report = verify::run(suite, trials, seed);
            if let Err(e) = report.render(io::stdout().lock()) {
                return fail(e);
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
