use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use macroscope_cli::commands::{self, SearchArgs};
use macroscope_cli::report::{write_rows, Format};
use macroscope_cli::scenario::parse_scenario;
use macroscope_cli::{ceiling_from_env, CliError, Status};
use macroscope_core::{Blindness, ProtocolKind};

#[derive(Parser)]
#[command(
    name = "macroscope",
    version,
    about = "Simulate, verify and cost blackboard protocols for macroscopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every input of a scenario file and write a report.
    Run {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
    /// Exhaustively verify a protocol on the fixture structures up to N.
    Verify {
        #[arg(long)]
        protocol: ProtocolKind,
        #[arg(long)]
        max_n: usize,
        /// Alphabet size for Constancy (and for the generic protocols).
        #[arg(long)]
        d: Option<u32>,
    },
    /// Find the cheapest correct protocol on a tiny instance.
    Search {
        #[arg(long)]
        function: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// A structure JSON file, or one of partition, nof, even_cyclic,
        /// random_covering, singletons, full.
        #[arg(long)]
        structure: String,
        #[arg(long)]
        blindness: Blindness,
        #[arg(long)]
        budget: usize,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        /// Set size for even_cyclic.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        density: Option<f64>,
    },
    /// Print the cost formula of every applicable protocol.
    Bounds {
        #[arg(long)]
        scenario: PathBuf,
    },
}

fn execute(command: Command) -> Result<Status, CliError> {
    let ceiling = ceiling_from_env()?;
    match command {
        Command::Run {
            scenario,
            out,
            format,
        } => {
            let scenarios = parse_scenario(&scenario)?;
            let outcome = commands::run_scenarios(&scenarios, ceiling)?;
            let io_err = |source| CliError::Io {
                path: out.clone(),
                source,
            };
            let mut file = BufWriter::new(File::create(&out).map_err(io_err)?);
            write_rows(&outcome.rows, format, &mut file)?;
            file.flush().map_err(io_err)?;
            let bad = outcome.rows.iter().filter(|r| !r.correct).count();
            if bad > 0 {
                eprintln!("{bad} of {} rows incorrect", outcome.rows.len());
                for line in outcome.problems.iter().take(20) {
                    eprintln!("  {line}");
                }
            }
            Ok(outcome.status())
        }
        Command::Verify { protocol, max_n, d } => {
            let (text, status) = commands::verify(protocol, max_n, d, ceiling)?;
            print!("{text}");
            Ok(status)
        }
        Command::Search {
            function,
            n,
            k,
            structure,
            blindness,
            budget,
            d,
            seed,
            m,
            density,
        } => {
            let args = SearchArgs {
                function,
                d,
                n,
                k,
                structure,
                blindness,
                budget,
                seed,
                m,
                density,
            };
            print!("{}", commands::search(&args, ceiling)?);
            Ok(Status::Ok)
        }
        Command::Bounds { scenario } => {
            let scenarios = parse_scenario(&scenario)?;
            print!("{}", commands::bounds(&scenarios)?);
            Ok(Status::Ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(Status::ConfigError as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let status = match execute(cli.command) {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(io::stderr(), "error: {e}");
            Status::ConfigError
        }
    };
    ExitCode::from(status as u8)
}
