use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lpframes::harness::{self, find_suite, SuiteConfig, SUITES};

/// Environment variable naming the report directory.
const OUT_ENV: &str = "LPFRAMES_OUT";
const DEFAULT_OUT: &str = "lpframes-report";

#[derive(Parser)]
#[command(name = "lpframes", version, about = "Run the lpframes verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the suites selected by a TOML configuration and write the reports.
    Run {
        config: PathBuf,
        /// Report directory (overrides LPFRAMES_OUT).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print every suite name with the operation it exercises.
    ListSuites,
    /// Describe one suite.
    Describe { suite: String },
}

fn out_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from)).unwrap_or_else(|| PathBuf::from(DEFAULT_OUT))
}

fn run(config: &Path, out: &Path) -> ExitCode {
    let cfg = match SuiteConfig::load(config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = harness::run(cfg);
    if let Err(e) = report.write(out) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    print!("{}", report.summary());
    println!("reports written to {}", out.display());
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, out } => run(&config, &out_dir(out)),
        Command::ListSuites => {
            let width = SUITES.iter().map(|s| s.name.len()).max().unwrap_or(0);
            for s in SUITES {
                println!("{:<width$}  {}", s.name, s.anchor);
            }
            ExitCode::SUCCESS
        }
        Command::Describe { suite } => match find_suite(&suite) {
            Some(s) => {
                println!("{}", s.name);
                println!("  operation: {}", s.anchor);
                println!("  stage:     {}", s.stage.as_str());
                println!("  kind:      {}", if s.hard { "hard assertion" } else { "recorded constants" });
                if !s.deps.is_empty() {
                    println!("  needs:     {}", s.deps.join(", "));
                }
                println!("\n{}", s.description);
                ExitCode::SUCCESS
            }
            None => {
                eprintln!("error: unknown suite '{suite}' (see list-suites)");
                ExitCode::from(2)
            }
        },
    }
}
