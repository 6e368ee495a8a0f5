//! Thin CLI over the library: parses flags, resolves the config, runs one
//! subcommand, and writes the artifact (JSON or CSV, plus an optional SVG).

use addfn::report::config::{CommonArgs, ExperimentConfig, OutputFormat};
use addfn::report::{run_command, Command};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "addfn",
    version,
    about = "Statistics of additive arithmetic functions over sieved integer ranges"
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Prime and prime-power counts for the requested scales.
    Sieve(CommonArgs),
    /// Global functionals: mean, approximate variance, tails, moments.
    Stats(CommonArgs),
    /// Gap moments, decrease-set census, telescoping identity.
    Gaps(CommonArgs),
    /// Short-interval discrepancies l1/l2 with bound terms.
    Interval(CommonArgs),
    /// Pretentious-distance diagnostics of the multiplicative twist.
    Pretentious(CommonArgs),
    /// Dual Turan-Kubilius ratios for a chosen sequence.
    Dualtk(CommonArgs),
    /// Sparse-set variance decomposition.
    Sparse(CommonArgs),
    /// Logarithm-rigidity pipeline with verdict.
    Erdos(CommonArgs),
    /// Run the whole acceptance table and print pass/fail lines.
    Report(CommonArgs),
}

impl CliCommand {
    fn split(self) -> (Command, CommonArgs) {
        match self {
            CliCommand::Sieve(a) => (Command::Sieve, a),
            CliCommand::Stats(a) => (Command::Stats, a),
            CliCommand::Gaps(a) => (Command::Gaps, a),
            CliCommand::Interval(a) => (Command::Interval, a),
            CliCommand::Pretentious(a) => (Command::Pretentious, a),
            CliCommand::Dualtk(a) => (Command::Dualtk, a),
            CliCommand::Sparse(a) => (Command::Sparse, a),
            CliCommand::Erdos(a) => (Command::Erdos, a),
            CliCommand::Report(a) => (Command::Report, a),
        }
    }
}

fn real_main() -> addfn::Result<i32> {
    let cli = Cli::parse();
    let (cmd, args) = cli.command.split();
    let cfg = ExperimentConfig::from_args(&args)?;
    if cfg.plot && cfg.out.is_none() {
        return Err(addfn::Error::Configuration(
            "--plot needs --out to name the SVG file".into(),
        ));
    }
    let out = run_command(cmd, &cfg)?;
    for line in &out.stdout_lines {
        println!("{line}");
    }
    let artifact = match cfg.format {
        OutputFormat::Json => out.report.to_json(),
        OutputFormat::Csv => out.table.to_csv(),
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, artifact)?,
        None => print!("{artifact}"),
    }
    if let (Some(svg), Some(path)) = (&out.svg, &cfg.out) {
        std::fs::write(path.with_extension("svg"), svg)?;
    }
    Ok(if out.all_passed { 0 } else { 1 })
}

fn main() {
    match real_main() {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
