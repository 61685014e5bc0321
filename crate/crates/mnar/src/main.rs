use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mnar::cli::{self, Mode, RunConfig};
use mnar::closed::MinsupSpec;
use mnar::error::Error;
use mnar::format::OutputFormat;
use mnar::rulegen::MinconfSpec;

/// Mine minimal non-redundant association rules from transaction data.
#[derive(Parser)]
#[command(name = "mnar", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mine rules and print them.
    Mine(MineArgs),
    /// Print the closed-pattern lattice.
    Lattice(CommonArgs),
    /// Print frequent and closed itemset counts.
    Stats(CommonArgs),
    /// Time the pipeline stages.
    Bench(BenchArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Input file: whitespace-separated items, one transaction per line.
    input: PathBuf,

    /// Minimum support, a fraction ("0.5") or absolute count ("3t").
    #[arg(long)]
    minsup: String,

    /// Output format: text, csv, or json.
    #[arg(long, default_value = "text")]
    format: String,

    /// Write primary output to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MineArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Minimum confidence, a decimal ("0.8") or fraction ("4/5").
    #[arg(long)]
    minconf: String,

    /// Cross-check the output against a brute-force reference
    /// implementation (small inputs only).
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Minimum confidence, a decimal ("0.8") or fraction ("4/5").
    #[arg(long)]
    minconf: String,

    /// Number of timed pipeline repetitions.
    #[arg(long, default_value_t = 3)]
    repeat: u32,
}

fn build_config(cli: Cli) -> Result<RunConfig, Error> {
    let (mode, common, minconf, verify, repeat) = match cli.command {
        Command::Mine(a) => (Mode::Mine, a.common, Some(a.minconf), a.verify, 1),
        Command::Lattice(c) => (Mode::Lattice, c, None, false, 1),
        Command::Stats(c) => (Mode::Stats, c, None, false, 1),
        Command::Bench(a) => (Mode::Bench, a.common, Some(a.minconf), false, a.repeat),
    };
    Ok(RunConfig {
        mode,
        input: common.input,
        minsup: MinsupSpec::parse(&common.minsup)?,
        minconf: minconf.as_deref().map(MinconfSpec::parse).transpose()?,
        format: common.format.parse::<OutputFormat>()?,
        output: common.output,
        verify,
        repeat,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version surface as parse "errors" but exit cleanly.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let config = match build_config(cli) {
        Ok(config) => config,
        Err(e) => return fail(&e),
    };
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut diag = stderr.lock();
    match cli::run(&config, &mut out, &mut diag) {
        Ok(()) => {
            let _ = out.flush();
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("mnar: {e}");
    ExitCode::from(e.exit_code() as u8)
}
