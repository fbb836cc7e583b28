use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use vortexab_cli::{run, CliError, Command, Overrides, Source};

#[derive(Parser)]
#[command(name = "vortexab", version, about = "Capillary-gravity wave scattering by a Rankine vortex")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dispersion table and attenuation times
    Dispersion(RunArgs),
    /// Modal coefficients a_n..e_n with condition numbers
    Coefficients(RunArgs),
    /// Surface elevation grid as PGM plus raw CSV
    Field(RunArgs),
    /// Far-field correction to the Aharonov-Bohm amplitude
    Farfield(RunArgs),
    /// Coefficients and far field for every (alpha, beta, delta) tuple
    Sweep(RunArgs),
    /// Manifest with derived groups and warnings only
    Validate(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Preset name, as an alternative to --preset
    #[arg(value_name = "PRESET")]
    preset_positional: Option<String>,
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long = "ncore", value_name = "N")]
    n_core: Option<i64>,
    #[arg(long = "nab", value_name = "N")]
    n_ab: Option<i64>,
    #[arg(long, value_name = "X", allow_negative_numbers = true)]
    phase: Option<f64>,
    #[arg(long, value_name = "N")]
    resolution: Option<usize>,
}

fn execute(cli: Cli) -> Result<Vec<PathBuf>, CliError> {
    let (command, args) = match cli.command {
        Cmd::Dispersion(a) => (Command::Dispersion, a),
        Cmd::Coefficients(a) => (Command::Coefficients, a),
        Cmd::Field(a) => (Command::Field, a),
        Cmd::Farfield(a) => (Command::Farfield, a),
        Cmd::Sweep(a) => (Command::Sweep, a),
        Cmd::Validate(a) => (Command::Validate, a),
    };
    let preset = match (args.preset, args.preset_positional) {
        (Some(_), Some(_)) => return Err(CliError::Usage("preset given twice".into())),
        (p, q) => p.or(q),
    };
    let source = match (args.config, preset) {
        (Some(path), None) => Source::Config(path),
        (None, Some(name)) => Source::Preset(name),
        _ => return Err(CliError::Usage("give exactly one of --config and --preset".into())),
    };
    let overrides = Overrides {
        out: args.out,
        n_core: args.n_core,
        n_ab: args.n_ab,
        phase: args.phase,
        resolution: args.resolution,
    };
    run(command, &source, &overrides)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let first = e.to_string().lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            eprintln!("{}", CliError::Usage(first).report_line());
            return ExitCode::from(2);
        }
    };
    match execute(cli) {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.report_line());
            ExitCode::from(1)
        }
    }
}
