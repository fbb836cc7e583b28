//! Command-line front end: configuration, presets, subcommands and file output.

pub mod config;
pub mod error;
pub mod output;
pub mod presets;
pub mod run;

pub use config::{parse_config, RunConfig, Strength, WaveSpec};
pub use error::{CliError, CliResult};
pub use presets::figure_preset;
pub use run::{run, Command, Overrides, Source};
