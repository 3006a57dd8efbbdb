//! Command-line front end for `interchange-core`.

pub mod checks;
pub mod commands;
pub mod config;
pub mod output;

pub use commands::{run, Outcome};
pub use config::{Cli, Command, RunArgs, RunConfig};

/// Rendered output of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub text: String,
    pub failures: Vec<String>,
}

/// Runs the configured command and formats its table.
pub fn render(cfg: &RunConfig) -> anyhow::Result<Rendered> {
    let outcome = run(cfg)?;
    let text = outcome.table.render(cfg.format, cfg.command.as_str(), cfg);
    Ok(Rendered { text, failures: outcome.failures })
}

/// Parses `argv` and renders, without touching files or the thread pool.
pub fn render_args<I, T>(argv: I) -> anyhow::Result<Rendered>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;
    let cli = Cli::try_parse_from(argv)?;
    let (name, args) = cli.command.split();
    render(&RunConfig::resolve(name, args)?)
}
