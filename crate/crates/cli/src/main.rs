use std::process::ExitCode;

use clap::Parser;
use interchange_cli::{render, Cli, RunConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let (name, args) = cli.command.split();
    let result = RunConfig::resolve(name, args).and_then(|cfg| {
        let rendered = render(&cfg)?;
        match &cfg.out {
            Some(path) => std::fs::write(path, &rendered.text)?,
            None => print!("{}", rendered.text),
        }
        Ok(rendered.failures)
    });
    match result {
        Ok(failures) if failures.is_empty() => ExitCode::SUCCESS,
        Ok(failures) => {
            for f in failures {
                eprintln!("tolerance breach: {f}");
            }
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
