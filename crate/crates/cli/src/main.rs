use std::process::ExitCode;

use clap::Parser;
use ulrich_cli::args::{Cli, Command, Format};
use ulrich_cli::commands::{self, CliError};
use ulrich_cli::config::Config;
use ulrich_cli::report::{render_json, render_markdown, Report};

fn load_config(cli: &Cli) -> Result<Config, CliError> {
    let mut cfg = Config::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        cfg.merge_toml(&text)?;
    }
    for r in &cli.ranges {
        cfg.apply_override(r)?;
    }
    if let Some(f) = cli.widen {
        cfg.widen(f)?;
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let cfg = load_config(cli)?;
    match &cli.command {
        Command::CheckUlrich { model, sheaf, h } => commands::check_ulrich(model, sheaf, h),
        Command::Coh { model, sheaf } => commands::coh_cmd(model, sheaf),
        Command::Classify { target, raw } => commands::classify((*target).into(), &cfg, *raw),
        Command::VerifyTheorem { golden } => commands::verify_theorem(&cfg, golden.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let json = report.to_json();
    let text = match cli.format {
        Format::Json => render_json(&json),
        Format::Md => render_markdown(&json),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        for c in report.checks.iter().filter(|c| !c.passed) {
            eprintln!("mismatch: {}: {}", c.name, c.detail);
        }
        ExitCode::from(1)
    }
}
