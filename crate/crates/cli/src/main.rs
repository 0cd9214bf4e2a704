//! `conebound` command-line front end.
//!
//! Exit status: 0 on success, 2 when the run produced a mathematical finding
//! (bound or hypothesis violated, degenerate cone), 1 on tool errors.

mod args;
mod commands;
mod error;
mod output;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde_json::Value;

use args::{Cli, Command, Format, Models, Verify};
use commands::{Outcome, RunConfig};
use error::CliError;

const THREADS_ENV: &str = "CONEBOUND_THREADS";

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::InvalidFlag(format!("{THREADS_ENV}={raw:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::InvalidFlag(format!("{THREADS_ENV}: {e}")))
}

fn out_path(cmd: &Command) -> Option<&Path> {
    match cmd {
        Command::Verify(Verify::Theorem1(a)) => a.family.out.as_deref(),
        Command::Verify(Verify::Theorem2(a)) => a.family.out.as_deref(),
        Command::Verify(Verify::ProofIdentities(a)) => a.family.out.as_deref(),
        Command::FitCone(a) => a.out.as_deref(),
        Command::CornerTest(a) => a.out.as_deref(),
        Command::AEta(a) => a.out.as_deref(),
        Command::Models(Models::Stochastic(a)) => a.out.as_deref(),
        Command::Models(Models::Sharpness(a)) => a.out.as_deref(),
        Command::Plot(a) => a.out.as_deref(),
    }
}

fn emit(bytes: &[u8], out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::io(p, e)),
        None => std::io::stdout().write_all(bytes).map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn render(config: &RunConfig, outcome: &Outcome, format: Format) -> Result<Vec<u8>, CliError> {
    let mut doc = match &outcome.body {
        Value::Object(map) => map.clone(),
        other => {
            let mut m = serde_json::Map::new();
            m.insert("report".into(), other.clone());
            m
        }
    };
    doc.insert("config".into(), serde_json::to_value(config)?);
    let doc = Value::Object(doc);
    Ok(match format {
        Format::Json => output::to_json(&doc)?,
        Format::Csv => output::to_csv(&doc),
    })
}

fn run(cli: &Cli) -> Result<(Option<String>, String), CliError> {
    configure_threads()?;
    let out = out_path(&cli.command);
    if let Command::Plot(a) = &cli.command {
        let (bytes, summary) = commands::plot(a)?;
        emit(&bytes, out)?;
        return Ok((None, summary));
    }
    let outcome = match &cli.command {
        Command::Verify(Verify::Theorem1(a)) => commands::theorem1(a),
        Command::Verify(Verify::Theorem2(a)) => commands::theorem2(a),
        Command::Verify(Verify::ProofIdentities(a)) => commands::proof_identities(a),
        Command::FitCone(a) => commands::fit_cone(a),
        Command::CornerTest(a) => commands::corner(a),
        Command::AEta(a) => commands::a_eta(a),
        Command::Models(Models::Stochastic(a)) => commands::stochastic(a),
        Command::Models(Models::Sharpness(a)) => commands::sharpness(a),
        Command::Plot(_) => unreachable!("handled above"),
    }?;
    let config = RunConfig::for_command(&cli.command, cli.format);
    emit(&render(&config, &outcome, cli.format)?, out)?;
    Ok((outcome.finding, outcome.summary))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((finding, summary)) => {
            if !cli.quiet {
                eprintln!("{summary}");
            }
            match finding {
                Some(kind) => {
                    if !cli.quiet {
                        eprintln!("finding: {kind}");
                    }
                    ExitCode::from(2)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
