//! Command-line front end for the soliton toolkit.
//!
//! Usage: `tiltwell <command> <config-file> [--key value]...`
//! where `--key value` pairs override entries from the config file.

use std::path::Path;
use std::process::ExitCode;

mod commands;
mod config;

use config::{CliError, Config};

const COMMANDS: &[&str] = &["kink", "minima", "action", "overlap", "delta-demo", "sweep"];

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn execute(args: &[String]) -> Result<(), CliError> {
    let Some(command) = args.first() else {
        return Err(CliError::config(format!(
            "usage: tiltwell <command> <config-file> [--key value]...\n\
             commands: {}",
            COMMANDS.join(", ")
        )));
    };
    if !COMMANDS.contains(&command.as_str()) {
        return Err(CliError::config(format!(
            "unknown command `{command}` (expected one of: {})",
            COMMANDS.join(", ")
        )));
    }
    let Some(path) = args.get(1) else {
        return Err(CliError::config(format!(
            "command `{command}` needs a config file path"
        )));
    };
    let overrides = parse_overrides(&args[2..])?;
    let config = Config::load(command, Path::new(path), &overrides)?;
    commands::run(&config)
}

fn parse_overrides(args: &[String]) -> Result<Vec<(String, String)>, CliError> {
    let mut overrides = Vec::new();
    let mut iter = args.iter();
    while let Some(flag) = iter.next() {
        let Some(key) = flag.strip_prefix("--") else {
            return Err(CliError::config(format!(
                "expected `--key value` override, got `{flag}`"
            )));
        };
        if key.is_empty() {
            return Err(CliError::config("override flag `--` has no key".to_string()));
        }
        let Some(value) = iter.next() else {
            return Err(CliError::config(format!("override `--{key}` has no value")));
        };
        overrides.push((key.to_string(), value.clone()));
    }
    Ok(overrides)
}
