//! Command-line front end for `matchlab-core`: JSON file formats, run
//! manifests, certificate replay and CSV sweeps.

pub mod cli;
mod commands;
pub mod error;
mod folner;
pub mod manifest;
pub mod schema;
mod sweep;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::process::ExitCode;

use clap::{ColorChoice, CommandFactory, FromArgMatches};
use serde_json::{json, Value};

use crate::cli::{Cli, Command, FolnerCommand, MeansCommand, RamseyCommand};
use crate::error::{CliError, Outcome};

/// What a subcommand produced: an outcome, a JSON report and a text summary.
#[derive(Debug)]
pub struct Report {
    pub outcome: Outcome,
    pub json: Value,
    pub text: String,
}

impl Report {
    pub(crate) fn new(outcome: Outcome, json: Value, text: impl Into<String>) -> Self {
        Self { outcome, json, text: text.into() }
    }
}

/// Parses `argv` (program name first), runs the command and prints its report.
pub fn run<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let mut command = Cli::command();
    if std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty()) {
        command = command.color(ColorChoice::Never);
    }
    let cli = match command.try_get_matches_from(&argv).and_then(|m| Cli::from_arg_matches(&m)) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { Outcome::Invalid.into() } else { Outcome::Pass.into() };
        }
    };
    // recorded without the program path so replays match across install locations
    let recorded: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let json = cli.json;
    match execute(cli.command, recorded) {
        Ok(report) => {
            let mut stdout = std::io::stdout().lock();
            let _ = if json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&report.json).expect("json values serialize"))
            } else {
                writeln!(stdout, "{}", report.text)
            };
            report.outcome.into()
        }
        Err(err) => {
            if json {
                let body = json!({ "error": err.code(), "message": err.to_string() });
                println!("{}", serde_json::to_string_pretty(&body).expect("json values serialize"));
            }
            eprintln!("error: {err}");
            err.outcome().into()
        }
    }
}

/// Runs a parsed command. `argv` is recorded in emitted manifests.
pub fn execute(command: Command, argv: Vec<String>) -> Result<Report, CliError> {
    match command {
        Command::Cover(args) => commands::cover(args),
        Command::Mu(args) => commands::mu(args),
        Command::Match(args) => commands::matching(args),
        Command::Folner(cmd) => match cmd {
            FolnerCommand::Search(args) => folner::search(args, argv),
            FolnerCommand::Check(args) => verify::verify(&args.file),
            FolnerCommand::Adversary(args) => folner::adversary(args, argv),
            FolnerCommand::Net(args) => folner::net(args),
            FolnerCommand::Mono(args) => folner::mono(args),
        },
        Command::Means(cmd) => match cmd {
            MeansCommand::Convolve(args) => commands::convolve(args),
            MeansCommand::Rationalize(args) => commands::rationalize(args),
            MeansCommand::Push(args) => commands::push(args),
        },
        Command::Ramsey(RamseyCommand::Check(args)) => commands::ramsey(args, argv),
        Command::Sweep(args) => sweep::sweep(args),
        Command::Verify(args) => verify::verify(&args.file),
    }
}
