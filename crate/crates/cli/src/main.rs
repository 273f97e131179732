use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

mod args;
mod commands;
mod manifest;

use args::{Cli, Command};
use commands::RunLog;
use manifest::{records, write_manifest, ErrorRecord, RunManifest, MANIFEST_NAME};

fn main() -> ExitCode {
    ExitCode::from(dispatch(std::env::args_os()) as u8)
}

/// Parses `argv`, runs the subcommand and writes its manifest into the
/// output directory, if one was named. Returns the process exit code.
fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };

    let started = Instant::now();
    let mut log = RunLog::default();
    let (parameters, out, result) = match &cli.command {
        Command::Synth(a) => (serde_json::to_value(a), Some(a.out.clone()), commands::synth(a, &mut log)),
        Command::Ingest(a) => (serde_json::to_value(a), Some(a.out.clone()), commands::ingest(a, &mut log)),
        Command::Sample(a) => (serde_json::to_value(a), Some(a.out.clone()), commands::sample(a, &mut log)),
        Command::Discover(a) => (serde_json::to_value(a), Some(a.out.clone()), commands::discover(a, &mut log)),
        Command::LdaTrain(a) => (serde_json::to_value(a), Some(a.out.clone()), commands::lda_train_cmd(a, &mut log)),
        Command::Featurize(a) => (serde_json::to_value(a), Some(a.out.clone()), commands::featurize(a, &mut log)),
        Command::Train(a) => (serde_json::to_value(a), Some(a.out.clone()), commands::train(a, &mut log)),
        Command::Cv(a) => (serde_json::to_value(a), a.out.clone(), commands::cv(a, &mut log)),
        Command::Sweep(a) => (serde_json::to_value(a), Some(a.out.clone()), commands::sweep(a, &mut log)),
        Command::Baseline(a) => (serde_json::to_value(a), a.out.clone(), commands::baseline(a, &mut log)),
        Command::Report(a) => (serde_json::to_value(a), a.out.clone(), commands::report(a, &mut log)),
    };

    let (exit_code, error) = match &result {
        Ok(()) => (0, None),
        Err(e) => {
            eprintln!("error: {e}");
            (e.exit_code(), Some(ErrorRecord { message: e.to_string(), exit_code: e.exit_code() }))
        }
    };
    if let Some(dir) = log.out_dir.clone().or(out) {
        let run = RunManifest {
            command: cli.command.name().to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            parameters: parameters.unwrap_or_default(),
            rng_seed: log.seed,
            inputs: records(&log.inputs),
            outputs: records(&log.outputs),
            duration_secs: started.elapsed().as_secs_f64(),
            exit_code,
            error,
        };
        if let Err(e) = write_manifest(&run, &dir.join(MANIFEST_NAME)) {
            eprintln!("error: Io: cannot write manifest: {e}");
            return if exit_code == 0 { 2 } else { exit_code };
        }
    }
    exit_code
}
