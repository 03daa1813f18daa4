use std::process::ExitCode;

use clap::Parser;

use sbso_core::suite::list_suite;
use sbso_harness::formats::{emit_lcurves, emit_profiles, suite_manifest_tsv};
use sbso_harness::{load_history, run_experiment, HarnessError};

use sbso_harness::cli::{Cli, Command};

fn main() -> ExitCode {
    // clap exits with status 2 and usage text on parse errors.
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn execute(command: Command) -> Result<(), HarnessError> {
    match command {
        Command::Run(args) => {
            let config = args.into_config();
            let output = run_experiment(&config)?;
            eprintln!(
                "ran {} triples ({} solvers x {} problems x {} runs) -> {}",
                output.manifest.records.len(),
                output.history.n_solvers(),
                output.history.n_problems(),
                output.history.n_runs(),
                output.out_dir.display()
            );
            let failed = output.manifest.records.iter().filter(|r| !r.ok).count();
            if failed > 0 {
                eprintln!("warning: {failed} runs failed and carry sentinel traces");
            }
            Ok(())
        }
        Command::Sweep(args) => {
            let config = args.into_config();
            let output = run_experiment(&config)?;
            eprintln!(
                "swept {} variants over {} problems -> {}",
                output.history.n_solvers(),
                output.history.n_problems(),
                output.out_dir.display()
            );
            Ok(())
        }
        Command::Lcurves {
            results,
            out,
            problems,
        } => {
            let (history, entries, _) = load_history(&results)?;
            let f_mins: Vec<f64> = entries.iter().map(|e| e.f_min).collect();
            let out_dir = out.unwrap_or_else(|| results.join("lcurves"));
            let filter = if problems.is_empty() {
                None
            } else {
                Some(problems.as_slice())
            };
            let written = emit_lcurves(&history, &f_mins, &out_dir, filter)?;
            eprintln!("wrote {} L-curve files to {}", written.len(), out_dir.display());
            Ok(())
        }
        Command::Profiles { results, out, taus } => {
            let (history, _, _) = load_history(&results)?;
            let out_dir = out.unwrap_or_else(|| results.join("profiles"));
            let written = emit_profiles(&history, &taus, &out_dir)?;
            eprintln!(
                "wrote {} profile/report files to {}",
                written.len(),
                out_dir.display()
            );
            Ok(())
        }
        Command::List { suite, out } => {
            let tsv = suite_manifest_tsv(&list_suite(suite));
            match out {
                Some(path) => {
                    std::fs::write(&path, tsv).map_err(HarnessError::io(&path))?;
                }
                None => print!("{tsv}"),
            }
            Ok(())
        }
    }
}
