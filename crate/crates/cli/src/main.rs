mod args;
mod commands;
mod error;
mod identities;
mod output;
mod range;
mod verify;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::{CliError, CliResult};

const JOBS_ENV: &str = "ZEROCROSS_JOBS";

/// Worker count: the environment beats the flag; `None` means all cores.
fn jobs(flag: Option<usize>) -> CliResult<Option<usize>> {
    let n = match std::env::var(JOBS_ENV) {
        Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| CliError::config(format!("{JOBS_ENV}={v:?} is not a count")))?),
        Err(std::env::VarError::NotPresent) => flag,
        Err(e) => return Err(CliError::config(format!("{JOBS_ENV}: {e}"))),
    };
    match n {
        Some(0) => Err(CliError::config("worker count must be at least 1")),
        n => Ok(n),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs(cli.jobs)?.unwrap_or(0))
        .build()
        .map_err(|e| CliError::config(format!("cannot start worker pool: {e}")))?;
    pool.install(|| match &cli.command {
        Command::SweepPhase(a) => commands::sweep_phase(a),
        Command::MeanVsN(a) => commands::mean_vs_n(a),
        Command::EnergyCurve(a) => commands::energy_curve(a),
        Command::RhoG(a) => commands::rho_g(a),
        Command::FockDist(a) => commands::fock_dist(a),
        Command::DoubleCross(a) => commands::double_cross(a),
        Command::SpecfunCheck(a) => commands::specfun_check(a),
        Command::Verify(a) => verify::verify(a),
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("zerocross: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
