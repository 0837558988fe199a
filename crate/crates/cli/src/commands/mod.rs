mod curves;
mod double_cross;
mod fock;
mod specfun_check;
mod sweep;

pub use curves::{energy_curve, rho_g};
pub use double_cross::double_cross;
pub use fock::fock_dist;
pub use specfun_check::specfun_check;
pub use sweep::{mean_vs_n, sweep_phase};

use std::io::{ErrorKind, Write};
use std::path::PathBuf;

use crate::error::{CliError, CliResult};

use crate::output::slug;

/// File-name fragment for a number, e.g. `G1000`, `T-0.5`.
fn tag(prefix: &str, v: f64) -> String {
    format!("{prefix}{}", slug(&v.to_string()))
}

fn announce(paths: Vec<PathBuf>) -> CliResult<()> {
    let text: String = paths.iter().map(|p| format!("{}\n", p.display())).collect();
    to_stdout(&text)
}

/// Writes to stdout; a closed pipe (`| head`) is not an error.
pub fn to_stdout(text: &str) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(CliError::Io { path: "<stdout>".into(), source: e }),
        _ => Ok(()),
    }
}
