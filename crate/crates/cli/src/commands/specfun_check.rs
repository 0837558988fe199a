use std::fmt::Write as _;

use crate::args::SpecfunCheckArgs;
use crate::error::{CliError, CliResult};
use crate::identities::residuals;
use crate::output::{OutputSet, RunStamp};

pub fn specfun_check(args: &SpecfunCheckArgs) -> CliResult<()> {
    let stamp = RunStamp::new("specfun-check", args);
    let mut text = format!("{}\nidentity,parameter,x,residual,limit\n", stamp.header());
    for r in residuals(args.bessel_switchover)? {
        let _ = writeln!(
            text,
            "{},{:.16e},{:.16e},{:.16e},{:.16e}",
            r.identity.name(),
            r.parameter,
            r.x,
            r.residual,
            r.identity.limit()
        );
    }
    match &args.out {
        None => super::to_stdout(&text)?,
        Some(path) => {
            let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(std::path::Path::new("."));
            let name = path
                .file_name()
                .and_then(|n| n.to_str())
                .ok_or_else(|| CliError::config(format!("bad output path {}", path.display())))?;
            let mut set = OutputSet::new(dir, crate::output::Format::Csv, stamp)?;
            set.raw(name, &text)?;
            set.commit();
        }
    }
    Ok(())
}
