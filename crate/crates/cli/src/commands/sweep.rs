use zerocross::analytic::beta_single;
use zerocross::integrator::phase_ensemble;
use zerocross::FrequencyProfile;

use super::{announce, tag};
use crate::args::{Family, MeanVsNArgs, SweepPhaseArgs};
use crate::error::{CliError, CliResult};
use crate::output::{slug, OutputSet, RunStamp, Table};

pub fn sweep_phase(args: &SweepPhaseArgs) -> CliResult<()> {
    let opts = args.integration.options()?;
    let profile = args.profile.0;
    let mut set = OutputSet::new(&args.output.out, args.output.format, RunStamp::new("sweep-phase", args))?;
    for &g in args.big_g.values() {
        for &t in args.t.values() {
            let ensemble = phase_ensemble(&profile, g, t, args.k, &opts)?;
            let mut table = Table::new(&["phi", "R"]);
            for (phi, r) in ensemble.samples {
                table.push([phi.into(), r.into()]);
            }
            let stem = format!("sweep-phase_{}_{}_{}", slug(&args.profile.to_string()), tag("G", g), tag("T", t));
            set.table(&stem, &table)?;
        }
    }
    announce(set.commit())
}

pub fn mean_vs_n(args: &MeanVsNArgs) -> CliResult<()> {
    if let Some(bad) = args.n.values().iter().find(|&&n| !(n > 0.0 && n <= 10.0)) {
        return Err(CliError::config(format!("--n values must lie in (0, 10], got {bad}")));
    }
    let opts = args.integration.options()?;
    let profiles = args
        .n
        .values()
        .iter()
        .map(|&n| match args.family {
            Family::Power => FrequencyProfile::power(n),
            Family::Tanh => FrequencyProfile::tanh_power(n, args.a),
        })
        .collect::<zerocross::Result<Vec<_>>>()?;
    let mut set = OutputSet::new(&args.output.out, args.output.format, RunStamp::new("mean-vs-n", args))?;
    let family = match args.family {
        Family::Power => "power".to_string(),
        Family::Tanh => format!("tanh{}", tag("-a", args.a)),
    };
    for &g in args.big_g.values() {
        let mut table = Table::new(&["n", "mean_R", "beta_analytic"]);
        for (&n, p) in args.n.values().iter().zip(&profiles) {
            let mean = phase_ensemble(p, g, args.t, args.k, &opts)?.mean;
            table.push([n.into(), mean.into(), beta_single(n)?.into()]);
        }
        set.table(&format!("mean-vs-n_{family}_{}", tag("G", g)), &table)?;
    }
    announce(set.commit())
}
