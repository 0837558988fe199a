use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::json;
use zerocross::analytic::u_pair_single;
use zerocross::quantum::{energy_variance_fock, fock_distribution, mandel_q, moment_variance_check, FockDistribution};
use zerocross::BogoliubovPair;

use super::{announce, tag};
use crate::args::FockDistArgs;
use crate::error::{CliError, CliResult};
use crate::output::{OutputSet, RunStamp, Table};

struct Case {
    label: String,
    big_n: u64,
    pair: BogoliubovPair,
}

fn summary(case: &Case, dist: &FockDistribution) -> CliResult<serde_json::Value> {
    let n = case.big_n;
    let pair = &case.pair;
    let fluct = energy_variance_fock(n, pair, 1.0);
    // Undefined only for the vacuum with no crossing; reported as null.
    let q = match mandel_q(n, pair) {
        Ok(q) => Some(q),
        Err(zerocross::Error::Domain(_)) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(json!({
        "N": n,
        "u_plus": [pair.u_plus().re, pair.u_plus().im],
        "u_minus": [pair.u_minus().re, pair.u_minus().im],
        "beta": pair.beta(),
        "total": dist.total(),
        "tail_mass": dist.tail_mass,
        "terms": dist.probs.len(),
        "mean": dist.mean_energy_quanta(),
        "variance": dist.variance(),
        "mandel_q": q,
        "mass_at_least_3N": dist.mass_at_least(3 * n),
        "energy": {
            "mean_energy": fluct.mean_energy,
            "sigma_e": fluct.sigma_e,
            "relative_to_adiabatic": fluct.relative_to_adiabatic,
            "relative_to_mean": fluct.relative_to_mean,
        },
        "variance_routes": moment_variance_check(n, pair)?,
    }))
}

pub fn fock_dist(args: &FockDistArgs) -> CliResult<()> {
    let levels = args.big_n.as_counts("--N").map_err(CliError::Config)?;
    let pairs: Vec<(String, BogoliubovPair)> = match (&args.u_minus, args.n) {
        (Some(us), None) => us
            .values()
            .iter()
            .map(|&u| (tag("u", u), BogoliubovPair::from_u_minus(Complex64::new(u, 0.0))))
            .collect(),
        (None, Some(n)) => vec![(tag("n", n), u_pair_single(n)?)],
        _ => return Err(CliError::config("give exactly one of --u-minus and --n")),
    };
    let cases: Vec<Case> = levels
        .iter()
        .flat_map(|&big_n| pairs.iter().map(move |(label, pair)| Case { label: label.clone(), big_n, pair: *pair }))
        .collect();
    let dists: Vec<FockDistribution> = cases
        .par_iter()
        .map(|c| fock_distribution(c.big_n, &c.pair, args.tail_bound))
        .collect::<Result<_, _>>()?;

    let mut set = OutputSet::new(&args.output.out, args.output.format, RunStamp::new("fock-dist", args))?;
    for (case, dist) in cases.iter().zip(&dists) {
        let stem = format!("fock-dist_N{}_{}", case.big_n, case.label);
        let mut table = Table::new(&["M", "p"]);
        for &(m, p) in &dist.probs {
            table.push([m.into(), p.into()]);
        }
        set.table(&stem, &table)?;
        set.json(&format!("{stem}_summary"), summary(case, dist)?)?;
    }
    announce(set.commit())
}
