use rayon::prelude::*;
use zerocross::analytic::{energy_ratio_curve, rho_of_g, PowerSolutionParams};

use super::{announce, tag};
use crate::args::{EnergyCurveArgs, RhoGArgs};
use crate::error::CliResult;
use crate::output::{OutputSet, RunStamp, Table};

pub fn energy_curve(args: &EnergyCurveArgs) -> CliResult<()> {
    let mut set = OutputSet::new(&args.output.out, args.output.format, RunStamp::new("energy-curve", args))?;
    for &nu in args.nu.values() {
        for &g in args.g.values() {
            let p = PowerSolutionParams::from_nu_g(nu, g)?;
            let rs: Vec<f64> = args.t.values().par_iter().map(|&t| energy_ratio_curve(&p, t)).collect::<Result<_, _>>()?;
            let mut table = Table::new(&["T", "R"]);
            for (&t, r) in args.t.values().iter().zip(rs) {
                table.push([t.into(), r.into()]);
            }
            set.table(&format!("energy-curve_{}_{}", tag("nu", nu), tag("g", g)), &table)?;
        }
    }
    announce(set.commit())
}

pub fn rho_g(args: &RhoGArgs) -> CliResult<()> {
    let mut set = OutputSet::new(&args.output.out, args.output.format, RunStamp::new("rho-g", args))?;
    for &nu in args.nu.values() {
        let rhos: Vec<f64> = args.g.values().par_iter().map(|&g| rho_of_g(nu, g)).collect::<Result<_, _>>()?;
        let mut table = Table::new(&["g", "rho"]);
        for (&g, rho) in args.g.values().iter().zip(rhos) {
            table.push([g.into(), rho.into()]);
        }
        set.table(&format!("rho-g_{}", tag("nu", nu)), &table)?;
    }
    announce(set.commit())
}
