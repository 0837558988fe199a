use std::f64::consts::TAU;

use serde_json::json;
use zerocross::analytic::u_pair_single;
use zerocross::transitions::{beta_double_crossing, beta_extremes, compose_plan};
use zerocross::CrossingPlan;

use super::{announce, tag};
use crate::args::DoubleCrossArgs;
use crate::error::{CliError, CliResult};
use crate::output::{OutputSet, RunStamp, Table};

pub fn double_cross(args: &DoubleCrossArgs) -> CliResult<()> {
    match (&args.plan, args.n) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::config(format!("cannot read plan {}: {e}", path.display())))?;
            let plan = CrossingPlan::from_json(&text)?;
            let canonical: serde_json::Value =
                serde_json::from_str(&plan.to_json()).expect("plan JSON round-trips");
            let stamp = RunStamp::new("double-cross", &json!({ "plan": canonical, "output": args.output }));
            let mut set = OutputSet::new(&args.output.out, args.output.format, stamp)?;
            let u = compose_plan(&plan);
            set.json(
                "double-cross_plan",
                json!({
                    "crossings": plan.crossings.len(),
                    "u_plus": [u.u_plus().re, u.u_plus().im],
                    "u_minus": [u.u_minus().re, u.u_minus().im],
                    "beta": u.beta(),
                    "constraint_residual": u.constraint_residual(),
                }),
            )?;
            announce(set.commit())
        }
        (None, Some(n)) => {
            if args.phi_scan < 2 {
                return Err(CliError::config("--phi-scan needs at least 2 phases"));
            }
            let n2 = args.n_second.unwrap_or(n);
            let (u, w) = (u_pair_single(n)?, u_pair_single(n2)?);
            let mut table = Table::new(&["phi", "beta"]);
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for k in 0..args.phi_scan {
                let phi = TAU * k as f64 / args.phi_scan as f64;
                let b = beta_double_crossing(&u, &w, phi);
                lo = lo.min(b);
                hi = hi.max(b);
                table.push([phi.into(), b.into()]);
            }
            let (exact_lo, exact_hi) = beta_extremes(&u, &w);
            let stem = match args.n_second {
                Some(n2) => format!("double-cross_{}_{}", tag("n", n), tag("n", n2)),
                None => format!("double-cross_{}", tag("n", n)),
            };
            let mut set = OutputSet::new(&args.output.out, args.output.format, RunStamp::new("double-cross", args))?;
            set.table(&stem, &table)?;
            set.json(
                &format!("{stem}_summary"),
                json!({
                    "beta_first": u.beta(),
                    "beta_second": w.beta(),
                    "scan_min": lo,
                    "scan_max": hi,
                    "closed_form_min": exact_lo,
                    "closed_form_max": exact_hi,
                }),
            )?;
            announce(set.commit())
        }
        (None, None) => Err(CliError::config("give --n or --plan")),
    }
}
