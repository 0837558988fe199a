use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Serialize, Serializer};
use zerocross::specfun::SERIES_SWITCHOVER;
use zerocross::{FrequencyProfile, IntegratorOptions};

use crate::error::CliResult;
use crate::output::Format;
use crate::range::ValueList;

const RANGE_HELP: &str = "\
Numeric list flags accept
  a,b,c            explicit values
  a:b:lin[,count]  evenly spaced, count defaults to 11
  a:b:log[,count]  geometric, positive ends, defaults to 10 points per decade plus one
Endpoints are included. Negative values need no escaping: --T -1:1:lin,21

Profiles: power:n=2, tanh:n=2,a=5, sin2, ee:a=5 (case-insensitive).

Exit codes: 0 success, 1 verification failure, 2 bad configuration, 3 numerical failure.
ZEROCROSS_JOBS, when set, overrides --jobs.";

#[derive(Debug, Parser)]
#[command(name = "zerocross", version, about = "Oscillators whose frequency passes through zero", after_help = RANGE_HELP)]
pub struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy ratio R against initial phase: one file per (G, T), columns phi,R
    #[command(after_help = RANGE_HELP)]
    SweepPhase(SweepPhaseArgs),
    /// Phase-averaged R against the power index: columns n,mean_R,beta_analytic
    #[command(after_help = RANGE_HELP)]
    MeanVsN(MeanVsNArgs),
    /// Exact R(T) for the power profile: one file per (nu, g), columns T,R
    #[command(after_help = RANGE_HELP)]
    EnergyCurve(EnergyCurveArgs),
    /// rho(g) = R(T=1) of the exact solution: one file per nu, columns g,rho
    #[command(after_help = RANGE_HELP)]
    RhoG(RhoGArgs),
    /// Fock-state transition probabilities: columns M,p plus a JSON summary
    #[command(after_help = RANGE_HELP)]
    FockDist(FockDistArgs),
    /// Two crossings: beta against the intermediate phase, or a JSON crossing plan
    #[command(after_help = RANGE_HELP)]
    DoubleCross(DoubleCrossArgs),
    /// Special-function identity residuals as CSV
    #[command(hide = true)]
    SpecfunCheck(SpecfunCheckArgs),
    /// Run the invariant suite and print a JSON report; exit 1 on any failure
    Verify(VerifyArgs),
}

/// A profile spec string, hashed in its normalised spelling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileSpec(pub FrequencyProfile);

impl FromStr for ProfileSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.parse().map(ProfileSpec).map_err(|e: zerocross::Error| e.to_string())
    }
}

impl fmt::Display for ProfileSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for ProfileSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// Output directory
    #[arg(long, default_value = ".")]
    #[serde(skip)]
    pub out: PathBuf,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IntegrationArgs {
    /// Global relative accuracy target of the ODE solver, in [1e-13, 1e-6]
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,

    #[arg(long, hide = true)]
    pub max_steps: Option<usize>,
}

impl IntegrationArgs {
    pub fn options(&self) -> CliResult<IntegratorOptions> {
        let o = IntegratorOptions::new(self.rel_tol)?;
        Ok(match self.max_steps {
            Some(m) => o.with_max_steps(m),
            None => o,
        })
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepPhaseArgs {
    #[arg(long)]
    pub profile: ProfileSpec,

    /// Adiabaticity parameter(s)
    #[arg(long = "G", allow_hyphen_values = true)]
    pub big_g: ValueList,

    /// Observation time(s) in [-1, ...)
    #[arg(long = "T", allow_hyphen_values = true)]
    pub t: ValueList,

    /// Number of initial phases, evenly spaced on [0, 2pi)
    #[arg(long = "K", default_value_t = 360)]
    pub k: usize,

    #[command(flatten)]
    #[serde(flatten)]
    pub integration: IntegrationArgs,

    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Power,
    Tanh,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MeanVsNArgs {
    /// Power indices, each in (0, 10]
    #[arg(long)]
    pub n: ValueList,

    #[arg(long, value_enum, default_value_t = Family::Power)]
    pub family: Family,

    /// Steepness of the tanh family
    #[arg(long, default_value_t = 5.0)]
    pub a: f64,

    #[arg(long = "G", default_value = "1000", allow_hyphen_values = true)]
    pub big_g: ValueList,

    #[arg(long = "T", default_value_t = 1.0, allow_hyphen_values = true)]
    pub t: f64,

    #[arg(long = "K", default_value_t = 360)]
    pub k: usize,

    #[command(flatten)]
    #[serde(flatten)]
    pub integration: IntegrationArgs,

    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EnergyCurveArgs {
    /// Bessel order(s) nu = 1/(n+2), in (0, 1/2)
    #[arg(long)]
    pub nu: ValueList,

    /// Scaled adiabaticity g = 2 nu G
    #[arg(long)]
    pub g: ValueList,

    #[arg(long = "T", default_value = "-1:1:lin,201", allow_hyphen_values = true)]
    pub t: ValueList,

    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RhoGArgs {
    #[arg(long)]
    pub nu: ValueList,

    #[arg(long)]
    pub g: ValueList,

    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FockDistArgs {
    /// Initial Fock level(s)
    #[arg(long = "N")]
    pub big_n: ValueList,

    /// |u-| of the transition (real, phase irrelevant)
    #[arg(long, conflicts_with = "n", required_unless_present = "n")]
    pub u_minus: Option<ValueList>,

    /// Take the pair of a single crossing of the power profile with this index
    #[arg(long)]
    pub n: Option<f64>,

    /// Stop when the unenumerated probability is below this
    #[arg(long, default_value_t = zerocross::quantum::DEFAULT_TAIL_BOUND)]
    pub tail_bound: f64,

    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DoubleCrossArgs {
    /// Power index of the first crossing
    #[arg(long, required_unless_present = "plan")]
    pub n: Option<f64>,

    /// Power index of the second crossing (default: same as --n)
    #[arg(long, requires = "n")]
    pub n_second: Option<f64>,

    /// Number of intermediate phases, evenly spaced on [0, 2pi)
    #[arg(long, default_value_t = 10_000)]
    pub phi_scan: usize,

    /// JSON plan: {"crossings":[{"u_plus":[re,im],"u_minus":[re,im],"phi_before":x}, ...]}
    #[arg(long, conflicts_with_all = ["n", "n_second"])]
    #[serde(skip)]
    pub plan: Option<PathBuf>,

    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpecfunCheckArgs {
    #[arg(long, default_value_t = SERIES_SWITCHOVER)]
    pub bessel_switchover: f64,

    /// Write here instead of stdout
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    /// Integrator accuracy target used by the numerical checks
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,

    #[arg(long, default_value_t = SERIES_SWITCHOVER, hide = true)]
    pub bessel_switchover: f64,

    /// Also write verify.json into this directory
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}
