use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use geocalc::NormSpec;

#[derive(Debug, Parser)]
#[command(
    name = "geocalc",
    version,
    about = "Multiplicative advection and lifting experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub experiment: Experiment,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Experiment {
    /// Advect exp(−a x² + i k x) with constant speed and compare with the exact solution.
    AdvectExact(WaveArgs),
    /// Convergence study for a variable speed on a periodic domain.
    AdvectConverge(ConvergeArgs),
    /// Multiplicative and classical leapfrog on the same grid.
    ClassicalCompare(WaveArgs),
    /// Recover exp(i k x) and exp(−a x²) from two and three lifted samples.
    NyquistDemo(NyquistArgs),
    /// Continuous lift of a Hankel function.
    HankelLift(HankelArgs),
    /// Positive data 1 + ½ e^{−a x²} cos(k x) lifted by phase unwrapping.
    OffsetFailure(WaveArgs),
    /// Error growth of a perturbed plane wave; the CFL limit may be exceeded.
    StabilityProbe(StabilityArgs),
}

/// Report destination and shared options.
#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// CSV output path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Norm for error measures: 1, 2 or inf.
    #[arg(long, default_value = "inf", value_parser = parse_norm)]
    pub norm: NormChoice,
    /// Seed for randomized inputs.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct WaveArgs {
    /// Gaussian decay rate a.
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    /// Carrier wavenumber k.
    #[arg(long, default_value_t = 100.0)]
    pub k: f64,
    /// Constant wave speed (shorthand for --speed const:<c>).
    #[arg(long, conflicts_with = "speed")]
    pub c: Option<f64>,
    /// Wave speed: const:<v> or sinusoid:<base>:<amp>.
    #[arg(long)]
    pub speed: Option<SpeedSpec>,
    #[arg(long, default_value_t = 0.1)]
    pub dx: f64,
    #[arg(long, default_value_t = 0.05)]
    pub dt: f64,
    /// Final time.
    #[arg(long = "T", default_value_t = 10.0)]
    pub t_final: f64,
    /// Left end of the computational domain.
    #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
    pub x_min: f64,
    /// Right end of the computational domain.
    #[arg(long, default_value_t = 20.0, allow_hyphen_values = true)]
    pub x_max: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ConvergeArgs {
    /// Wave speed: const:<v> or sinusoid:<base>:<amp>.
    #[arg(long, default_value = "sinusoid:2:1", conflicts_with = "c")]
    pub speed: SpeedSpec,
    /// Constant wave speed (shorthand for --speed const:<c>).
    #[arg(long)]
    pub c: Option<f64>,
    /// Grid spacing of the coarsest level; 2π/32 when omitted.
    #[arg(long)]
    pub dx: Option<f64>,
    /// Ratio dt/dx held fixed across levels.
    #[arg(long, default_value_t = 0.25)]
    pub dt_over_dx: f64,
    /// Number of grids, each twice as fine as the last.
    #[arg(long, default_value_t = 3)]
    pub levels: u32,
    /// Reference grid refinement relative to the finest level.
    #[arg(long, default_value_t = 8)]
    pub reference_factor: usize,
    #[arg(long = "T", default_value_t = 1.0)]
    pub t_final: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct NyquistArgs {
    /// Wavenumber of the plane wave.
    #[arg(long, default_value_t = 50.0)]
    pub k: f64,
    /// Decay rate of the Gaussian.
    #[arg(long, default_value_t = 7.0)]
    pub a: f64,
    /// Node spacing.
    #[arg(long, default_value_t = 0.1)]
    pub dx: f64,
    /// Number of off-node evaluation points.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct HankelArgs {
    /// Hankel kind, 1 or 2.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=2))]
    pub kind: u32,
    /// Order, 0 or 1.
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u32).range(0..=1))]
    pub n: u32,
    #[arg(long, default_value_t = 0.5)]
    pub x_min: f64,
    #[arg(long, default_value_t = 30.0)]
    pub x_max: f64,
    #[arg(long, default_value_t = 0.01)]
    pub dx: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct StabilityArgs {
    /// Constant wave speed.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Points on the periodic cell [0, 2π).
    #[arg(long, default_value_t = 64)]
    pub points: usize,
    /// Time step; 1.05 dx / c when omitted.
    #[arg(long)]
    pub dt: Option<f64>,
    /// Winding number of the plane wave exp(i k x).
    #[arg(long, default_value_t = 3)]
    pub k: i64,
    /// Amplitude of the log perturbation added at t = 0.
    #[arg(long, default_value_t = 1e-8)]
    pub noise: f64,
    #[arg(long, default_value_t = 500)]
    pub steps: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormChoice {
    One,
    Two,
    Inf,
}

impl NormChoice {
    pub fn spec(self) -> NormSpec {
        match self {
            NormChoice::One => NormSpec::p1(),
            NormChoice::Two => NormSpec::p2(),
            NormChoice::Inf => NormSpec::inf(),
        }
    }
}

fn parse_norm(s: &str) -> Result<NormChoice, String> {
    match s {
        "1" => Ok(NormChoice::One),
        "2" => Ok(NormChoice::Two),
        "inf" => Ok(NormChoice::Inf),
        other => Err(format!("unknown norm '{other}', expected 1, 2 or inf")),
    }
}

/// Wave speed profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpeedSpec {
    Const(f64),
    /// `base + amp · sin x`
    Sinusoid {
        base: f64,
        amp: f64,
    },
}

impl SpeedSpec {
    pub fn at(self, x: f64) -> f64 {
        match self {
            SpeedSpec::Const(v) => v,
            SpeedSpec::Sinusoid { base, amp } => base + amp * x.sin(),
        }
    }

    pub fn max_abs(self) -> f64 {
        match self {
            SpeedSpec::Const(v) => v.abs(),
            SpeedSpec::Sinusoid { base, amp } => base.abs() + amp.abs(),
        }
    }
}

impl fmt::Display for SpeedSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpeedSpec::Const(v) => write!(f, "const:{v}"),
            SpeedSpec::Sinusoid { base, amp } => write!(f, "sinusoid:{base}:{amp}"),
        }
    }
}

impl FromStr for SpeedSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("invalid number '{t}' in speed '{s}'"))
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["const", v] => Ok(SpeedSpec::Const(num(v)?)),
            ["sinusoid", base, amp] => Ok(SpeedSpec::Sinusoid {
                base: num(base)?,
                amp: num(amp)?,
            }),
            _ => Err(format!(
                "invalid speed '{s}', expected const:<v> or sinusoid:<base>:<amp>"
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_is_well_formed() {
        Cli::command().debug_assert();
    }

    #[test]
    fn speed_specs() {
        assert_eq!("const:1.5".parse::<SpeedSpec>(), Ok(SpeedSpec::Const(1.5)));
        assert_eq!(
            "sinusoid:2:1".parse::<SpeedSpec>(),
            Ok(SpeedSpec::Sinusoid {
                base: 2.0,
                amp: 1.0
            })
        );
        assert!("sinusoid:2".parse::<SpeedSpec>().is_err());
        assert!("const:nan".parse::<SpeedSpec>().is_err());
        assert!("linear:1".parse::<SpeedSpec>().is_err());
        let s = SpeedSpec::Sinusoid {
            base: 2.0,
            amp: -1.0,
        };
        assert_eq!(s.max_abs(), 3.0);
        assert_eq!(s.to_string().parse::<SpeedSpec>(), Ok(s));
    }

    #[test]
    fn parses_flags() {
        let cli = Cli::try_parse_from([
            "geocalc",
            "advect-exact",
            "--k",
            "20",
            "--T",
            "2",
            "--norm",
            "2",
            "--x-min",
            "-3",
        ])
        .unwrap();
        let Experiment::AdvectExact(w) = cli.experiment else {
            panic!("wrong subcommand")
        };
        assert_eq!(w.k, 20.0);
        assert_eq!(w.t_final, 2.0);
        assert_eq!(w.x_min, -3.0);
        assert_eq!(w.output.norm, NormChoice::Two);
        assert!(Cli::try_parse_from(["geocalc", "advect-exact", "--norm", "3"]).is_err());
        assert!(
            Cli::try_parse_from(["geocalc", "advect-exact", "--c", "1", "--speed", "const:1"])
                .is_err()
        );
    }
}
