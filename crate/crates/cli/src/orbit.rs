use serde::Serialize;
use setdyn::finite::{orbits_from, FiniteError, Orbit};
use setdyn::interval::{parse_rational, sample_orbit, OrbitPolicy, Rational};

use crate::input::{Input, System};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum PolicyArg {
    Lower,
    Upper,
    Midpoint,
    SeededRandom,
}

pub struct OrbitArgs {
    pub from: Option<String>,
    pub depth: usize,
    pub cap: usize,
    pub steps: usize,
    pub policy: Option<PolicyArg>,
    pub seed: u64,
}

#[derive(Serialize)]
pub struct SampledOrbit {
    pub policy: OrbitPolicy,
    pub points: Vec<String>,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum OrbitReport {
    Finite {
        input_digest: String,
        from: usize,
        depth: usize,
        orbits: Vec<Orbit>,
    },
    Pwl {
        input_digest: String,
        from: String,
        steps: usize,
        orbits: Vec<SampledOrbit>,
    },
}

fn policy(arg: PolicyArg, seed: u64) -> OrbitPolicy {
    match arg {
        PolicyArg::Lower => OrbitPolicy::Lower,
        PolicyArg::Upper => OrbitPolicy::Upper,
        PolicyArg::Midpoint => OrbitPolicy::Midpoint,
        PolicyArg::SeededRandom => OrbitPolicy::SeededRandom(seed),
    }
}

pub fn run(input: &Input, args: &OrbitArgs) -> Result<OrbitReport, CliError> {
    let from = args.from.as_deref().unwrap_or("0");
    match &input.system {
        System::Finite(sys) => {
            let x: usize = from
                .parse()
                .map_err(|_| CliError::Input(format!("--from must be a state index, got {from:?}")))?;
            let orbits = orbits_from(sys, x, args.depth, args.cap).map_err(|e| match e {
                FiniteError::OrbitCap { .. } => CliError::Cap(e.to_string()),
                _ => CliError::Input(e.to_string()),
            })?;
            Ok(OrbitReport::Finite {
                input_digest: input.digest.clone(),
                from: x,
                depth: args.depth,
                orbits,
            })
        }
        System::Pwl(map) => {
            let x0: Rational = parse_rational(from)?;
            let policies = match args.policy {
                Some(p) => vec![p],
                None => vec![
                    PolicyArg::Lower,
                    PolicyArg::Upper,
                    PolicyArg::Midpoint,
                    PolicyArg::SeededRandom,
                ],
            };
            let orbits = policies
                .into_iter()
                .map(|p| {
                    let policy = policy(p, args.seed);
                    let points = sample_orbit(map, &x0, args.steps, policy)?;
                    Ok(SampledOrbit {
                        policy,
                        points: points.iter().map(Rational::to_string).collect(),
                    })
                })
                .collect::<Result<_, CliError>>()?;
            Ok(OrbitReport::Pwl {
                input_digest: input.digest.clone(),
                from: x0.to_string(),
                steps: args.steps,
                orbits,
            })
        }
    }
}
