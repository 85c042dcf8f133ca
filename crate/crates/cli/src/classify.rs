use std::collections::BTreeMap;

use serde::Serialize;
use setdyn::finite::{classify, dense_orbit, hitting_set, period, HittingSet, Orbit};
use setdyn::interval::{classify_at_resolution, ClassificationRecord};

use crate::input::{Input, System};
use crate::CliError;

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Evidence,
}

#[derive(Serialize, Debug)]
pub struct Verdict {
    pub value: bool,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horizon: Option<usize>,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum Certificates {
    Finite {
        dense_orbit: Option<Orbit>,
        period: Option<usize>,
        /// Path-length sets from state 0 to every state.
        hitting_sets: Vec<HittingSet>,
    },
    Pwl {
        potential_counterexample: bool,
        classification: ClassificationRecord,
    },
}

#[derive(Serialize)]
pub struct Report {
    pub input_digest: String,
    pub kind: &'static str,
    pub verdicts: BTreeMap<&'static str, Verdict>,
    pub certificates: Certificates,
}

pub fn run(input: &Input, resolution: u32, horizon: usize) -> Result<Report, CliError> {
    let (verdicts, certificates) = match &input.system {
        System::Finite(sys) => {
            let verdicts = classify(sys)
                .as_array()
                .into_iter()
                .map(|(name, value)| {
                    let v = Verdict {
                        value,
                        mode: Mode::Exact,
                        resolution: None,
                        horizon: None,
                    };
                    (name, v)
                })
                .collect();
            let hitting_sets = (0..sys.state_count())
                .map(|v| hitting_set(sys, 0, v).expect("states in range"))
                .collect();
            let certificates = Certificates::Finite {
                dense_orbit: dense_orbit(sys),
                period: period(sys).ok(),
                hitting_sets,
            };
            (verdicts, certificates)
        }
        System::Pwl(map) => {
            let record = classify_at_resolution(map, resolution, horizon)?;
            let transitive = record.transitivity_evidence;
            let mixing = transitive && record.mixing_evidence;
            let verdicts = [
                "transitive",
                "bitransitive",
                "totally_transitive",
                "weakly_mixing",
                "mixing",
            ]
            .into_iter()
            .map(|name| {
                let v = Verdict {
                    value: if name == "transitive" { transitive } else { mixing },
                    mode: Mode::Evidence,
                    resolution: Some(resolution),
                    horizon: Some(horizon),
                };
                (name, v)
            })
            .collect();
            let certificates = Certificates::Pwl {
                potential_counterexample: record.potential_counterexample,
                classification: record,
            };
            (verdicts, certificates)
        }
    };
    Ok(Report {
        input_digest: input.digest.clone(),
        kind: input.kind(),
        verdicts,
        certificates,
    })
}
