use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use setdyn::finite::{classify, Classification, FiniteRelationSystem};
use setdyn::oracle::{enumerate_systems, oracle_classify, EnumerationSpec, SystemEnumeration};

use crate::CliError;

const CHUNK: u64 = 1024;

#[derive(Serialize, Clone, Debug)]
pub struct Indexed {
    pub index: u64,
    pub system: FiniteRelationSystem,
}

#[derive(Serialize, Clone, Debug)]
pub struct Counterexample {
    pub index: u64,
    pub system: FiniteRelationSystem,
    pub fast: Classification,
    pub oracle: Classification,
}

#[derive(Serialize, Debug)]
pub struct StrictnessWitnesses {
    pub transitive_not_bitransitive: Option<Indexed>,
    pub bitransitive_not_totally_transitive: Option<Indexed>,
}

#[derive(Serialize, Debug)]
pub struct ValidationSummary {
    pub states: usize,
    pub systems_checked: u64,
    pub agreement: bool,
    pub mismatches: u64,
    pub chain_violations: u64,
    /// How many systems have each property.
    pub verdict_counts: BTreeMap<&'static str, u64>,
    pub strictness_witnesses: StrictnessWitnesses,
    /// The failing system with the fewest edges, ties broken by index.
    pub counterexample: Option<Counterexample>,
}

impl ValidationSummary {
    pub fn passed(&self) -> bool {
        self.agreement && self.chain_violations == 0
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    mismatches: u64,
    chain_violations: u64,
    counts: [u64; 5],
    not_bitransitive: Option<u64>,
    not_totally: Option<u64>,
    worst: Option<(usize, Counterexample)>,
}

fn edge_count(sys: &FiniteRelationSystem) -> usize {
    (0..sys.state_count()).map(|s| sys.successors(s).len()).sum()
}

fn min_index(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        _ => a.or(b),
    }
}

impl Tally {
    fn record(&mut self, index: u64, sys: FiniteRelationSystem) {
        let fast = classify(&sys);
        let oracle = oracle_classify(&sys);
        self.checked += 1;
        for (count, (_, v)) in self.counts.iter_mut().zip(fast.as_array()) {
            *count += v as u64;
        }
        if fast.transitive && !fast.bitransitive {
            self.not_bitransitive = min_index(self.not_bitransitive, Some(index));
        }
        if fast.bitransitive && !fast.totally_transitive {
            self.not_totally = min_index(self.not_totally, Some(index));
        }
        let mismatch = fast != oracle;
        let broken_chain = !fast.chain_holds() || !oracle.chain_holds();
        self.mismatches += mismatch as u64;
        self.chain_violations += broken_chain as u64;
        if mismatch || broken_chain {
            let edges = edge_count(&sys);
            let candidate = Counterexample {
                index,
                system: sys,
                fast,
                oracle,
            };
            self.offer((edges, candidate));
        }
    }

    fn offer(&mut self, (edges, c): (usize, Counterexample)) {
        let better = match &self.worst {
            None => true,
            Some((e, w)) => (edges, c.index) < (*e, w.index),
        };
        if better {
            self.worst = Some((edges, c));
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.mismatches += other.mismatches;
        self.chain_violations += other.chain_violations;
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self.not_bitransitive = min_index(self.not_bitransitive, other.not_bitransitive);
        self.not_totally = min_index(self.not_totally, other.not_totally);
        if let Some(w) = other.worst {
            self.offer(w);
        }
        self
    }
}

fn tally_range(systems: &SystemEnumeration, start: u64, end: u64) -> Tally {
    let mut tally = Tally::default();
    for index in start..end {
        tally.record(index, systems.system_at(index));
    }
    tally
}

/// Oracle-versus-fast agreement and the implication chain over every total
/// relation on exactly `states` states.
pub fn run(states: usize) -> Result<ValidationSummary, CliError> {
    let spec = EnumerationSpec::all(states);
    let systems = enumerate_systems(spec)?;
    let total = spec.unfiltered_len();
    let tally = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| tally_range(&systems, c * CHUNK, ((c + 1) * CHUNK).min(total)))
        .reduce(Tally::default, Tally::merge);

    let names = Classification::default().as_array().map(|(name, _)| name);
    let witness = |index: Option<u64>| {
        index.map(|index| Indexed {
            index,
            system: systems.system_at(index),
        })
    };
    Ok(ValidationSummary {
        states,
        systems_checked: tally.checked,
        agreement: tally.mismatches == 0,
        mismatches: tally.mismatches,
        chain_violations: tally.chain_violations,
        verdict_counts: names.into_iter().zip(tally.counts).collect(),
        strictness_witnesses: StrictnessWitnesses {
            transitive_not_bitransitive: witness(tally.not_bitransitive),
            bitransitive_not_totally_transitive: witness(tally.not_totally),
        },
        counterexample: tally.worst.map(|(_, c)| c),
    })
}
