use serde::{Deserialize, Serialize};

use super::OracleError;
use crate::finite::FiniteRelationSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemFilter {
    StronglyConnectedOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationSpec {
    pub state_count: usize,
    #[serde(default)]
    pub filter: Option<SystemFilter>,
}

impl EnumerationSpec {
    pub fn all(state_count: usize) -> Self {
        Self {
            state_count,
            filter: None,
        }
    }

    /// `(2^n - 1)^n`, the number of total relations before filtering.
    pub fn unfiltered_len(&self) -> u64 {
        let subsets = (1u64 << self.state_count) - 1;
        subsets.pow(self.state_count as u32)
    }
}

/// Every total relation on `n` states, in mixed-radix order of successor
/// masks with state 0 as the least significant digit.
///
/// [`SystemEnumeration::range`] restricts the stream to an index range so
/// that the sweep can be split across workers.
#[derive(Clone, Debug)]
pub struct SystemEnumeration {
    spec: EnumerationSpec,
    next: u64,
    end: u64,
}

pub fn enumerate_systems(spec: EnumerationSpec) -> Result<SystemEnumeration, OracleError> {
    if !(1..=4).contains(&spec.state_count) {
        return Err(OracleError::StateCountOutOfRange(spec.state_count));
    }
    Ok(SystemEnumeration {
        spec,
        next: 0,
        end: spec.unfiltered_len(),
    })
}

impl SystemEnumeration {
    pub fn range(mut self, start: u64, end: u64) -> Self {
        self.end = end.min(self.end);
        self.next = start.min(self.end);
        self
    }

    /// The system at unfiltered position `index`.
    pub fn system_at(&self, index: u64) -> FiniteRelationSystem {
        let n = self.spec.state_count;
        let radix = (1u64 << n) - 1;
        let mut rest = index;
        let successors = (0..n)
            .map(|_| {
                let mask = rest % radix + 1;
                rest /= radix;
                (0..n).filter(|t| mask >> t & 1 == 1).collect()
            })
            .collect();
        FiniteRelationSystem::new(successors).expect("every mask is nonempty")
    }
}

fn reaches_all(sys: &FiniteRelationSystem, from: usize) -> bool {
    let n = sys.state_count();
    let mut seen = vec![false; n];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(s) = stack.pop() {
        for &t in sys.successors(s) {
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn keep(filter: Option<SystemFilter>, sys: &FiniteRelationSystem) -> bool {
    match filter {
        None => true,
        Some(SystemFilter::StronglyConnectedOnly) => (0..sys.state_count()).all(|s| reaches_all(sys, s)),
    }
}

impl Iterator for SystemEnumeration {
    type Item = FiniteRelationSystem;

    fn next(&mut self) -> Option<FiniteRelationSystem> {
        while self.next < self.end {
            let sys = self.system_at(self.next);
            self.next += 1;
            if keep(self.spec.filter, &sys) {
                return Some(sys);
            }
        }
        None
    }
}
