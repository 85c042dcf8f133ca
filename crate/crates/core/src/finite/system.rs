use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::FiniteError;

/// A set-valued map on a finite discrete space `{0, .., n-1}`, stored as a
/// total successor relation.
///
/// Every state has at least one successor, so the map always sends a point to
/// a nonempty set. Successor lists are kept sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSystem", into = "RawSystem")]
pub struct FiniteRelationSystem {
    successors: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawSystem {
    states: usize,
    successors: Vec<Vec<usize>>,
}

impl TryFrom<RawSystem> for FiniteRelationSystem {
    type Error = FiniteError;

    fn try_from(raw: RawSystem) -> Result<Self, FiniteError> {
        if raw.states != raw.successors.len() {
            return Err(FiniteError::StateCountMismatch {
                declared: raw.states,
                listed: raw.successors.len(),
            });
        }
        FiniteRelationSystem::new(raw.successors)
    }
}

impl From<FiniteRelationSystem> for RawSystem {
    fn from(sys: FiniteRelationSystem) -> Self {
        RawSystem {
            states: sys.state_count(),
            successors: sys.successors,
        }
    }
}

impl FiniteRelationSystem {
    pub fn new(mut successors: Vec<Vec<usize>>) -> Result<Self, FiniteError> {
        let n = successors.len();
        if n == 0 {
            return Err(FiniteError::EmptySpace);
        }
        for (state, succ) in successors.iter_mut().enumerate() {
            if succ.is_empty() {
                return Err(FiniteError::EmptySuccessors { state });
            }
            if let Some(&bad) = succ.iter().find(|&&t| t >= n) {
                return Err(FiniteError::SuccessorOutOfRange {
                    state,
                    successor: bad,
                    state_count: n,
                });
            }
            succ.sort_unstable();
            succ.dedup();
        }
        Ok(Self { successors })
    }

    /// The relation whose successor sets are the given bit rows.
    pub(crate) fn from_rows(rows: &[FixedBitSet]) -> Result<Self, FiniteError> {
        Self::new(rows.iter().map(|r| r.ones().collect()).collect())
    }

    pub fn identity(n: usize) -> Result<Self, FiniteError> {
        Self::new((0..n).map(|s| vec![s]).collect())
    }

    /// The directed cycle `0 -> 1 -> .. -> n-1 -> 0`.
    pub fn cycle(n: usize) -> Result<Self, FiniteError> {
        Self::new((0..n).map(|s| vec![(s + 1) % n]).collect())
    }

    pub fn state_count(&self) -> usize {
        self.successors.len()
    }

    pub fn successors(&self, state: usize) -> &[usize] {
        &self.successors[state]
    }

    pub fn contains_edge(&self, from: usize, to: usize) -> bool {
        self.successors[from].binary_search(&to).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.successors
            .iter()
            .enumerate()
            .flat_map(|(s, succ)| succ.iter().map(move |&t| (s, t)))
    }

    pub(crate) fn check_state(&self, state: usize) -> Result<(), FiniteError> {
        if state < self.state_count() {
            Ok(())
        } else {
            Err(FiniteError::StateOutOfRange {
                state,
                state_count: self.state_count(),
            })
        }
    }

    pub(crate) fn rows(&self) -> Vec<FixedBitSet> {
        let n = self.state_count();
        self.successors
            .iter()
            .map(|succ| {
                let mut row = FixedBitSet::with_capacity(n);
                succ.iter().for_each(|&t| row.insert(t));
                row
            })
            .collect()
    }

    pub(crate) fn reversed_rows(&self) -> Vec<FixedBitSet> {
        let n = self.state_count();
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for (s, t) in self.edges() {
            rows[t].insert(s);
        }
        rows
    }
}
