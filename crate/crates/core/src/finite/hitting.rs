use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::{FiniteError, FiniteRelationSystem};

/// The set `{ n >= 1 : some path of length n leads from source to target }`.
///
/// Lengths up to `transient_bound` are listed explicitly. Beyond it,
/// membership is `n mod tail_period ∈ tail_residues`; a `tail_period` of 0
/// means no length beyond the bound works. The tail period is the minimal one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HittingSet {
    pub source: usize,
    pub target: usize,
    pub transient_bound: usize,
    pub transient_lengths: Vec<usize>,
    pub tail_period: usize,
    pub tail_residues: Vec<usize>,
}

impl HittingSet {
    pub fn contains(&self, n: usize) -> bool {
        if n == 0 {
            false
        } else if n <= self.transient_bound {
            self.transient_lengths.binary_search(&n).is_ok()
        } else {
            self.tail_period != 0 && self.tail_residues.binary_search(&(n % self.tail_period)).is_ok()
        }
    }

    /// Every `n` beyond the transient bound belongs to the set.
    pub fn has_full_tail(&self) -> bool {
        self.tail_period == 1 && self.tail_residues == [0]
    }

    pub fn is_empty(&self) -> bool {
        self.transient_lengths.is_empty() && self.tail_period == 0
    }
}

/// `(n - 1)^2 + 1`, the bound past which every length set of an `n`-state
/// relation is purely periodic.
pub fn wielandt_bound(state_count: usize) -> usize {
    let m = state_count.saturating_sub(1);
    m * m + 1
}

/// Exact path-length set from `source` to `target`.
pub fn hitting_set(sys: &FiniteRelationSystem, source: usize, target: usize) -> Result<HittingSet, FiniteError> {
    sys.check_state(source)?;
    sys.check_state(target)?;
    let rows = sys.rows();
    let n = sys.state_count();

    // The layer sequence L_{k+1} = F(L_k) is deterministic on subsets, so
    // the first repeated layer pins down the whole sequence.
    let mut layers: Vec<FixedBitSet> = Vec::new();
    let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut current = FixedBitSet::with_capacity(n);
    current.insert(source);
    let (cycle_start, cycle_len) = loop {
        if let Some(&i) = index.get(&current) {
            break (i, layers.len() - i);
        }
        index.insert(current.clone(), layers.len());
        let mut next = FixedBitSet::with_capacity(n);
        for s in current.ones() {
            next.union_with(&rows[s]);
        }
        layers.push(std::mem::replace(&mut current, next));
    };
    let hits = |k: usize| -> bool {
        let k = if k < layers.len() {
            k
        } else {
            cycle_start + (k - cycle_start) % cycle_len
        };
        layers[k].contains(target)
    };

    let bound = wielandt_bound(n);
    debug_assert!(cycle_start <= bound + 1);
    let bound = bound.max(cycle_start.saturating_sub(1));

    let transient_lengths = (1..=bound).filter(|&k| hits(k)).collect();
    let first_tail = bound + 1;
    let period = (1..=cycle_len)
        .filter(|d| cycle_len % d == 0)
        .find(|&d| (first_tail..first_tail + cycle_len).all(|k| hits(k) == hits(k + d)))
        .unwrap_or(cycle_len);
    let mut tail_residues: Vec<usize> = (first_tail..first_tail + period)
        .filter(|&k| hits(k))
        .map(|k| k % period)
        .collect();
    tail_residues.sort_unstable();
    let tail_period = if tail_residues.is_empty() { 0 } else { period };

    Ok(HittingSet {
        source,
        target,
        transient_bound: bound,
        transient_lengths,
        tail_period,
        tail_residues,
    })
}
