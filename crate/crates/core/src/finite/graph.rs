//! Reachability machinery on successor rows: relational composition,
//! strong connectivity, the cycle-length gcd, and strong connectivity of the
//! square product without materializing it.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use num_integer::Integer;

/// `result[i] = ⋃_{j ∈ left[i]} right[j]`: first a step of `left`, then a step of `right`.
pub(crate) fn compose_rows(left: &[FixedBitSet], right: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let n = right.len();
    left.iter()
        .map(|row| {
            let mut out = FixedBitSet::with_capacity(n);
            for j in row.ones() {
                out.union_with(&right[j]);
            }
            out
        })
        .collect()
}

/// Rows of the `n`-step relation, `n >= 1`, by repeated squaring.
pub(crate) fn power_rows(rows: &[FixedBitSet], mut n: usize) -> Vec<FixedBitSet> {
    debug_assert!(n >= 1);
    let mut base = rows.to_vec();
    let mut acc: Option<Vec<FixedBitSet>> = None;
    loop {
        if n & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => compose_rows(&a, &base),
            });
        }
        n >>= 1;
        if n == 0 {
            break;
        }
        base = compose_rows(&base, &base);
    }
    acc.expect("n >= 1")
}

/// States reachable from `start` by paths of length >= 0.
pub(crate) fn reach_from(rows: &[FixedBitSet], start: usize) -> FixedBitSet {
    let mut seen = FixedBitSet::with_capacity(rows.len());
    let mut queue = VecDeque::from([start]);
    seen.insert(start);
    while let Some(s) = queue.pop_front() {
        for t in rows[s].ones() {
            if !seen.put(t) {
                queue.push_back(t);
            }
        }
    }
    seen
}

/// `None` when the relation is strongly connected, otherwise an ordered pair
/// `(u, v)` such that `v` is unreachable from `u`.
pub(crate) fn unreachable_pair(rows: &[FixedBitSet], reversed: &[FixedBitSet]) -> Option<(usize, usize)> {
    let forward = reach_from(rows, 0);
    if let Some(v) = forward.zeroes().next() {
        return Some((0, v));
    }
    let backward = reach_from(reversed, 0);
    backward.zeroes().next().map(|u| (u, 0))
}

/// Gcd of all cycle lengths of a strongly connected relation, from BFS levels:
/// every edge `u -> v` contributes `level(u) + 1 - level(v)`.
pub(crate) fn cycle_gcd(rows: &[FixedBitSet]) -> usize {
    let n = rows.len();
    let mut level = vec![usize::MAX; n];
    level[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        for t in rows[s].ones() {
            if level[t] == usize::MAX {
                level[t] = level[s] + 1;
                queue.push_back(t);
            }
        }
    }
    let mut g = 0usize;
    for (s, row) in rows.iter().enumerate() {
        for t in row.ones() {
            let diff = (level[s] + 1).abs_diff(level[t]);
            g = g.gcd(&diff);
        }
    }
    g
}

/// Whether every pair state of `rows × rows` reaches `(0, 0)` and is reached from it.
pub(crate) fn square_product_strongly_connected(rows: &[FixedBitSet], reversed: &[FixedBitSet]) -> bool {
    pair_reach_all(rows) && pair_reach_all(reversed)
}

fn pair_reach_all(rows: &[FixedBitSet]) -> bool {
    let n = rows.len();
    // seen[a] holds every b with (a, b) visited.
    let mut seen = vec![FixedBitSet::with_capacity(n); n];
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    seen[0].insert(0);
    let mut count = 1usize;
    let mut fresh = FixedBitSet::with_capacity(n);
    while let Some((a, b)) = queue.pop_front() {
        for s in rows[a].ones() {
            fresh.clone_from(&rows[b]);
            fresh.difference_with(&seen[s]);
            for t in fresh.ones() {
                queue.push_back((s, t));
                count += 1;
            }
            seen[s].union_with(&fresh);
        }
    }
    count == n * n
}
