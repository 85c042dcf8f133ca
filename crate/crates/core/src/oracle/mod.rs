//! Brute-force implementations of the definitions, kept free of the graph
//! machinery in [`crate::finite`] and the extremum logic in
//! [`crate::interval`] so that each can check the other.
//!
//! Everything here works on plain `Vec<bool>` layers and boolean matrices.

mod enumerate;

use std::collections::HashSet;

use thiserror::Error;

use crate::finite::{Classification, FiniteRelationSystem};
use crate::interval::{int, IntervalError, PwlMultimap, Rational, RationalInterval};

pub use enumerate::{enumerate_systems, EnumerationSpec, SystemEnumeration, SystemFilter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("bound {bound} is below the required {required}")]
    InsufficientBound { bound: usize, required: usize },
    #[error("exhaustive enumeration supports 1..=4 states, got {0}")]
    StateCountOutOfRange(usize),
}

/// `(n - 1)^2 + 1` for an `n`-state system, computed independently of the
/// fast path.
pub fn oracle_bound(state_count: usize) -> usize {
    (state_count - 1) * (state_count - 1) + 1
}

fn step(sys: &FiniteRelationSystem, layer: &[bool]) -> Vec<bool> {
    let mut next = vec![false; layer.len()];
    for (s, _) in layer.iter().enumerate().filter(|(_, &on)| on) {
        for &t in sys.successors(s) {
            next[t] = true;
        }
    }
    next
}

/// For every ordered pair `(u, v)`, some `n` in `[1, bound]` has a length-`n`
/// path from `u` to `v`. Walks reachability layers one step at a time.
pub fn oracle_transitive(sys: &FiniteRelationSystem, bound: usize) -> Result<bool, OracleError> {
    let n = sys.state_count();
    let required = oracle_bound(n);
    if bound < required {
        return Err(OracleError::InsufficientBound { bound, required });
    }
    for u in 0..n {
        let mut layer = vec![false; n];
        layer[u] = true;
        let mut reached = vec![false; n];
        let mut seen_layers: HashSet<Vec<bool>> = HashSet::new();
        for _ in 1..=bound {
            layer = step(sys, &layer);
            for (r, &l) in reached.iter_mut().zip(&layer) {
                *r |= l;
            }
            // A repeated layer means nothing new can appear.
            if reached.iter().all(|&r| r) || !seen_layers.insert(layer.clone()) {
                break;
            }
        }
        if !reached.iter().all(|&r| r) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn bool_matrix(sys: &FiniteRelationSystem) -> Vec<Vec<bool>> {
    let n = sys.state_count();
    (0..n)
        .map(|s| (0..n).map(|t| sys.successors(s).contains(&t)).collect())
        .collect()
}

fn bool_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    let mut out = vec![vec![false; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] {
                for j in 0..n {
                    out[i][j] |= b[k][j];
                }
            }
        }
    }
    out
}

/// Every pair is joined by paths of every length past the transient bound
/// `T`, checked on the window `(T, 2T]` of boolean matrix powers.
///
/// A full window forces `A^(T+1)` to be all-ones, after which every power
/// is, since each row of `A` is nonempty.
pub fn oracle_mixing(sys: &FiniteRelationSystem) -> bool {
    let t = oracle_bound(sys.state_count());
    let a = bool_matrix(sys);
    let mut power = a.clone();
    for k in 2..=2 * t {
        power = bool_mul(&power, &a);
        if k > t && !power.iter().all(|row| row.iter().all(|&x| x)) {
            return false;
        }
    }
    true
}

/// Successors under exactly `n` steps, by layering from each state.
pub fn oracle_power(sys: &FiniteRelationSystem, n: usize) -> FiniteRelationSystem {
    let count = sys.state_count();
    let successors = (0..count)
        .map(|s| {
            let mut layer = vec![false; count];
            layer[s] = true;
            for _ in 0..n {
                layer = step(sys, &layer);
            }
            (0..count).filter(|&t| layer[t]).collect()
        })
        .collect();
    FiniteRelationSystem::new(successors).expect("powers of total relations are total")
}

/// `(F × G)(x, x') = F(x) × G(x')`, pairs encoded row-major.
pub fn oracle_product(a: &FiniteRelationSystem, b: &FiniteRelationSystem) -> FiniteRelationSystem {
    let (na, nb) = (a.state_count(), b.state_count());
    let mut successors = vec![Vec::new(); na * nb];
    for x in 0..na {
        for y in 0..nb {
            for &x2 in a.successors(x) {
                for &y2 in b.successors(y) {
                    successors[x * nb + y].push(x2 * nb + y2);
                }
            }
        }
    }
    FiniteRelationSystem::new(successors).expect("products of total relations are total")
}

/// The five verdicts straight from their definitions.
///
/// Total transitivity checks `F^n` for `n = 1..=state_count`: the cycle
/// period of a strongly connected relation never exceeds its state count.
pub fn oracle_classify(sys: &FiniteRelationSystem) -> Classification {
    let n = sys.state_count();
    let bound = oracle_bound(n);
    let transitive_at =
        |s: &FiniteRelationSystem| oracle_transitive(s, oracle_bound(s.state_count())).expect("bound is sufficient");
    let transitive = oracle_transitive(sys, bound).expect("bound is sufficient");
    Classification {
        transitive,
        bitransitive: transitive_at(&oracle_power(sys, 2)),
        totally_transitive: (1..=n).all(|k| transitive_at(&oracle_power(sys, k))),
        weakly_mixing: transitive_at(&oracle_product(sys, sys)),
        mixing: oracle_mixing(sys),
    }
}

/// Lengths `1..=max_len` of paths from `u` to `v`, by layer enumeration.
pub fn oracle_path_lengths(sys: &FiniteRelationSystem, u: usize, v: usize, max_len: usize) -> Vec<usize> {
    let mut layer = vec![false; sys.state_count()];
    layer[u] = true;
    let mut out = Vec::new();
    for k in 1..=max_len {
        layer = step(sys, &layer);
        if layer[v] {
            out.push(k);
        }
    }
    out
}

fn interpolate(xs: &[Rational], ys: &[Rational], x: &Rational) -> Rational {
    for i in 0..xs.len() - 1 {
        if &xs[i] <= x && x <= &xs[i + 1] {
            let t = (x - &xs[i]) / (&xs[i + 1] - &xs[i]);
            return &ys[i] + (&ys[i + 1] - &ys[i]) * t;
        }
    }
    unreachable!("x outside the breakpoint range")
}

/// Hull of the fiber ends sampled at every multiple of `1/denominator` in
/// `J`, at the ends of `J`, and at the breakpoints inside `J`.
pub fn grid_image_oracle(
    map: &PwlMultimap,
    j: &RationalInterval,
    denominator: u64,
) -> Result<RationalInterval, IntervalError> {
    if denominator == 0 {
        return Err(IntervalError::ZeroCount("denominator"));
    }
    if !map.domain().contains_interval(j) {
        return Err(IntervalError::OutsideDomain {
            what: j.to_string(),
            domain: map.domain().to_string(),
        });
    }
    let xs = map.breakpoints();
    let den = Rational::from_integer(denominator.into());
    let mut samples = vec![j.lo().clone(), j.hi().clone()];
    samples.extend(xs.iter().filter(|x| j.contains(x)).cloned());
    let mut k = (j.lo() * &den).ceil();
    while &k / &den <= *j.hi() {
        samples.push(&k / &den);
        k += int(1);
    }
    let lows = samples.iter().map(|x| interpolate(xs, map.lower_values(), x));
    let highs = samples.iter().map(|x| interpolate(xs, map.upper_values(), x));
    let lo = lows.min().expect("samples nonempty");
    let hi = highs.max().expect("samples nonempty");
    RationalInterval::new(lo, hi)
}

#[cfg(test)]
mod tests;
