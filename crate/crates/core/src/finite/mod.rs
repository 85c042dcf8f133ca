//! Exact decision procedures for transitivity and mixing of set-valued maps
//! on finite discrete spaces.
//!
//! Every subset of a finite discrete space is open and every nonempty open
//! set contains a singleton, so all properties quantify over ordered state
//! pairs. Orbit steps are strictly positive: a one-state system is transitive
//! only through its self-loop.

mod graph;
mod hitting;
mod orbit;
mod system;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use hitting::{hitting_set, wielandt_bound, HittingSet};
pub use orbit::Orbit;
pub use system::FiniteRelationSystem;

/// Default limit on the number of prefixes `orbits_from` may produce.
pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiniteError {
    #[error("state space must be nonempty")]
    EmptySpace,
    #[error("state {state} has no successors")]
    EmptySuccessors { state: usize },
    #[error("state {state} lists successor {successor}, outside 0..{state_count}")]
    SuccessorOutOfRange {
        state: usize,
        successor: usize,
        state_count: usize,
    },
    #[error("\"states\" is {declared} but {listed} successor lists were given")]
    StateCountMismatch { declared: usize, listed: usize },
    #[error("state {state} is outside 0..{state_count}")]
    StateOutOfRange { state: usize, state_count: usize },
    #[error("power must be at least 1")]
    ZeroPower,
    #[error("orbit depth must be at least 1")]
    ZeroDepth,
    #[error("relation is not strongly connected: {to} is unreachable from {from}")]
    NotStronglyConnected { from: usize, to: usize },
    #[error("orbit enumeration exceeded the cap of {cap} prefixes")]
    OrbitCap { cap: usize },
    #[error("invalid orbit: {0}")]
    InvalidOrbit(String),
}

/// The five transitivity and mixing verdicts of one system.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Classification {
    pub transitive: bool,
    pub bitransitive: bool,
    pub totally_transitive: bool,
    pub weakly_mixing: bool,
    pub mixing: bool,
}

impl Classification {
    /// mixing ⇒ weakly mixing ⇒ totally transitive ⇒ bitransitive ⇒ transitive.
    pub fn chain_holds(&self) -> bool {
        let implies = |a: bool, b: bool| !a || b;
        implies(self.mixing, self.weakly_mixing)
            && implies(self.weakly_mixing, self.totally_transitive)
            && implies(self.totally_transitive, self.bitransitive)
            && implies(self.bitransitive, self.transitive)
    }

    /// Verdicts in chain order, strongest first.
    pub fn as_array(&self) -> [(&'static str, bool); 5] {
        [
            ("mixing", self.mixing),
            ("weakly_mixing", self.weakly_mixing),
            ("totally_transitive", self.totally_transitive),
            ("bitransitive", self.bitransitive),
            ("transitive", self.transitive),
        ]
    }
}

/// Successors under exactly `n` steps.
pub fn power_relation(sys: &FiniteRelationSystem, n: usize) -> Result<FiniteRelationSystem, FiniteError> {
    if n == 0 {
        return Err(FiniteError::ZeroPower);
    }
    if n == 1 {
        return Ok(sys.clone());
    }
    FiniteRelationSystem::from_rows(&graph::power_rows(&sys.rows(), n))
}

/// Pair `(s, t)` is encoded as `s * b.state_count() + t`.
pub fn product_relation(a: &FiniteRelationSystem, b: &FiniteRelationSystem) -> FiniteRelationSystem {
    let nb = b.state_count();
    let successors = (0..a.state_count())
        .flat_map(|s| (0..nb).map(move |t| (s, t)))
        .map(|(s, t)| {
            a.successors(s)
                .iter()
                .flat_map(|&s2| b.successors(t).iter().map(move |&t2| s2 * nb + t2))
                .collect()
        })
        .collect();
    FiniteRelationSystem::new(successors).expect("product of total relations is total")
}

pub fn is_strongly_connected(sys: &FiniteRelationSystem) -> bool {
    graph::unreachable_pair(&sys.rows(), &sys.reversed_rows()).is_none()
}

/// Every ordered pair is joined by a path of positive length.
pub fn is_transitive(sys: &FiniteRelationSystem) -> bool {
    // Totality gives the lone state of a one-state system its self-loop, and
    // for two or more states strong connectivity puts every state on a cycle.
    is_strongly_connected(sys)
}

/// Gcd of the cycle lengths of a strongly connected relation.
pub fn period(sys: &FiniteRelationSystem) -> Result<usize, FiniteError> {
    let rows = sys.rows();
    if let Some((from, to)) = graph::unreachable_pair(&rows, &sys.reversed_rows()) {
        return Err(FiniteError::NotStronglyConnected { from, to });
    }
    Ok(graph::cycle_gcd(&rows))
}

/// Strongly connected with period 1 (primitive).
pub fn is_mixing(sys: &FiniteRelationSystem) -> bool {
    matches!(period(sys), Ok(1))
}

/// `F × F` is transitive.
pub fn is_weakly_mixing(sys: &FiniteRelationSystem) -> bool {
    let rows = sys.rows();
    let reversed = sys.reversed_rows();
    // The product projects onto each factor, so a disconnected factor
    // already disconnects the product.
    graph::unreachable_pair(&rows, &reversed).is_none() && graph::square_product_strongly_connected(&rows, &reversed)
}

/// Every power `F^n`, `n >= 1`, is transitive.
///
/// For a strongly connected relation of period `p`, `F^n` splits into
/// `gcd(n, p)` mutually unreachable classes, so the answer is primitivity.
pub fn is_totally_transitive(sys: &FiniteRelationSystem) -> bool {
    is_mixing(sys)
}

/// `F^n` is transitive for every `1 <= n <= bound`.
pub fn is_totally_transitive_up_to(sys: &FiniteRelationSystem, bound: usize) -> bool {
    let rows = sys.rows();
    let mut power = rows.clone();
    for n in 1..=bound {
        if n > 1 {
            power = graph::compose_rows(&power, &rows);
        }
        let reversed = transpose(&power);
        if graph::unreachable_pair(&power, &reversed).is_some() {
            return false;
        }
    }
    true
}

/// `F^2` is transitive.
pub fn is_bitransitive(sys: &FiniteRelationSystem) -> bool {
    let square = graph::power_rows(&sys.rows(), 2);
    let reversed = transpose(&square);
    graph::unreachable_pair(&square, &reversed).is_none()
}

pub fn classify(sys: &FiniteRelationSystem) -> Classification {
    Classification {
        transitive: is_transitive(sys),
        bitransitive: is_bitransitive(sys),
        totally_transitive: is_totally_transitive(sys),
        weakly_mixing: is_weakly_mixing(sys),
        mixing: is_mixing(sys),
    }
}

fn transpose(rows: &[fixedbitset::FixedBitSet]) -> Vec<fixedbitset::FixedBitSet> {
    let n = rows.len();
    let mut out = vec![fixedbitset::FixedBitSet::with_capacity(n); n];
    for (s, row) in rows.iter().enumerate() {
        for t in row.ones() {
            out[t].insert(s);
        }
    }
    out
}

/// An orbit prefix visiting every state, present exactly when the system is
/// transitive.
///
/// Built greedily: from the current state, walk a shortest path to the
/// nearest unvisited state until none remain.
pub fn dense_orbit(sys: &FiniteRelationSystem) -> Option<Orbit> {
    if !is_transitive(sys) {
        return None;
    }
    let n = sys.state_count();
    let mut visited = vec![false; n];
    let mut remaining = n - 1;
    let mut points = vec![0usize];
    visited[0] = true;
    let mut current = 0usize;
    while remaining > 0 {
        let path = shortest_path_to(sys, current, |s| !visited[s])?;
        for &s in &path {
            if !visited[s] {
                visited[s] = true;
                remaining -= 1;
            }
        }
        current = *path.last().expect("nonempty path");
        points.extend(path);
    }
    Some(Orbit::new(points))
}

/// Shortest path of positive length from `start` to a state satisfying
/// `goal`, excluding `start` itself from the returned sequence.
fn shortest_path_to(sys: &FiniteRelationSystem, start: usize, goal: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    let n = sys.state_count();
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for &t in sys.successors(start) {
        if parent[t] == usize::MAX {
            parent[t] = start;
            queue.push_back(t);
        }
    }
    while let Some(s) = queue.pop_front() {
        if goal(s) {
            let mut path = vec![s];
            let mut cur = s;
            // Only first steps out of `start` have `start` as parent.
            while parent[cur] != start {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &t in sys.successors(s) {
            if parent[t] == usize::MAX {
                parent[t] = s;
                queue.push_back(t);
            }
        }
    }
    None
}

/// Length of the shortest cycle through `state`, if any.
pub fn shortest_cycle_through(sys: &FiniteRelationSystem, state: usize) -> Option<usize> {
    let n = sys.state_count();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for &t in sys.successors(state) {
        if dist[t] == usize::MAX {
            dist[t] = 1;
            queue.push_back(t);
        }
    }
    while let Some(s) = queue.pop_front() {
        if s == state {
            return Some(dist[s]);
        }
        for &t in sys.successors(s) {
            if dist[t] == usize::MAX {
                dist[t] = dist[s] + 1;
                queue.push_back(t);
            }
        }
    }
    None
}

/// Every state on a cycle, paired with the shortest cycle length through it.
///
/// A state may lie on cycles of several lengths; the reported period is the
/// smallest one.
pub fn periodic_points(sys: &FiniteRelationSystem) -> Vec<(usize, usize)> {
    (0..sys.state_count())
        .filter_map(|s| shortest_cycle_through(sys, s).map(|m| (s, m)))
        .collect()
}

pub fn fixed_points(sys: &FiniteRelationSystem) -> Vec<usize> {
    (0..sys.state_count()).filter(|&s| sys.contains_edge(s, s)).collect()
}

/// All orbit prefixes `(x_0 = x, .., x_depth)` in lexicographic order, each
/// carrying its period certificate.
pub fn orbits_from(sys: &FiniteRelationSystem, x: usize, depth: usize, cap: usize) -> Result<Vec<Orbit>, FiniteError> {
    sys.check_state(x)?;
    if depth == 0 {
        return Err(FiniteError::ZeroDepth);
    }
    let mut out = Vec::new();
    let mut prefix = vec![x];
    // Stack of successor cursors, one per extended position.
    let mut cursors: Vec<usize> = vec![0];
    while let Some(cursor) = cursors.last_mut() {
        let tip = *prefix.last().expect("prefix holds x");
        let succ = sys.successors(tip);
        if *cursor == succ.len() {
            cursors.pop();
            prefix.pop();
            continue;
        }
        let next = succ[*cursor];
        *cursor += 1;
        prefix.push(next);
        if prefix.len() == depth + 1 {
            if out.len() == cap {
                return Err(FiniteError::OrbitCap { cap });
            }
            out.push(Orbit::new(prefix.clone()));
            prefix.pop();
        } else {
            cursors.push(0);
        }
    }
    Ok(out)
}
