use serde::{Deserialize, Serialize};

use super::{FiniteError, FiniteRelationSystem};

/// A finite orbit prefix `(x_0, .., x_k)` with `x_{i+1} ∈ F(x_i)`.
///
/// `period`, when present, is the smallest `m` with `1 <= m <= k` such that
/// `x_i = x_{i+m}` for every represented `i`. Such an `m` always extends to a
/// genuine periodic orbit: `x_m = x_0` is a successor of `x_{m-1}`, so the
/// block `(x_0, .., x_{m-1})` repeats forever.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Orbit {
    pub points: Vec<usize>,
    pub period: Option<usize>,
}

impl Orbit {
    /// Wraps a point sequence, computing its period certificate.
    pub fn new(points: Vec<usize>) -> Self {
        let period = smallest_period(&points);
        Self { points, period }
    }

    /// Wraps a point sequence without a period certificate.
    pub fn uncertified(points: Vec<usize>) -> Self {
        Self { points, period: None }
    }

    /// Number of steps represented (`k` for points `x_0..=x_k`).
    pub fn steps(&self) -> usize {
        self.points.len().saturating_sub(1)
    }

    /// `x_i = x_{i+m}` for every represented `i`.
    pub fn admits_period(&self, m: usize) -> bool {
        m >= 1 && m < self.points.len() && self.points.iter().zip(&self.points[m..]).all(|(a, b)| a == b)
    }

    /// `x_0 = x_j`: the orbit returns to its starting point at step `j`.
    pub fn returns_at(&self, j: usize) -> bool {
        j < self.points.len() && self.points[0] == self.points[j]
    }

    pub fn visits_all(&self, state_count: usize) -> bool {
        let mut seen = vec![false; state_count];
        for &p in &self.points {
            if p < state_count {
                seen[p] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Checks step containment against `sys` and the period certificate
    /// against the points.
    pub fn validate(&self, sys: &FiniteRelationSystem) -> Result<(), FiniteError> {
        let Some(&first) = self.points.first() else {
            return Err(FiniteError::InvalidOrbit("orbit has no points".into()));
        };
        sys.check_state(first)?;
        for (i, pair) in self.points.windows(2).enumerate() {
            sys.check_state(pair[1])?;
            if !sys.contains_edge(pair[0], pair[1]) {
                return Err(FiniteError::InvalidOrbit(format!(
                    "step {i}: {} is not a successor of {}",
                    pair[1], pair[0]
                )));
            }
        }
        if let Some(m) = self.period {
            if !self.admits_period(m) {
                return Err(FiniteError::InvalidOrbit(format!(
                    "period {m} is not witnessed by the points"
                )));
            }
            if smallest_period(&self.points) != Some(m) {
                return Err(FiniteError::InvalidOrbit(format!(
                    "period {m} is not the smallest witness"
                )));
            }
        }
        Ok(())
    }
}

fn smallest_period(points: &[usize]) -> Option<usize> {
    (1..points.len()).find(|&m| points.iter().zip(&points[m..]).all(|(a, b)| a == b))
}
