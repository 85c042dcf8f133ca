use serde::{Deserialize, Serialize};

use super::{Rational, RationalInterval};

/// A finite union of closed intervals, kept sorted with strict gaps between
/// consecutive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<RationalInterval>", into = "Vec<RationalInterval>")]
pub struct IntervalUnion {
    parts: Vec<RationalInterval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Normalizes arbitrary closed intervals: sorts them and merges any that
    /// overlap or touch.
    pub fn from_parts(mut parts: Vec<RationalInterval>) -> Self {
        parts.sort_by(|a, b| a.lo().cmp(b.lo()).then_with(|| a.hi().cmp(b.hi())));
        let mut merged: Vec<RationalInterval> = Vec::with_capacity(parts.len());
        for part in parts {
            match merged.last_mut() {
                Some(last) if part.lo() <= last.hi() => {
                    if part.hi() > last.hi() {
                        *last = last.hull(&part);
                    }
                }
                _ => merged.push(part),
            }
        }
        Self { parts: merged }
    }

    pub fn points(points: impl IntoIterator<Item = Rational>) -> Self {
        Self::from_parts(points.into_iter().map(RationalInterval::point).collect())
    }

    pub fn parts(&self) -> &[RationalInterval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let idx = self.parts.partition_point(|p| p.hi() < x);
        self.parts.get(idx).is_some_and(|p| p.contains(x))
    }

    pub fn intersects(&self, other: &RationalInterval) -> bool {
        let idx = self.parts.partition_point(|p| p.hi() < other.lo());
        self.parts.get(idx).is_some_and(|p| p.intersects(other))
    }

    /// Meets the half-open interval `[lo, hi)`.
    pub fn meets_half_open(&self, lo: &Rational, hi: &Rational) -> bool {
        let idx = self.parts.partition_point(|p| p.hi() < lo);
        self.parts.get(idx).is_some_and(|p| p.lo() < hi)
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        Self::from_parts(self.parts.iter().chain(&other.parts).cloned().collect())
    }

    /// Maximal open intervals of `domain` not covered by the union.
    pub fn gaps_within(&self, domain: &RationalInterval) -> Vec<RationalInterval> {
        let mut gaps = Vec::new();
        let mut cursor = domain.lo().clone();
        for part in &self.parts {
            if part.lo() > &cursor && part.lo() <= domain.hi() {
                gaps.push(RationalInterval::new(cursor.clone(), part.lo().clone()).expect("ordered"));
            }
            if part.hi() > &cursor {
                cursor = part.hi().clone();
            }
        }
        if &cursor < domain.hi() {
            gaps.push(RationalInterval::new(cursor, domain.hi().clone()).expect("ordered"));
        }
        gaps
    }
}

impl FromIterator<RationalInterval> for IntervalUnion {
    fn from_iter<T: IntoIterator<Item = RationalInterval>>(iter: T) -> Self {
        Self::from_parts(iter.into_iter().collect())
    }
}

impl From<Vec<RationalInterval>> for IntervalUnion {
    fn from(parts: Vec<RationalInterval>) -> Self {
        Self::from_parts(parts)
    }
}

impl From<IntervalUnion> for Vec<RationalInterval> {
    fn from(union: IntervalUnion) -> Self {
        union.parts
    }
}
