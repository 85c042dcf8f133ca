use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::pwl::{compose_capped, power};
use super::rational::int;
use super::{IntervalError, IntervalUnion, PwlMultimap, Rational, RationalInterval};

/// Largest grid resolution accepted by the grid-based checks.
pub const MAX_RESOLUTION: u32 = 16;

/// `F(J) = [min_J l, max_J u]`.
///
/// `J` is connected and `l <= u` are continuous, so the union of the fibers
/// over `J` is the single interval between those extrema.
pub fn image(map: &PwlMultimap, j: &RationalInterval) -> Result<RationalInterval, IntervalError> {
    map.check_interval(j)?;
    let (lo, hi) = map.extrema(j.lo(), j.hi());
    Ok(RationalInterval::new(lo, hi).expect("min l <= max u"))
}

/// `(F^1(J), .., F^n(J))`.
pub fn iterate_image(
    map: &PwlMultimap,
    j: &RationalInterval,
    n: usize,
) -> Result<Vec<RationalInterval>, IntervalError> {
    if n == 0 {
        return Err(IntervalError::ZeroCount("iteration count"));
    }
    map.check_interval(j)?;
    let mut out = Vec::with_capacity(n);
    let mut current = j.clone();
    for _ in 0..n {
        current = image(map, &current)?;
        out.push(current.clone());
    }
    Ok(out)
}

/// `F^n(J)` for `n = 0, 1, ..`, stopped at the first repeated interval or
/// one step past the horizon. After a repeat the whole sequence is known.
struct ImageSequence {
    seq: Vec<RationalInterval>,
    cycle: Option<(usize, usize)>,
}

impl ImageSequence {
    fn run(map: &PwlMultimap, j: &RationalInterval, horizon: usize) -> Self {
        let mut seq = vec![j.clone()];
        let mut seen: HashMap<RationalInterval, usize> = HashMap::from([(j.clone(), 0)]);
        let mut cycle = None;
        for step in 1..=horizon + 1 {
            let next = image(map, &seq[step - 1]).expect("images stay in the domain");
            if let Some(&start) = seen.get(&next) {
                cycle = Some((start, step - start));
                break;
            }
            seen.insert(next.clone(), step);
            seq.push(next);
        }
        Self { seq, cycle }
    }

    fn at(&self, n: usize) -> &RationalInterval {
        match self.cycle {
            Some((start, len)) if n >= self.seq.len() => &self.seq[start + (n - start) % len],
            _ => &self.seq[n],
        }
    }

    /// Smallest `M` such that `target ⊆ F^n(J)` for all `M <= n <= horizon`.
    fn first_cover(&self, target: &RationalInterval, horizon: usize) -> Option<usize> {
        let mut first = None;
        for n in (1..=horizon).rev() {
            if !self.at(n).contains_interval(target) {
                break;
            }
            first = Some(n);
        }
        first
    }

    /// The sequence has cycled and every member of the cycle contains `target`.
    fn persistently_covers(&self, target: &RationalInterval) -> bool {
        self.cycle
            .is_some_and(|(start, len)| (start..start + len).all(|n| self.at(n).contains_interval(target)))
    }
}

/// First index of persistent coverage, with whether it is certified forever.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Covering {
    pub first: usize,
    pub persistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverTrace {
    pub covering: Option<Covering>,
    /// `F^1(J), .., F^horizon(J)`.
    pub trace: Vec<RationalInterval>,
}

fn check_cover_args(
    map: &PwlMultimap,
    j: &RationalInterval,
    target: &RationalInterval,
    horizon: usize,
) -> Result<(), IntervalError> {
    if horizon == 0 {
        return Err(IntervalError::ZeroCount("horizon"));
    }
    map.check_interval(j)?;
    map.check_interval(target)?;
    if j.is_degenerate() {
        return Err(IntervalError::DegenerateSource);
    }
    let domain = map.domain();
    if !(domain.lo() < target.lo() && target.hi() < domain.hi()) {
        return Err(IntervalError::TargetTouchesBoundary {
            target: target.to_string(),
            domain: domain.to_string(),
        });
    }
    Ok(())
}

/// Smallest `M <= horizon` with `target ⊆ F^n(J)` for all `n` in
/// `[M, horizon]`; `persistent` when the image sequence has provably entered
/// a cycle whose members all contain `target`.
pub fn covers(
    map: &PwlMultimap,
    j: &RationalInterval,
    target: &RationalInterval,
    horizon: usize,
) -> Result<Option<Covering>, IntervalError> {
    Ok(cover_trace(map, j, target, horizon)?.covering)
}

/// [`covers`] together with the full image trace.
pub fn cover_trace(
    map: &PwlMultimap,
    j: &RationalInterval,
    target: &RationalInterval,
    horizon: usize,
) -> Result<CoverTrace, IntervalError> {
    check_cover_args(map, j, target, horizon)?;
    let seq = ImageSequence::run(map, j, horizon);
    let covering = seq.first_cover(target, horizon).map(|first| Covering {
        first,
        persistent: seq.persistently_covers(target),
    });
    let trace = (1..=horizon).map(|n| seq.at(n).clone()).collect();
    Ok(CoverTrace { covering, trace })
}

/// Solution set of `a(x) <= 0` on `[x0, x1]` for `a` linear with
/// endpoint values `a0`, `a1`.
fn solve_nonpositive(x0: &Rational, x1: &Rational, a0: &Rational, a1: &Rational) -> Option<(Rational, Rational)> {
    let zero = int(0);
    match (a0 <= &zero, a1 <= &zero) {
        (true, true) => Some((x0.clone(), x1.clone())),
        (false, false) => None,
        (start_ok, _) => {
            let root = x0 + a0 * (x1 - x0) / (a0 - a1);
            if start_ok {
                Some((x0.clone(), root))
            } else {
                Some((root, x1.clone()))
            }
        }
    }
}

/// `{ x : l(x) <= x <= u(x) }`, that is `x ∈ F(x)`.
pub fn fixed_point_set(map: &PwlMultimap) -> IntervalUnion {
    let xs = map.breakpoints();
    let (lo, hi) = (map.lower_values(), map.upper_values());
    let mut parts = Vec::new();
    for i in 0..xs.len() - 1 {
        let (x0, x1) = (&xs[i], &xs[i + 1]);
        // l(x) - x <= 0 and x - u(x) <= 0 on the piece.
        let below = solve_nonpositive(x0, x1, &(&lo[i] - x0), &(&lo[i + 1] - x1));
        let above = solve_nonpositive(x0, x1, &(x0 - &hi[i]), &(x1 - &hi[i + 1]));
        if let (Some((p0, p1)), Some((q0, q1))) = (below, above) {
            let start = p0.max(q0);
            let end = p1.min(q1);
            if start <= end {
                parts.push(RationalInterval::new(start, end).expect("ordered"));
            }
        }
    }
    IntervalUnion::from_parts(parts)
}

/// `{ x : x ∈ F^m(x) }`, the points with a cyclic orbit of length `m`.
///
/// Contains every point of exact period `m` but also those of periods
/// dividing `m`.
pub fn periodic_point_set(map: &PwlMultimap, m: usize, cap: usize) -> Result<IntervalUnion, IntervalError> {
    Ok(fixed_point_set(&power(map, m, cap)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellWitness {
    pub cell: RationalInterval,
    /// Smallest `m` whose period-`m` set meets the cell.
    pub period: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReport {
    pub dense: bool,
    pub cells: Vec<CellWitness>,
}

fn check_resolution(resolution: u32) -> Result<(), IntervalError> {
    if resolution == 0 {
        return Err(IntervalError::ZeroCount("resolution"));
    }
    if resolution > MAX_RESOLUTION {
        return Err(IntervalError::ResolutionTooLarge {
            resolution,
            max: MAX_RESOLUTION,
        });
    }
    Ok(())
}

/// Whether every one of the `2^resolution` grid cells meets a periodic point
/// of period at most `period_bound`.
///
/// Cells are half-open `[lo, hi)` except the last, which is closed, so each
/// point of the domain belongs to exactly one cell.
pub fn periodic_density_check(
    map: &PwlMultimap,
    resolution: u32,
    period_bound: usize,
    cap: usize,
) -> Result<DensityReport, IntervalError> {
    check_resolution(resolution)?;
    if period_bound == 0 {
        return Err(IntervalError::ZeroCount("period bound"));
    }
    let cells = map.domain().dyadic_cells(resolution);
    let last = cells.len() - 1;
    let mut witness: Vec<Option<usize>> = vec![None; cells.len()];
    let mut iterate = map.clone();
    for m in 1..=period_bound {
        if m > 1 {
            iterate = compose_capped(map, &iterate, cap)?;
        }
        let periodic = fixed_point_set(&iterate);
        for (i, cell) in cells.iter().enumerate() {
            if witness[i].is_none() {
                let hit = if i == last {
                    periodic.intersects(cell)
                } else {
                    periodic.meets_half_open(cell.lo(), cell.hi())
                };
                if hit {
                    witness[i] = Some(m);
                }
            }
        }
        if witness.iter().all(Option::is_some) {
            break;
        }
    }
    Ok(DensityReport {
        dense: witness.iter().all(Option::is_some),
        cells: cells
            .into_iter()
            .zip(witness)
            .map(|(cell, period)| CellWitness { cell, period })
            .collect(),
    })
}

/// Covering outcome for one grid cell `J` and one target `[c, d]`, given by
/// the grid indices of `c` and `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCover {
    pub cell: usize,
    pub target: [usize; 2],
    pub first_cover: Option<usize>,
    pub persistent: bool,
}

/// First `n` with `F^n(G)` meeting the interior of `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairHit {
    pub from: usize,
    pub to: usize,
    pub first_hit: Option<usize>,
}

/// Covering evidence for transitivity and mixing at a fixed grid resolution
/// and iteration horizon. Never a verdict by itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub resolution: u32,
    pub horizon: usize,
    /// Every (cell, target) pair is covered persistently within the horizon.
    pub mixing_evidence: bool,
    /// Every ordered pair of cells is connected within the horizon.
    pub transitivity_evidence: bool,
    /// Transitivity evidence without mixing evidence. On an interval these
    /// notions coincide for transitive maps, so this asks for a deeper horizon.
    pub potential_counterexample: bool,
    #[serde(with = "super::rational::text_vec")]
    pub grid: Vec<Rational>,
    pub covers: Vec<PairCover>,
    pub hits: Vec<PairHit>,
}

/// Runs the covering criterion for every grid cell `J` against every target
/// `[c, d]` spanned by two interior grid points, and the cell-to-cell hitting
/// check for transitivity.
///
/// Targets need two distinct interior grid points, so resolution 1 has none
/// and yields no mixing evidence. Output order is by cell, then target, and
/// does not depend on the number of worker threads.
pub fn classify_at_resolution(
    map: &PwlMultimap,
    resolution: u32,
    horizon: usize,
) -> Result<ClassificationRecord, IntervalError> {
    check_resolution(resolution)?;
    if horizon == 0 {
        return Err(IntervalError::ZeroCount("horizon"));
    }
    let grid = map.domain().dyadic_grid(resolution);
    let cells = map.domain().dyadic_cells(resolution);
    let interior = 1..grid.len() - 1;
    let targets: Vec<[usize; 2]> = interior
        .clone()
        .flat_map(|c| (c + 1..interior.end).map(move |d| [c, d]))
        .collect();

    let per_cell: Vec<(Vec<PairCover>, Vec<PairHit>)> = cells
        .par_iter()
        .enumerate()
        .map(|(ci, cell)| {
            let seq = ImageSequence::run(map, cell, horizon);
            let covers = targets
                .iter()
                .map(|&[c, d]| {
                    let target = RationalInterval::new(grid[c].clone(), grid[d].clone()).expect("c < d");
                    let first_cover = seq.first_cover(&target, horizon);
                    PairCover {
                        cell: ci,
                        target: [c, d],
                        first_cover,
                        persistent: first_cover.is_some() && seq.persistently_covers(&target),
                    }
                })
                .collect();
            let hits = cells
                .iter()
                .enumerate()
                .map(|(hi, h)| PairHit {
                    from: ci,
                    to: hi,
                    first_hit: (1..=horizon).find(|&n| seq.at(n).meets_interior_of(h)),
                })
                .collect();
            (covers, hits)
        })
        .collect();

    let (covers, hits): (Vec<Vec<PairCover>>, Vec<Vec<PairHit>>) = per_cell.into_iter().unzip();
    let covers: Vec<PairCover> = covers.into_iter().flatten().collect();
    let hits: Vec<PairHit> = hits.into_iter().flatten().collect();
    let mixing_evidence = !covers.is_empty() && covers.iter().all(|c| c.persistent);
    let transitivity_evidence = hits.iter().all(|h| h.first_hit.is_some());
    Ok(ClassificationRecord {
        resolution,
        horizon,
        mixing_evidence,
        transitivity_evidence,
        potential_counterexample: transitivity_evidence && !mixing_evidence,
        grid,
        covers,
        hits,
    })
}

/// How `sample_orbit` picks the next point from the fiber `[l(x), u(x)]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitPolicy {
    Lower,
    Upper,
    Midpoint,
    /// `l + (u - l) * k / 1024` with `k` drawn from a seeded generator.
    SeededRandom(u64),
}

const RANDOM_GRID: i64 = 1024;

/// An orbit prefix `(x_0, .., x_steps)` with each `x_{i+1} ∈ F(x_i)`.
pub fn sample_orbit(
    map: &PwlMultimap,
    x0: &Rational,
    steps: usize,
    policy: OrbitPolicy,
) -> Result<Vec<Rational>, IntervalError> {
    map.check_point(x0)?;
    let mut rng = match policy {
        OrbitPolicy::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut points = Vec::with_capacity(steps + 1);
    points.push(x0.clone());
    for _ in 0..steps {
        let x = points.last().expect("x0 pushed");
        let (l, u) = (map.lower_at(x), map.upper_at(x));
        let next = match policy {
            OrbitPolicy::Lower => l,
            OrbitPolicy::Upper => u,
            OrbitPolicy::Midpoint => (l + u) / int(2),
            OrbitPolicy::SeededRandom(_) => {
                let k = rng.as_mut().expect("seeded").gen_range(0..=RANDOM_GRID);
                &l + (&u - &l) * int(k) / int(RANDOM_GRID)
            }
        };
        points.push(next);
    }
    Ok(points)
}
