//! Random instances for property tests and the acceptance sweep.

use rand::seq::index::sample;
use rand::Rng;

use crate::finite::FiniteRelationSystem;
use crate::interval::{int, rat, PwlBoundary, PwlMultimap, Rational, RationalInterval};

/// A total relation on `state_count` states.
///
/// Most systems are sparse, with out-degree 1 to 3 so that cycles, periods
/// and unreachable pairs all show up; the rest draw each edge independently
/// with a random density.
pub fn random_system<R: Rng + ?Sized>(rng: &mut R, state_count: usize) -> FiniteRelationSystem {
    assert!(state_count > 0, "state_count must be positive");
    let sparse = rng.gen_bool(0.75);
    let density: f64 = rng.gen_range(0.05..0.6);
    let successors = (0..state_count)
        .map(|_| {
            if sparse {
                let degree = rng.gen_range(1..=3.min(state_count));
                sample(rng, state_count, degree).into_vec()
            } else {
                let mut row: Vec<usize> = (0..state_count).filter(|_| rng.gen_bool(density)).collect();
                if row.is_empty() {
                    row.push(rng.gen_range(0..state_count));
                }
                row
            }
        })
        .collect();
    FiniteRelationSystem::new(successors).expect("rows are nonempty and in range")
}

#[derive(Clone, Debug)]
pub struct RandomPwlSpec {
    /// Upper bound on the number of linear pieces (breakpoints minus one).
    pub max_pieces: usize,
    /// Upper bound on every denominator, both breakpoints and values.
    pub max_denominator: i64,
    /// Chance that the map is single-valued.
    pub singleton_probability: f64,
    /// When set, `u - l` at each breakpoint is at most this.
    pub max_thickness: Option<Rational>,
}

impl Default for RandomPwlSpec {
    fn default() -> Self {
        Self {
            max_pieces: 15,
            max_denominator: 64,
            singleton_probability: 0.3,
            max_thickness: None,
        }
    }
}

fn random_value<R: Rng + ?Sized>(rng: &mut R, max_denominator: i64) -> Rational {
    let q = rng.gen_range(1..=max_denominator);
    rat(rng.gen_range(0..=q), q)
}

/// A multimap on `[0, 1]` whose breakpoints share one denominator.
pub fn random_pwl<R: Rng + ?Sized>(rng: &mut R, spec: &RandomPwlSpec) -> PwlMultimap {
    let den = rng.gen_range(1..=spec.max_denominator);
    let interior_cap = (spec.max_pieces.max(1) - 1).min(den as usize - 1);
    let interior = rng.gen_range(0..=interior_cap);
    let mut numerators: Vec<i64> = sample(rng, den as usize - 1, interior)
        .into_iter()
        .map(|k| k as i64 + 1)
        .collect();
    numerators.sort_unstable();
    let xs: Vec<Rational> = std::iter::once(int(0))
        .chain(numerators.iter().map(|&k| rat(k, den)))
        .chain(std::iter::once(int(1)))
        .collect();

    let singleton = rng.gen_bool(spec.singleton_probability);
    let (mut lower, mut upper) = (Vec::with_capacity(xs.len()), Vec::with_capacity(xs.len()));
    for _ in &xs {
        let a = random_value(rng, spec.max_denominator);
        let b = match (&spec.max_thickness, singleton) {
            (_, true) => a.clone(),
            (Some(t), false) => {
                let widened = &a + t * random_value(rng, spec.max_denominator);
                widened.min(int(1))
            }
            (None, false) => random_value(rng, spec.max_denominator),
        };
        let (l, u) = if a <= b { (a, b) } else { (b, a) };
        lower.push(l);
        upper.push(u);
    }
    let domain = RationalInterval::new(int(0), int(1)).expect("unit interval");
    let lower = PwlBoundary::new(xs.clone(), lower).expect("increasing breakpoints");
    let upper = PwlBoundary::new(xs, upper).expect("increasing breakpoints");
    PwlMultimap::new(domain, lower, upper).expect("ordered fibers inside the domain")
}

/// A subinterval of `domain` with ends on the grid of `cells` equal steps.
pub fn random_subinterval<R: Rng + ?Sized>(
    rng: &mut R,
    domain: &RationalInterval,
    cells: i64,
    allow_degenerate: bool,
) -> RationalInterval {
    let grid = |k: i64| domain.lo() + domain.width() * rat(k, cells);
    loop {
        let a = rng.gen_range(0..=cells);
        let b = rng.gen_range(0..=cells);
        if a == b && !allow_degenerate {
            continue;
        }
        return RationalInterval::new(grid(a.min(b)), grid(a.max(b))).expect("ordered ends");
    }
}
