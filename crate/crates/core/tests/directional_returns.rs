//! Returns to an interval free of short periodic points.
//!
//! If `x` returns upward after `m` steps and `y` downward after `n` steps,
//! the interval must hold a periodic point of period `m*k` (`k <= n`) or
//! `n*k` (`k <= m`). With no periodic points at all, every return to the
//! interval moves in the same direction.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use setdyn::interval::{
    periodic_point_set, rat, sample_orbit, IntervalUnion, OrbitPolicy, PwlMultimap, DEFAULT_BREAKPOINT_CAP,
};
use setdyn::random::{random_pwl, RandomPwlSpec};

const B: usize = 3;

fn map() -> impl Strategy<Value = PwlMultimap> {
    let spec = RandomPwlSpec {
        max_pieces: 4,
        max_denominator: 16,
        singleton_probability: 0.5,
        max_thickness: Some(rat(1, 16)),
    };
    any::<u64>().prop_map(move |seed| random_pwl(&mut ChaCha8Rng::seed_from_u64(seed), &spec))
}

fn periodic_points_of(map: &PwlMultimap, periods: impl IntoIterator<Item = usize>) -> IntervalUnion {
    periods.into_iter().fold(IntervalUnion::empty(), |acc, p| {
        acc.union(&periodic_point_set(map, p, DEFAULT_BREAKPOINT_CAP).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn opposite_returns_force_a_periodic_point(m in map(), seed in any::<u64>()) {
        let short = periodic_points_of(&m, 1..=B);
        for gap in short.gaps_within(m.domain()).into_iter().filter(|g| !g.is_degenerate()) {
            let (mut up, mut down) = (None::<usize>, None::<usize>);
            for k in 1..=8 {
                let y = gap.lo() + gap.width() * rat(k, 9);
                for policy in [OrbitPolicy::Lower, OrbitPolicy::Upper, OrbitPolicy::Midpoint, OrbitPolicy::SeededRandom(seed)] {
                    let orbit = sample_orbit(&m, &y, B, policy).unwrap();
                    for (n, yn) in orbit.iter().enumerate().skip(1).filter(|(_, p)| gap.contains_interior(p)) {
                        prop_assert_ne!(yn, &y);
                        let slot = if yn > &y { &mut up } else { &mut down };
                        *slot = Some(slot.map_or(n, |s| s.min(n)));
                    }
                }
            }
            if let (Some(a), Some(b)) = (up, down) {
                let periods = (1..=b).map(|k| a * k).chain((1..=a).map(|k| b * k));
                let forced = periodic_points_of(&m, periods);
                prop_assert!(
                    forced.parts().iter().any(|p| p.meets_interior_of(&gap)),
                    "returns up after {a} and down after {b} in {gap} without a periodic point"
                );
            }
        }
    }
}
