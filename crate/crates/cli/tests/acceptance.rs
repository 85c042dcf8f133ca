//! Acceptance criteria, one line per criterion. Exits nonzero if any fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use setdyn::finite::{classify, dense_orbit, is_transitive, orbits_from, FiniteRelationSystem, DEFAULT_ORBIT_CAP};
use setdyn::interval::{
    classify_at_resolution, covers, image, int, periodic_density_check, periodic_point_set, rat, sample_orbit,
    IntervalUnion, OrbitPolicy, PwlBoundary, PwlMultimap, Rational, RationalInterval, DEFAULT_BREAKPOINT_CAP,
};
use setdyn::oracle::{enumerate_systems, grid_image_oracle, oracle_classify, EnumerationSpec};
use setdyn::random::{random_pwl, random_subinterval, random_system, RandomPwlSpec};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn unit() -> RationalInterval {
    RationalInterval::new(int(0), int(1)).unwrap()
}

fn iv(a: (i64, i64), b: (i64, i64)) -> RationalInterval {
    RationalInterval::new(rat(a.0, a.1), rat(b.0, b.1)).unwrap()
}

fn tent() -> PwlMultimap {
    let b = PwlBoundary::from_points([(int(0), int(0)), (rat(1, 2), int(1)), (int(1), int(0))]).unwrap();
    PwlMultimap::singleton(unit(), b).unwrap()
}

fn exhaustive() -> Vec<FiniteRelationSystem> {
    (1..=4)
        .flat_map(|n| enumerate_systems(EnumerationSpec::all(n)).unwrap())
        .collect()
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn oracle_equivalence(systems: &[FiniteRelationSystem]) -> Outcome {
    let start = Instant::now();
    let mismatches = systems.iter().filter(|s| classify(s) != oracle_classify(s)).count();
    let elapsed = start.elapsed();
    outcome(
        mismatches == 0 && systems.len() == 50_978 && elapsed < Duration::from_secs(60),
        format!(
            "{} systems, {mismatches} mismatches, {} single-threaded",
            systems.len(),
            secs(elapsed)
        ),
    )
}

fn implication_chain(systems: &[FiniteRelationSystem]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let random: Vec<_> = (0..10_000)
        .map(|_| {
            let n = rng.gen_range(1..=64);
            random_system(&mut rng, n)
        })
        .collect();
    let violations = systems
        .iter()
        .chain(&random)
        .filter(|s| !classify(s).chain_holds())
        .count();
    let mixing = random.iter().filter(|s| classify(s).mixing).count();
    let transitive = random.iter().filter(|s| classify(s).transitive).count();
    outcome(
        violations == 0,
        format!(
            "{} exhaustive + {} random systems, {violations} violations ({transitive} random transitive, {mixing} mixing)",
            systems.len(),
            random.len()
        ),
    )
}

fn strictness(systems: &[FiniteRelationSystem]) -> Outcome {
    let verdicts: Vec<_> = systems.iter().map(classify).collect();
    let not_bi = verdicts.iter().filter(|c| c.transitive && !c.bitransitive).count();
    let not_total = verdicts
        .iter()
        .filter(|c| c.bitransitive && !c.totally_transitive)
        .count();
    let two_cycle = classify(&FiniteRelationSystem::cycle(2).unwrap());
    let three_cycle = classify(&FiniteRelationSystem::cycle(3).unwrap());
    let named =
        two_cycle.transitive && !two_cycle.bitransitive && three_cycle.bitransitive && !three_cycle.totally_transitive;
    outcome(
        not_bi > 0 && not_total > 0 && named,
        format!("{not_bi} transitive-not-bitransitive, {not_total} bitransitive-not-totally-transitive; cycles confirm: {named}"),
    )
}

fn dense_orbits(systems: &[FiniteRelationSystem]) -> Outcome {
    let mut bad = 0;
    let mut found = 0;
    for sys in systems {
        match dense_orbit(sys) {
            Some(orbit) => {
                found += 1;
                let valid = orbit.validate(sys).is_ok() && orbit.visits_all(sys.state_count());
                bad += usize::from(!valid || !is_transitive(sys));
            }
            None => bad += usize::from(is_transitive(sys)),
        }
    }
    outcome(
        bad == 0,
        format!("{found} dense orbits over {} systems, {bad} failures", systems.len()),
    )
}

fn example_orbit() -> Outcome {
    let sys = FiniteRelationSystem::new(vec![vec![1], vec![0, 1]]).unwrap();
    let orbits = orbits_from(&sys, 0, 5, DEFAULT_ORBIT_CAP).unwrap();
    let hit = orbits.iter().find(|o| o.points == [0, 1, 1, 0, 1, 0]);
    let passed = hit.is_some_and(|o| o.returns_at(3) && !o.admits_period(3) && o.validate(&sys).is_ok());
    let period = hit.and_then(|o| o.period);
    outcome(
        passed,
        format!(
            "{} prefixes; (0,1,1,0,1,0) found: {}, x0 = x3 without period 3 (certified period {period:?})",
            orbits.len(),
            hit.is_some()
        ),
    )
}

fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> u64 {
    let lcm = values.into_iter().fold(BigInt::from(1), |acc, v| acc.lcm(v.denom()));
    u64::try_from(lcm).unwrap()
}

fn image_exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let spec = RandomPwlSpec::default();
    let mut mismatches = 0;
    let mut max_breakpoints = 0;
    for _ in 0..1000 {
        let map = random_pwl(&mut rng, &spec);
        let cells = rng.gen_range(1..=64);
        let j = random_subinterval(&mut rng, &unit(), cells, true);
        let den = common_denominator(map.breakpoints().iter().chain([j.lo(), j.hi()]));
        max_breakpoints = max_breakpoints.max(map.breakpoints().len());
        mismatches += usize::from(image(&map, &j).unwrap() != grid_image_oracle(&map, &j, den).unwrap());
    }
    outcome(
        mismatches == 0 && max_breakpoints <= 16,
        format!("1000 maps (at most {max_breakpoints} breakpoints), {mismatches} mismatches"),
    )
}

fn tent_covering() -> Outcome {
    let start = Instant::now();
    let cover = covers(&tent(), &iv((2, 5), (3, 5)), &iv((1, 10), (9, 10)), 16).unwrap();
    let record = classify_at_resolution(&tent(), 3, 32).unwrap();
    let elapsed = start.elapsed();
    let cover_ok = cover.as_ref().is_some_and(|c| c.first == 4 && c.persistent);
    outcome(
        cover_ok && record.mixing_evidence && elapsed < Duration::from_secs(5),
        format!(
            "covers = {cover:?}, mixing_evidence = {}, {}",
            record.mixing_evidence,
            secs(elapsed)
        ),
    )
}

fn periodic_density() -> Outcome {
    let dense = periodic_density_check(&tent(), 4, 8, DEFAULT_BREAKPOINT_CAP)
        .unwrap()
        .dense;
    let set = periodic_point_set(&tent(), 2, DEFAULT_BREAKPOINT_CAP).unwrap();
    let expected = IntervalUnion::points([int(0), rat(2, 5), rat(2, 3), rat(4, 5)]);
    outcome(
        dense && set == expected,
        format!(
            "density(tent, 4, 8) = {dense}, periodic_point_set(tent, 2) = {}",
            show(&set)
        ),
    )
}

fn show(set: &IntervalUnion) -> String {
    let parts: Vec<String> = set.parts().iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Periodic points of period at most `bound`, or `None` past the breakpoint cap.
fn periodic_points_up_to(map: &PwlMultimap, bound: usize) -> Option<IntervalUnion> {
    let mut all = IntervalUnion::empty();
    for m in 1..=bound {
        all = all.union(&periodic_point_set(map, m, DEFAULT_BREAKPOINT_CAP).ok()?);
    }
    Some(all)
}

/// A sampled return `y_n` to the interval, with the start `y` and step `n`.
struct Return {
    n: usize,
    up: bool,
}

/// Breakpoint cap for the period `m * n` search that explains a violation.
const EXPLAIN_CAP: usize = 20_000;
/// Violating intervals searched for a period `m * n` point; the search is slow.
const EXPLAIN_LIMIT: usize = 4;

/// Whether the interval holds a point of period `m * n`, for the earliest
/// upward return `m` and downward return `n`; `None` past the cap.
fn holds_mn_point(map: &PwlMultimap, gap: &RationalInterval, returns: &[Return]) -> Option<bool> {
    let m = returns.iter().filter(|r| r.up).map(|r| r.n).min()?;
    let n = returns.iter().filter(|r| !r.up).map(|r| r.n).min()?;
    let set = periodic_point_set(map, m * n, EXPLAIN_CAP).ok()?;
    Some(set.parts().iter().any(|part| part.meets_interior_of(gap)))
}

fn directional_returns() -> Outcome {
    const B: usize = 6;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let spec = RandomPwlSpec {
        max_pieces: 4,
        max_denominator: 16,
        singleton_probability: 0.5,
        max_thickness: Some(rat(1, 16)),
    };
    let (mut maps, mut skipped, mut intervals, mut exercised) = (0, 0, 0, 0);
    let (mut violations, mut fixed_returns, mut with_mn_point, mut undetermined) = (0, 0, 0, 0);
    while maps < 500 {
        let map = random_pwl(&mut rng, &spec);
        let Some(periodic) = periodic_points_up_to(&map, B) else {
            skipped += 1;
            continue;
        };
        maps += 1;
        let seed = rng.gen();
        for gap in periodic.gaps_within(map.domain()) {
            if gap.is_degenerate() {
                continue;
            }
            intervals += 1;
            let mut returns = Vec::new();
            for k in 1..=16 {
                let y = gap.lo() + gap.width() * rat(k, 17);
                for policy in [
                    OrbitPolicy::Lower,
                    OrbitPolicy::Upper,
                    OrbitPolicy::Midpoint,
                    OrbitPolicy::SeededRandom(seed),
                ] {
                    let orbit = sample_orbit(&map, &y, B, policy).unwrap();
                    for (n, yn) in orbit.iter().enumerate().skip(1) {
                        if gap.contains_interior(yn) {
                            // A return to y itself would make y periodic.
                            fixed_returns += usize::from(yn == &y);
                            returns.push(Return { n, up: yn > &y });
                        }
                    }
                }
            }
            exercised += usize::from(!returns.is_empty());
            if returns.iter().any(|r| r.up) && returns.iter().any(|r| !r.up) {
                violations += 1;
                if violations <= EXPLAIN_LIMIT {
                    match holds_mn_point(&map, &gap, &returns) {
                        Some(found) => with_mn_point += usize::from(found),
                        None => undetermined += 1,
                    }
                }
            }
        }
    }
    outcome(
        violations == 0 && fixed_returns == 0 && exercised > 0,
        format!(
            "{maps} maps ({skipped} skipped at the breakpoint cap), {intervals} intervals free of periods <= {B}, \
             {exercised} with returns, {violations} violations, {fixed_returns} returns onto the start; \
             of the first {} violating intervals, {with_mn_point} hold a point of period m*n \
             ({undetermined} past the breakpoint cap)",
            violations.min(EXPLAIN_LIMIT)
        ),
    )
}

fn determinism() -> Outcome {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let run = |args: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_setdyn")).args(args).output().unwrap();
        (out.status.success(), out.stdout)
    };
    let tent = data.join("tent.json");
    let lazy = data.join("lazy_loop.json");
    let cases: [Vec<&str>; 3] = [
        vec!["classify", tent.to_str().unwrap()],
        vec!["classify", lazy.to_str().unwrap()],
        vec!["validate", "--states", "4"],
    ];
    let mut stable = true;
    for args in &cases {
        let first = run(&[&["--workers", "1"][..], args].concat());
        let second = run(&[&["--workers", "1"][..], args].concat());
        let four = run(&[&["--workers", "4"][..], args].concat());
        stable &= first.0 && first == second && first == four;
    }
    outcome(
        stable,
        format!(
            "{} commands, two runs each plus 1 vs 4 workers, byte-identical: {stable}",
            cases.len()
        ),
    )
}

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() -> ExitCode {
    let systems = exhaustive();
    let criteria: [(&str, Check); 10] = [
        (
            "exhaustive oracle equivalence",
            Box::new(|| oracle_equivalence(&systems)),
        ),
        ("implication chain", Box::new(|| implication_chain(&systems))),
        ("strictness witnesses", Box::new(|| strictness(&systems))),
        ("transitive iff dense orbit", Box::new(|| dense_orbits(&systems))),
        ("example orbit (0,1,1,0,1,0)", Box::new(example_orbit)),
        ("interval image exactness", Box::new(image_exactness)),
        ("tent covering", Box::new(tent_covering)),
        ("periodic density", Box::new(periodic_density)),
        ("directional returns", Box::new(directional_returns)),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        failed += usize::from(!result.passed);
        let status = if result.passed { "PASS" } else { "FAIL" };
        println!(
            "{status} {:>2} {name}: {} [{}]",
            i + 1,
            result.detail,
            secs(start.elapsed())
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
