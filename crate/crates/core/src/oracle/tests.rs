use super::*;
use crate::finite::{classify, is_mixing, is_transitive};
use crate::interval::{rat, PwlBoundary};

fn sys(succ: &[&[usize]]) -> FiniteRelationSystem {
    FiniteRelationSystem::new(succ.iter().map(|s| s.to_vec()).collect()).unwrap()
}

/// F(0) = {1}, F(1) = {0, 1}.
fn lazy_loop() -> FiniteRelationSystem {
    sys(&[&[1], &[0, 1]])
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

#[test]
fn transitive_examples() {
    assert_eq!(oracle_transitive(&lazy_loop(), 2), Ok(true));
    let fixed = FiniteRelationSystem::identity(2).unwrap();
    assert_eq!(oracle_transitive(&fixed, 10), Ok(false));
    let two = FiniteRelationSystem::cycle(2).unwrap();
    assert_eq!(oracle_transitive(&two, 2), Ok(true));
    let three = FiniteRelationSystem::cycle(3).unwrap();
    assert_eq!(
        oracle_transitive(&three, 4),
        Err(OracleError::InsufficientBound { bound: 4, required: 5 })
    );
}

#[test]
fn mixing_examples() {
    assert!(oracle_mixing(&lazy_loop()));
    assert!(!oracle_mixing(&FiniteRelationSystem::cycle(2).unwrap()));
    assert!(!oracle_mixing(&FiniteRelationSystem::cycle(3).unwrap()));
    assert!(oracle_mixing(&sys(&[&[0]])));
}

#[test]
fn enumeration_counts() {
    let counts: Vec<usize> = (1..=4)
        .map(|n| enumerate_systems(EnumerationSpec::all(n)).unwrap().count())
        .collect();
    assert_eq!(counts, vec![1, 9, 343, 50_625]);
    let only: Vec<_> = enumerate_systems(EnumerationSpec::all(1)).unwrap().collect();
    assert_eq!(only, vec![sys(&[&[0]])]);
    assert_eq!(
        enumerate_systems(EnumerationSpec::all(5)).err(),
        Some(OracleError::StateCountOutOfRange(5))
    );
    assert!(enumerate_systems(EnumerationSpec::all(0)).is_err());
}

#[test]
fn enumeration_is_distinct_and_splits_by_range() {
    let all: Vec<_> = enumerate_systems(EnumerationSpec::all(3)).unwrap().collect();
    let distinct: HashSet<_> = all.iter().map(|s| format!("{s:?}")).collect();
    assert_eq!(distinct.len(), all.len());
    let e = enumerate_systems(EnumerationSpec::all(3)).unwrap();
    let mut joined: Vec<_> = e.clone().range(0, 100).collect();
    joined.extend(e.clone().range(100, 343));
    assert_eq!(joined, all);
    assert_eq!(e.range(300, 1000).count(), 43);
}

#[test]
fn strongly_connected_filter() {
    let spec = EnumerationSpec {
        state_count: 2,
        filter: Some(SystemFilter::StronglyConnectedOnly),
    };
    let kept: Vec<_> = enumerate_systems(spec).unwrap().collect();
    // Both states must reach each other: 0 needs 1 and 1 needs 0.
    assert_eq!(kept.len(), 4);
    assert!(kept.iter().all(is_transitive));
}

#[test]
fn power_and_product_match_definitions() {
    assert_eq!(oracle_power(&lazy_loop(), 2), sys(&[&[0, 1], &[0, 1]]));
    let p = oracle_product(&FiniteRelationSystem::cycle(2).unwrap(), &lazy_loop());
    assert_eq!(p.state_count(), 4);
    // (0, 0) -> (1, 1); (1, 1) -> (0, 0), (0, 1).
    assert_eq!(p.successors(0), &[3]);
    assert_eq!(p.successors(3), &[0, 1]);
}

#[test]
fn path_lengths() {
    let two = FiniteRelationSystem::cycle(2).unwrap();
    assert_eq!(oracle_path_lengths(&two, 0, 1, 7), vec![1, 3, 5, 7]);
    assert_eq!(oracle_path_lengths(&lazy_loop(), 0, 0, 4), vec![2, 3, 4]);
}

#[test]
fn classification_agrees_on_three_states() {
    for s in enumerate_systems(EnumerationSpec::all(3)).unwrap() {
        assert_eq!(oracle_classify(&s), classify(&s), "{s:?}");
        assert_eq!(oracle_mixing(&s), is_mixing(&s));
    }
}

#[test]
fn grid_image_examples() {
    assert_eq!(grid_image_oracle(&tent(), &iv((0, 1), (1, 2)), 4), Ok(unit()));
    assert_eq!(
        grid_image_oracle(&tent(), &iv((2, 5), (3, 5)), 10),
        Ok(iv((4, 5), (1, 1)))
    );
    let id = PwlMultimap::identity(unit());
    for den in [1, 3, 7] {
        assert_eq!(grid_image_oracle(&id, &iv((1, 4), (3, 4)), den), Ok(iv((1, 4), (3, 4))));
    }
    assert!(grid_image_oracle(&tent(), &iv((1, 2), (3, 2)), 4).is_err());
    assert!(grid_image_oracle(&tent(), &unit(), 0).is_err());
}
