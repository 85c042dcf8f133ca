use setdyn::finite::{
    classify, dense_orbit, hitting_set, is_mixing, is_transitive, wielandt_bound, FiniteRelationSystem,
};
use setdyn::oracle::{enumerate_systems, oracle_classify, oracle_path_lengths, EnumerationSpec};

fn all_systems() -> impl Iterator<Item = FiniteRelationSystem> {
    (1..=4).flat_map(|n| enumerate_systems(EnumerationSpec::all(n)).unwrap())
}

#[test]
fn fast_classification_matches_oracle() {
    let mut count = 0;
    for sys in all_systems() {
        assert_eq!(classify(&sys), oracle_classify(&sys), "{sys:?}");
        count += 1;
    }
    assert_eq!(count, 1 + 9 + 343 + 50_625);
}

#[test]
fn chain_holds_and_collapses() {
    for sys in all_systems() {
        let c = classify(&sys);
        assert!(c.chain_holds(), "{sys:?}");
        assert_eq!(c.mixing, c.weakly_mixing, "{sys:?}");
        assert_eq!(c.mixing, c.totally_transitive, "{sys:?}");
    }
}

#[test]
fn converse_failures_exist() {
    let all: Vec<_> = all_systems().map(|s| classify(&s)).collect();
    assert!(all.iter().any(|c| c.transitive && !c.bitransitive));
    assert!(all.iter().any(|c| c.bitransitive && !c.totally_transitive));
}

#[test]
fn dense_orbit_exists_exactly_when_transitive() {
    for sys in all_systems() {
        match dense_orbit(&sys) {
            Some(orbit) => {
                assert!(is_transitive(&sys), "{sys:?}");
                orbit.validate(&sys).unwrap();
                assert!(orbit.visits_all(sys.state_count()));
            }
            None => assert!(!is_transitive(&sys), "{sys:?}"),
        }
    }
}

#[test]
fn hitting_sets_match_path_enumeration() {
    for sys in all_systems() {
        let n = sys.state_count();
        let t = wielandt_bound(n);
        let mut all_full = true;
        for u in 0..n {
            for v in 0..n {
                let h = hitting_set(&sys, u, v).unwrap();
                let lengths = oracle_path_lengths(&sys, u, v, 2 * t);
                let listed: Vec<usize> = (1..=2 * t).filter(|&k| h.contains(k)).collect();
                assert_eq!(listed, lengths, "{sys:?} {u}->{v}");
                all_full &= h.has_full_tail();
            }
        }
        assert_eq!(all_full, is_mixing(&sys), "{sys:?}");
    }
}
