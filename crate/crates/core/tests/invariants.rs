//! Exhaustive structural invariants on desk-scale boxes: strong
//! convergence of the usual game, the one-violation-per-move law, oracle
//! sanity on Dynkin boxes, and persistence of winning.

use cutoffgame_core::classify::{Classifier, Tag};
use cutoffgame_core::game::{fire, legal_moves, usual_game_terminates, Configuration, Termination};
use cutoffgame_core::graph::{build_family, CoxeterGraph, Family};
use cutoffgame_core::oracle::{explore, Budgets, OracleTag};
use cutoffgame_core::rat::NEG_ONE;
use cutoffgame_core::roots::{delta_root, dominates_simple, positive_roots};
use num::{Signed, Zero};
use std::collections::HashMap;

fn integer_box(n: usize, low: i64, high: i64) -> Vec<Configuration> {
    let mut out = Vec::new();
    let mut amps = vec![low; n];
    'outer: loop {
        out.push(Configuration::from_ints(&amps));
        for k in 0..n {
            if amps[k] < high {
                amps[k] += 1;
                continue 'outer;
            }
            amps[k] = low;
        }
        break;
    }
    out
}

/// Every maximal play order of the usual game ends at the same
/// configuration in the same number of moves. Checked over all distinct
/// reachable states, which covers all play orders.
fn converged_end(
    graph: &CoxeterGraph,
    v: &Configuration,
    memo: &mut HashMap<Configuration, (Configuration, u64)>,
) -> (Configuration, u64) {
    if let Some(hit) = memo.get(v) {
        return hit.clone();
    }
    let moves = legal_moves(graph, v, false);
    let result = if moves.is_empty() {
        (v.clone(), 0)
    } else {
        let mut agreed: Option<(Configuration, u64)> = None;
        for i in moves {
            let child = fire(graph, v, i).unwrap();
            let (end, m) = converged_end(graph, &child, memo);
            let candidate = (end, m + 1);
            match &agreed {
                None => agreed = Some(candidate),
                Some(seen) => assert_eq!(*seen, candidate, "divergent play from {v}"),
            }
        }
        agreed.unwrap()
    };
    memo.insert(v.clone(), result.clone());
    result
}

#[test]
fn strong_convergence_exhaustive_on_a2_a3() {
    for family in [Family::A(2), Family::A(3)] {
        let g = build_family(family).unwrap();
        let mut memo = HashMap::new();
        for v in integer_box(g.n_vertices(), -2, 2) {
            let (end, moves) = converged_end(&g, &v, &mut memo);
            assert!(end.is_dominant());
            match usual_game_terminates(&g, &v, 64) {
                Termination::Terminates { moves: Some(m) } => {
                    assert_eq!(m, moves, "{family}: move count from the violated-root set")
                }
                other => panic!("{family}: expected termination, got {other:?}"),
            }
        }
    }
}

#[test]
fn each_move_removes_exactly_one_violated_root() {
    for family in [Family::A(3), Family::D(4)] {
        let g = build_family(family).unwrap();
        let rs = positive_roots(&g, 64);
        let count =
            |v: &Configuration| rs.roots().iter().filter(|r| r.dot(v).is_negative()).count();
        for v in integer_box(g.n_vertices(), -2, 2) {
            for i in legal_moves(&g, &v, false) {
                let next = fire(&g, &v, i).unwrap();
                assert_eq!(count(&v), count(&next) + 1, "{family} {v} fire {i}");
            }
        }
    }
}

#[test]
fn oracle_never_mixed_or_exhausted_on_dynkin_boxes() {
    for family in [Family::A(2), Family::A(3)] {
        let g = build_family(family).unwrap();
        for v in integer_box(g.n_vertices(), -2, 2) {
            let e = explore(&g, &v, Budgets::default());
            assert!(!e.outcome.exhausted, "{family} {v}");
            assert_ne!(e.verdict.tag, OracleTag::Mixed, "{family} {v}");
            assert_ne!(e.verdict.tag, OracleTag::Looping, "{family} {v}");
        }
    }
}

#[test]
fn winning_persists_under_any_move() {
    for family in [Family::A(2), Family::A(3), Family::ATilde(2)] {
        let g = build_family(family).unwrap();
        for v in integer_box(g.n_vertices(), -2, 2) {
            let e = explore(&g, &v, Budgets::default());
            if e.verdict.tag != OracleTag::Winning {
                continue;
            }
            for i in legal_moves(&g, &v, true) {
                let next = fire(&g, &v, i).unwrap();
                let e2 = explore(&g, &next, Budgets::default());
                assert_eq!(e2.verdict.tag, OracleTag::Winning, "{family} {v} fire {i}");
            }
        }
    }
}

#[test]
fn dominates_simple_is_total_under_odd_symmetry() {
    for family in [Family::A(3), Family::D(4), Family::ATilde(2)] {
        let g = build_family(family).unwrap();
        assert!(g.odd_symmetry());
        let rs = positive_roots(&g, 12);
        for (r, _) in rs.iter() {
            assert!(
                dominates_simple(&g, r).unwrap().is_some(),
                "{family}: no simple root below {r}"
            );
        }
    }
}

#[test]
fn finite_test_set_agrees_with_deep_enumeration_scan() {
    let g = build_family(Family::ATilde(2)).unwrap();
    let c = Classifier::new(&g);
    let rs = positive_roots(&g, 64);
    let delta = delta_root(&g).unwrap();
    for v in integer_box(3, -2, 2) {
        let expected = if v.is_zero() {
            Tag::Winning
        } else {
            let holds = rs.roots().iter().all(|r| r.dot(&v) >= *NEG_ONE);
            let dv = delta.dot(&v);
            if !holds || dv.is_negative() {
                Tag::Losing
            } else if dv.is_zero() {
                Tag::Looping
            } else {
                Tag::Winning
            }
        };
        assert_eq!(c.classify_extended(&v).unwrap().tag, expected, "{v}");
    }
}

#[test]
fn a3_all_minus_one_regression() {
    let g = build_family(Family::A(3)).unwrap();
    let c = Classifier::new(&g);
    let v = Configuration::from_ints(&[-1, -1, -1]);
    assert_eq!(
        cutoffgame_core::oracle::min_moves_to_forbidden(&g, &v, Budgets::default()),
        Some(1)
    );
    assert_eq!(
        c.min_moves_formula(&v).unwrap(),
        cutoffgame_core::classify::MinMoves::Reachable(1)
    );
}

#[test]
fn d4_catalog_regression() {
    let g = build_family(Family::D(4)).unwrap();
    let c = Classifier::new(&g);
    let catalog = c.minimal_losing_catalog(-1, 1).unwrap();
    assert_eq!(
        catalog,
        vec![
            Configuration::from_ints(&[-1, -1, -1, 1]),
            Configuration::from_ints(&[0, 0, 0, -1]),
        ]
    );
    assert_eq!(catalog, c.closed_form_catalog(-1, 1).unwrap());
}
