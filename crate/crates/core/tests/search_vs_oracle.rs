//! The decision-tree search against brute-force enumeration.

use griddom::oracle::{naive_enumerate, oracle_enumerate, TopRow};
use griddom::search::{enumerate_all, enumerate_from_row, SearchOptions};
use griddom::{components_are_rectangles, InitialCondition};

#[test]
fn search_finds_exactly_the_brute_force_sets_for_small_widths() {
    for m in 3..=5 {
        for init in InitialCondition::all(m) {
            let report = enumerate_all(&init, 6);
            let mut expected = Vec::new();
            for n in 2..=6 {
                expected.extend(oracle_enumerate(m, n, TopRow::from(&init)).unwrap());
            }
            expected.sort();
            assert_eq!(report.vertex_sets(), expected, "m={m} top={:?}", init.columns());
        }
    }
}

#[test]
fn halting_at_completion_loses_taller_solutions() {
    let init = InitialCondition::new(4, &[1]).unwrap();
    let full = enumerate_all(&init, 6);
    let halted =
        enumerate_from_row(init.row(), &SearchOptions { continue_past_completion: false, ..SearchOptions::new(6) });
    assert!(halted.solutions.len() < full.solutions.len());
    assert!(halted.vertex_sets().iter().all(|s| full.vertex_sets().contains(s)));
}

#[test]
fn two_oracles_agree_with_a_fixed_top_row() {
    for (m, n) in [(3, 4), (4, 4), (4, 5), (5, 4)] {
        let all = naive_enumerate(m, n).unwrap();
        for init in InitialCondition::all(m) {
            let filtered: Vec<_> = all.iter().filter(|s| s.row_mask(0) == init.mask()).cloned().collect();
            assert_eq!(oracle_enumerate(m, n, TopRow::from(&init)).unwrap(), filtered);
        }
    }
}

#[test]
fn every_search_result_has_rectangular_components() {
    for m in 3..=7 {
        for init in InitialCondition::all(m) {
            let report = enumerate_all(&init, 8);
            assert!(report.solutions.iter().all(|s| components_are_rectangles(&s.vertices)));
        }
    }
}

#[test]
fn node_count_stays_within_the_binary_tree_bound() {
    for init in InitialCondition::all(6) {
        let report = enumerate_all(&init, 8);
        assert!(report.nodes_expanded <= (1usize << (report.max_depth + 1)), "{:?}", init.columns());
    }
}
