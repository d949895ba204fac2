//! Total perfect codes: existence, constructions, the quarter-turn map and the lattice window.

use griddom::codec::{to_pds_array, validate_pds_array};
use griddom::grid::{components, is_total_perfect_code};
use griddom::oracle::{oracle_tpcs, tpc_exists};
use griddom::tpc::*;
use griddom::{components_are_rectangles, is_pds};

#[test]
fn existence_rule_matches_both_searches() {
    for m in 2..=6 {
        for n in 2..=10 {
            let rule = kg_has_tpc(m, n).unwrap();
            assert_eq!(rule, tpc_exists(m, n).unwrap(), "transfer search {m}x{n}");
            assert_eq!(rule, tpc_exists_by_search(m, n).unwrap(), "tree search {m}x{n}");
            if m * n <= 30 {
                assert_eq!(rule, !oracle_tpcs(m, n).unwrap().is_empty(), "brute force {m}x{n}");
            }
        }
    }
}

#[test]
fn every_construction_is_a_code_with_valid_array() {
    for m in (2..=12).step_by(2) {
        for shape in TpcShape::ALL {
            let Ok(sol) = build_tpc(m, shape) else { continue };
            assert!(is_pds(&sol.vertices) && is_total_perfect_code(&sol.vertices), "{shape:?} m={m}");
            assert!(components(&sol.vertices).iter().all(|c| c.len() == 2));
            assert!(components_are_rectangles(&sol.vertices));
            let arr = to_pds_array(&sol.vertices).unwrap();
            assert!(validate_pds_array(&arr, sol.m(), sol.n()).is_empty(), "{shape:?} m={m}");
        }
    }
}

#[test]
fn gamma_rule_answers() {
    use griddom::theta::{gamma_choice, Choice, DecisionContext, DecisionKind};
    let ctx = |run, prev| DecisionContext {
        level: 3,
        step: 4,
        kind: DecisionKind::Bid,
        i: Some(0),
        k: 2,
        run,
        prev_label: prev,
    };
    assert_eq!(gamma_choice(&ctx(1, Some(0))), Choice::Alpha);
    assert_eq!(gamma_choice(&ctx(1, None)), Choice::Alpha);
    assert_eq!(gamma_choice(&ctx(1, Some(2))), Choice::Beta);
    assert_eq!(gamma_choice(&ctx(2, Some(0))), Choice::Beta);
}

#[test]
fn gamma_run_repeats_its_seed() {
    for m in [2, 4, 6, 8, 10, 12] {
        let table = gamma_table(m, m + 2).unwrap();
        assert_eq!(table[m + 1].labels(), table[0].labels(), "m={m}");
        assert_eq!(tau_prime(&table[m + 1], &table[0]), m);
    }
}

#[test]
fn phi_image_is_the_central_box() {
    for m in [2, 4, 6, 8, 10] {
        let image = phi_transform(&tpc_table(m, TpcShape::TallPlus2).unwrap());
        let outer = tpc_table(m + 2, TpcShape::TallPlus2).unwrap();
        assert_eq!(subtable_positions(&outer, &image), vec![(2, 0)], "m={m}");
    }
}

#[test]
fn lattice_window_is_a_code_without_short_periods() {
    let w = build_s1(12).unwrap();
    assert!(w.interior_defects().is_empty());
    for t in 1..=6 {
        assert!(!w.preserved_by_translation(t, 0));
        assert!(!w.preserved_by_translation(0, t));
    }
}

#[test]
fn lattice_window_contains_each_tall_code() {
    let w = build_s1(12).unwrap();
    for m in (2..=22).step_by(2) {
        let code = centred_code(m).unwrap();
        for (x, y) in w.points() {
            if centred_box_contains(m, x, y) {
                assert_eq!(w.contains(x, y), code.contains(&(x, y)), "m={m} ({x},{y})");
            }
        }
    }
}
