//! Invariants over random top rows and strategies.

use std::collections::BTreeSet;

use griddom::codec::{to_pds_array, validate_pds_array, ArrayJson, PdsArray};
use griddom::initial::{classify_initial, initial_row, is_admissible};
use griddom::solution::SolutionJson;
use griddom::{components_are_rectangles, is_pds, run_theta, InitialClass, InitialCondition, PdsSolution, VertexSet};
use proptest::prelude::*;

fn columns_of(m: usize, mask: u32) -> Vec<usize> {
    (0..m).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Every non-member has exactly one neighbour in the set, counted directly.
fn perfect_by_count(s: &VertexSet) -> bool {
    let (m, n) = (s.m() as isize, s.n() as isize);
    (0..n).all(|j| {
        (0..m).all(|i| {
            s.contains(i, j)
                || [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)].iter().filter(|&&(a, b)| s.contains(a, b)).count()
                    == 1
        })
    })
}

/// Flood fill each component and compare its size with its bounding box area.
fn rectangles_by_flood(s: &VertexSet) -> bool {
    let mut seen = BTreeSet::new();
    for v in s.iter() {
        let start = (v.i as isize, v.j as isize);
        if !seen.insert(start) {
            continue;
        }
        let mut stack = vec![start];
        let mut cells = vec![];
        while let Some((a, b)) = stack.pop() {
            cells.push((a, b));
            for p in [(a - 1, b), (a + 1, b), (a, b - 1), (a, b + 1)] {
                if s.contains(p.0, p.1) && seen.insert(p) {
                    stack.push(p);
                }
            }
        }
        let w = cells.iter().map(|c| c.0).max().unwrap() - cells.iter().map(|c| c.0).min().unwrap() + 1;
        let h = cells.iter().map(|c| c.1).max().unwrap() - cells.iter().map(|c| c.1).min().unwrap() + 1;
        if (w * h) as usize != cells.len() {
            return false;
        }
    }
    true
}

/// Runs of a column set, then the gap test: two runs closer than three apart
/// are at distance two or less.
fn admissible_by_gaps(cols: &[usize]) -> bool {
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for &c in cols {
        match runs.last_mut() {
            Some(r) if r.1 + 1 == c => r.1 = c,
            _ => runs.push((c, c)),
        }
    }
    runs.windows(2).all(|w| w[1].0 - w[0].1 > 2)
}

fn undominated_in_top_row(m: usize, cols: &[usize]) -> bool {
    let set: BTreeSet<usize> = cols.iter().copied().collect();
    (0..m).any(|i| !set.contains(&i) && !(i > 0 && set.contains(&(i - 1))) && !set.contains(&(i + 1)))
}

fn strategy_word() -> impl proptest::strategy::Strategy<Value = String> {
    proptest::collection::vec(prop_oneof![Just('a'), Just('b')], 0..16).prop_map(|v| v.into_iter().collect())
}

fn run_word(init: &InitialCondition, word: &str) -> griddom::ThetaOutcome {
    // Pad with α so that every run is answered.
    let full: String = word.chars().chain(std::iter::repeat_n('a', 256)).collect();
    run_theta(init, &griddom::theta::Strategy::parse(&full).unwrap(), 4 * init.m() + 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn produced_sets_are_perfect_with_rectangular_components(m in 3usize..=12, mask in 1u32..4096, word in strategy_word()) {
        let cols = columns_of(m, mask & ((1 << m) - 1));
        if let Ok(init) = InitialCondition::new(m, &cols) {
            if let Some(sol) = run_word(&init, &word).solution() {
                prop_assert!(perfect_by_count(&sol.vertices));
                prop_assert!(is_pds(&sol.vertices));
                prop_assert!(rectangles_by_flood(&sol.vertices));
                prop_assert!(components_are_rectangles(&sol.vertices));
                prop_assert_eq!(sol.vertices.row_mask(0), init.mask());
            }
        }
    }

    #[test]
    fn runs_are_deterministic(m in 3usize..=10, mask in 1u32..1024, word in strategy_word()) {
        let cols = columns_of(m, mask & ((1 << m) - 1));
        if let Ok(init) = InitialCondition::new(m, &cols) {
            let a = run_word(&init, &word);
            let b = run_word(&init, &word);
            prop_assert_eq!(a.rows(), b.rows());
            prop_assert_eq!(a.solution(), b.solution());
        }
    }

    #[test]
    fn solutions_and_arrays_round_trip_through_json(m in 3usize..=10, mask in 1u32..1024, word in strategy_word()) {
        let cols = columns_of(m, mask & ((1 << m) - 1));
        if let Ok(init) = InitialCondition::new(m, &cols) {
            if let Some(sol) = run_word(&init, &word).solution() {
                let text = serde_json::to_string(&sol.to_json()).unwrap();
                let back: SolutionJson = serde_json::from_str(&text).unwrap();
                prop_assert_eq!(&PdsSolution::from_json(&back).unwrap(), sol);

                let arr = to_pds_array(&sol.vertices).unwrap();
                prop_assert!(validate_pds_array(&arr, sol.m(), sol.n()).is_empty());
                let text = serde_json::to_string(&arr.to_json(sol.m(), sol.n())).unwrap();
                let back: ArrayJson = serde_json::from_str(&text).unwrap();
                prop_assert_eq!(PdsArray::from_json(&back).unwrap(), arr);
            }
        }
    }

    #[test]
    fn admissibility_matches_gap_rule(m in 1usize..=14, mask in 0u32..16384) {
        let cols = columns_of(m, mask & ((1 << m) - 1));
        prop_assert_eq!(is_admissible(m, &cols).unwrap(), admissible_by_gaps(&cols));
    }

    #[test]
    fn iavs_exactly_when_the_initial_row_has_a_zero(m in 1usize..=14, mask in 0u32..16384) {
        let cols = columns_of(m, mask & ((1 << m) - 1));
        let class = classify_initial(m, &cols).unwrap();
        let nontrivial = !cols.is_empty() && cols.len() < m;
        let expected_iavs = admissible_by_gaps(&cols) && nontrivial && undominated_in_top_row(m, &cols);
        prop_assert_eq!(class == InitialClass::Iavs, expected_iavs);
        if admissible_by_gaps(&cols) && nontrivial {
            prop_assert_eq!(initial_row(m, &cols).unwrap().count(0) > 0, expected_iavs);
        }
    }
}
