//! PDS-arrays over every small grid and the worked examples.

use std::collections::HashMap;

use griddom::codec::{classify_4cycles, direction_labels, reverse_array, to_pds_array, validate_pds_array, PdsArray};
use griddom::figures::{NARROW_EXAMPLE, WIDE_EXAMPLE};
use griddom::oracle::{oracle_enumerate, TopRow};
use griddom::VertexSet;

fn all_small_pdss() -> Vec<VertexSet> {
    let mut out = Vec::new();
    for m in 1..=5 {
        for n in 1..=5 {
            out.extend(oracle_enumerate(m, n, TopRow::Unconstrained).unwrap());
        }
    }
    out
}

#[test]
fn every_small_pds_is_classified_and_encoded_validly() {
    let sets = all_small_pdss();
    assert!(sets.len() > 300);
    for s in &sets {
        classify_4cycles(&direction_labels(s).unwrap()).unwrap();
        let arr = to_pds_array(s).unwrap();
        assert!(validate_pds_array(&arr, s.m(), s.n()).is_empty(), "{s:?}");
    }
}

#[test]
fn encoding_is_injective_on_small_grids() {
    let mut seen: HashMap<(usize, usize, PdsArray), VertexSet> = HashMap::new();
    for s in all_small_pdss() {
        let key = (s.m(), s.n(), to_pds_array(&s).unwrap());
        if let Some(prev) = seen.insert(key, s.clone()) {
            panic!("{prev:?} and {s:?} share an array");
        }
    }
}

#[test]
fn rooms_and_ladders_alternate() {
    for s in all_small_pdss() {
        let arr = to_pds_array(&s).unwrap();
        for y in 0..arr.s() {
            for x in 0..arr.r() {
                if x + 1 < arr.r() {
                    assert_ne!(arr.is_ladder(y, x), arr.is_ladder(y, x + 1));
                }
                if y + 1 < arr.s() {
                    assert_ne!(arr.is_ladder(y, x), arr.is_ladder(y + 1, x));
                }
            }
        }
    }
}

#[test]
fn worked_examples_reverse_to_the_mirrored_sets() {
    for ex in [WIDE_EXAMPLE, NARROW_EXAMPLE] {
        let sol = ex.run().unwrap().solution().unwrap().clone();
        let arr = to_pds_array(&sol.vertices).unwrap();
        let back = reverse_array(&arr);
        assert!(validate_pds_array(&back, sol.m(), sol.n()).is_empty());
        assert_eq!(back, to_pds_array(&sol.vertices.mirrored()).unwrap());
        assert_eq!(reverse_array(&back), arr);
    }
}

#[test]
fn widening_one_room_breaks_the_width_sum() {
    let sol = WIDE_EXAMPLE.run().unwrap().solution().unwrap().clone();
    let mut arr = to_pds_array(&sol.vertices).unwrap();
    arr.entries[0][1].0 += 1;
    assert!(validate_pds_array(&arr, 16, 11).iter().any(|v| v.axiom == 6));
}

#[test]
fn single_entry_array_reverses_to_itself() {
    let arr = PdsArray::parse("12").unwrap();
    assert_eq!(reverse_array(&arr), arr);
}
