//! Builds total perfect codes and compares the existence rule with an exhaustive search.

use griddom::codec::to_pds_array;
use griddom::oracle::tpc_exists;
use griddom::render::marks_text;
use griddom::tpc::{build_tpc, gamma_period, kg_has_tpc, phi_transform, tpc_table, TpcShape};

fn main() -> griddom::Result<()> {
    for shape in TpcShape::ALL {
        match build_tpc(6, shape) {
            Ok(sol) => print!("{shape:?} in {}\n{}", sol.dims(), marks_text(&sol.vertices)),
            Err(e) => println!("{shape:?}: {e}"),
        }
    }
    print!("width 4 array:\n{}", to_pds_array(&build_tpc(4, TpcShape::TallPlus2)?.vertices)?);
    println!("gamma period for m=8: {}", gamma_period(8, 64)?);
    for row in phi_transform(&tpc_table(2, TpcShape::TallPlus2)?) {
        println!("{}", row.word());
    }
    for (m, n) in [(4, 6), (4, 7), (6, 6), (6, 8)] {
        println!("({m},{n}): rule {}, search {}", kg_has_tpc(m, n)?, tpc_exists(m, n)?);
    }
    Ok(())
}
