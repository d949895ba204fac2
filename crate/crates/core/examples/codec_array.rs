//! Encodes the 5-column example as a PDS-array, validates it and reads it backwards.

use griddom::codec::{decompose, reverse_array, to_pds_array, validate_pds_array};
use griddom::{run_theta, InitialCondition, Strategy};

fn main() -> griddom::Result<()> {
    let init = InitialCondition::new(5, &[1])?;
    let sol = run_theta(&init, &Strategy::parse("bb")?, 32).solution().expect("completes").clone();
    let dec = decompose(&sol.vertices)?;
    println!("{} rooms, {} ladders", dec.rooms.len(), dec.ladders.len());
    let arr = to_pds_array(&sol.vertices)?;
    print!("{arr}");
    println!("violations: {}", validate_pds_array(&arr, sol.m(), sol.n()).len());
    let back = reverse_array(&arr);
    print!("reversed:\n{back}");
    println!("{}", serde_json::to_string(&arr.to_json(sol.m(), sol.n())).expect("serializes"));
    Ok(())
}
