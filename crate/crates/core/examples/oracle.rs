//! Brute-force enumeration of perfect dominating sets and total perfect codes.

use griddom::oracle::{naive_enumerate, oracle_enumerate, oracle_tpcs, TopRow};
use griddom::render::marks_text;

fn main() -> griddom::Result<()> {
    let all = oracle_enumerate(4, 4, TopRow::Unconstrained)?;
    println!("Γ(4,4) has {} PDSs; the flat scan agrees: {}", all.len(), naive_enumerate(4, 4)? == all);
    let codes = oracle_tpcs(4, 6)?;
    println!("Γ(4,6) has {} total perfect codes", codes.len());
    if let Some(first) = codes.first() {
        print!("{}", marks_text(first));
    }
    match oracle_enumerate(6, 6, TopRow::Unconstrained) {
        Ok(v) => println!("Γ(6,6): {} PDSs", v.len()),
        Err(e) => println!("{e}"),
    }
    Ok(())
}
