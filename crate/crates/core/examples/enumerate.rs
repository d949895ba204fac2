//! Enumerates every PDS below a 5-column top row and checks the result against brute force.

use griddom::oracle::{oracle_enumerate, TopRow};
use griddom::search::{count_by_n, enumerate_all};
use griddom::InitialCondition;

fn main() -> griddom::Result<()> {
    let init = InitialCondition::new(5, &[1])?;
    let report = enumerate_all(&init, 6);
    println!("{} solutions over {} tree nodes", report.solutions.len(), report.nodes_expanded);
    for (n, count) in count_by_n(&report) {
        let oracle = oracle_enumerate(5, n, TopRow::from(&init))?;
        println!("height {n}: {count} found, brute force finds {}", oracle.len());
    }
    Ok(())
}
