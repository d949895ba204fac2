//! Runs the labelling engine on the 16-column example and prints the labelled grid.

use griddom::render::labelled_text;
use griddom::{run_theta, InitialCondition, Strategy};

fn main() -> griddom::Result<()> {
    let init = InitialCondition::new(16, &[1, 2, 3, 9, 13, 14])?;
    let outcome = run_theta(&init, &Strategy::parse("babab")?, 64);
    let sol = outcome.solution().expect("the example completes");
    println!("PDS in {}", sol.dims());
    print!("{}", labelled_text(&sol.vertices, outcome.rows()));
    print!("{}", sol.trace_text());
    Ok(())
}
