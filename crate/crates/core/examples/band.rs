//! Greedy runs in the band graph and the transition graph of a small top row.

use griddom::band::{build_transition_graph, closed_walk, greedy_band, greedy_scan, BandOutcome};
use griddom::InitialCondition;

fn main() -> griddom::Result<()> {
    for m in [8, 15] {
        let scan = greedy_scan(m)?;
        println!("m={m}: {} finite, {} periodic", scan.finite, scan.periodic.len());
    }
    let init = InitialCondition::new(15, &greedy_scan(15)?.periodic[0])?;
    if let BandOutcome::Periodic(cert) = greedy_band(&init, usize::MAX)? {
        println!("{:?} repeats level {} after {} levels", init.columns(), cert.k, cert.period);
    }

    let g = build_transition_graph(&InitialCondition::new(4, &[1])?, 1 << 12);
    let walk = closed_walk(&g)?;
    println!("m=4: {} words, {} threads, walk of {} steps", g.nodes.len(), g.threads().count(), walk.steps.len());
    print!("{}", g.to_dot());
    Ok(())
}
