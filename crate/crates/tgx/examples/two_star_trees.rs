//! Hardness lives in the timeline, not the graph: exploration stays hard
//! on the simplest trees when formulas are written into the snapshots.

use tgx::solvers::solve_full_exploration;
use tgx::{gen_two_stars, CnfFormula};

fn main() {
    // Monotone 3-SAT: every clause all-positive or all-negative.
    let f = CnfFormula::new(
        3,
        vec![vec![1, 2], vec![-1, -3], vec![2, 3], vec![-2]],
    )
    .unwrap();
    let inst = gen_two_stars(&f).unwrap();

    let under = inst.graph.underlying();
    let hub_degrees: Vec<usize> =
        (f.clauses.len()..f.clauses.len() + 2).map(|v| under.adjacency()[v].len()).collect();
    println!(
        "underlying graph: {} vertices, two hubs of degree {:?}, lifetime {}",
        inst.n(),
        hub_degrees,
        inst.graph.lifetime()
    );
    let (explorable, _) = solve_full_exploration(&inst).unwrap();
    println!("fully explorable: {explorable}");
}
