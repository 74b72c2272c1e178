//! Formula in, instance out: satisfiable iff fully explorable, with at
//! most five components in any snapshot.

use tgx::solvers::solve_full_exploration;
use tgx::{gen_from_sat, CnfFormula, ComponentShape};

fn show(name: &str, f: &CnfFormula) {
    let inst = gen_from_sat(f, ComponentShape::Clique).unwrap();
    let gamma = inst.stats().gamma;
    let (explorable, _) = solve_full_exploration(&inst).unwrap();
    println!(
        "{name}: {} vertices, lifetime {}, gamma {gamma} -> {}",
        inst.n(),
        inst.graph.lifetime(),
        if explorable { "explorable (satisfiable)" } else { "not explorable (unsatisfiable)" }
    );
}

fn main() {
    let sat = CnfFormula::new(2, vec![vec![1, 2], vec![-1, 2]]).unwrap();
    show("(x1 v x2)(~x1 v x2)", &sat);

    let unsat = CnfFormula::new(2, vec![vec![1], vec![-1], vec![2]]).unwrap();
    show("(x1)(~x1)(x2)", &unsat);

    // The star realization keeps the same per-snapshot components with
    // fewer edge appearances.
    let sparse = gen_from_sat(&sat, ComponentShape::Star).unwrap();
    let dense = gen_from_sat(&sat, ComponentShape::Clique).unwrap();
    println!(
        "appearances: star {} vs clique {}",
        sparse.graph.edge_appearances(),
        dense.graph.edge_appearances()
    );
}
