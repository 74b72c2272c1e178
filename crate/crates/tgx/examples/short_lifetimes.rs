//! Hitting sets decide explorability even when every snapshot has at most
//! six components — the price is a lifetime linear in budget * universe.

use tgx::solvers::solve_full_exploration;
use tgx::{gen_from_hitting_set, ComponentShape, HittingSetInput};

fn run(h: &HittingSetInput) {
    let inst = gen_from_hitting_set(h, ComponentShape::Clique).unwrap();
    let (explorable, _) = solve_full_exploration(&inst).unwrap();
    println!(
        "universe {}, {} sets, budget {} -> lifetime {}, gamma {}, {}",
        h.universe,
        h.sets.len(),
        h.budget,
        inst.graph.lifetime(),
        inst.stats().gamma,
        if explorable { "hit" } else { "no hitting set" }
    );
}

fn main() {
    // {0,1} and {2} are hit by {0, 2} but by no single element.
    let sets = vec![vec![0, 1], vec![2]];
    run(&HittingSetInput::new(3, sets.clone(), 2).unwrap());
    run(&HittingSetInput::new(3, sets, 1).unwrap());
}
