//! A weight threshold instead of full exploration: multicolored
//! independent sets force disjoint subdivision neighborhoods.

use tgx::{gen_from_mis, solve_oracle, ComponentShape, PartiteGraph};

fn run(name: &str, g: &PartiteGraph) {
    let inst = gen_from_mis(g, ComponentShape::Clique).unwrap();
    let opt = solve_oracle(&inst).unwrap();
    println!(
        "{name}: {} vertices after subdivision, lifetime {}, threshold {} -> {} (got {})",
        inst.n(),
        inst.graph.lifetime(),
        inst.k,
        if opt.max_weight >= inst.k { "yes" } else { "no" },
        opt.max_weight
    );
}

fn main() {
    // Two parts joined by a perfect matching: pick any non-matched pair.
    let matching = PartiteGraph::new(vec![2, 2], vec![(0, 2), (1, 3)], 1).unwrap();
    run("matching", &matching);

    // Complete bipartite on singletons: the only choice is an edge.
    let blocked = PartiteGraph::new(vec![1, 1], vec![(0, 1)], 1).unwrap();
    run("single edge", &blocked);
}
