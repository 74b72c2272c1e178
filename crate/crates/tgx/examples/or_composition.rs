//! Gluing instances behind a selector tree: the composition is a
//! yes-instance exactly when some input is.

use tgx::{compose_or, solve_oracle, Edge, Instance, TemporalGraph};

fn single_edge(weight: u64, threshold: u64) -> Instance {
    let graph = TemporalGraph::new(2, vec![vec![Edge::new(0, 1)], Vec::new()]).unwrap();
    Instance::new(graph, Some(vec![weight, weight]), 0, Some(threshold)).unwrap()
}

fn main() {
    // A no-instance in a composition must miss its threshold by at least
    // three plus its source weight; this one misses by four.
    let yes = single_edge(3, 3);
    let no = single_edge(1, 6);

    for (name, pair) in [
        ("yes|yes", [&yes, &yes]),
        ("yes|no ", [&yes, &no]),
        ("no |no ", [&no, &no]),
    ] {
        let composed = compose_or(&[pair[0].clone(), pair[1].clone()]).unwrap();
        let opt = solve_oracle(&composed).unwrap();
        println!(
            "{name}: n={} lifetime={} threshold={} -> {}",
            composed.n(),
            composed.graph.lifetime(),
            composed.k,
            if opt.max_weight >= composed.k { "yes" } else { "no" }
        );
    }
}
