//! Solve a hand-built instance and print the optimal component sequence.

use tgx::{solve_oracle, Edge, Instance, TemporalGraph};

fn main() {
    // A path that opens forward in time plus a stale branch: 0-1 and 2-3
    // exist at time 1, 1-2 at time 2. Vertex 3 is only reachable by being
    // at 2 or 3 during the first snapshot, which the source is not.
    let graph = TemporalGraph::new(
        4,
        vec![vec![Edge::new(0, 1), Edge::new(2, 3)], vec![Edge::new(1, 2)]],
    )
    .unwrap();
    let inst = Instance::new(graph, Some(vec![1, 2, 4, 8]), 0, None).unwrap();

    let opt = solve_oracle(&inst).unwrap();
    println!("max collectable weight: {}", opt.max_weight);
    println!("threshold {} -> {}", inst.k, if opt.max_weight >= inst.k { "yes" } else { "no" });
    for (i, step) in opt.certificate.0.iter().enumerate() {
        println!("snapshot {}: walk inside {:?}", i + 1, step);
    }
    let visited = opt.certificate.visited();
    println!("visited {} of {} vertices", visited.len(), inst.n());
}
