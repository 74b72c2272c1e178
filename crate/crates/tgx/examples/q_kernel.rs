//! The second parameter: instances with few missed appearances collapse to
//! at most q+1 vertices and q snapshots.

use tgx::{kernelize_q, solve_oracle, Edge, Instance, TemporalGraph};

fn main() {
    // A triangle present in every snapshot except one missing appearance:
    // q = |E| * L - appearances stays tiny no matter how long L gets.
    let triangle = vec![Edge::new(0, 1), Edge::new(0, 2), Edge::new(1, 2)];
    let mut snaps = vec![triangle.clone(); 8];
    snaps[3].retain(|e| *e != Edge::new(1, 2));
    let graph = TemporalGraph::new(3, snaps).unwrap();
    let inst = Instance::new(graph, Some(vec![2, 3, 4]), 0, Some(9)).unwrap();

    let before = inst.stats();
    let kernel = kernelize_q(&inst).unwrap();
    let after = kernel.stats();
    println!("q = {}", before.q);
    println!("lifetime {} -> {} (bound: q)", before.lifetime, after.lifetime);
    println!("vertices {} -> {} (bound: q + 1)", before.n, after.n);

    let a = solve_oracle(&inst).unwrap().max_weight >= inst.k;
    let b = solve_oracle(&kernel).unwrap().max_weight >= kernel.k;
    println!("answers agree: {}", a == b);
}
