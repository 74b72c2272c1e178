//! Shrink an instance and show every rule application on the way down.

use tgx::{kernelize, Edge, Instance, TemporalGraph};

fn main() {
    // A long backbone with increasing times plus a pendant tree: both the
    // backbone contraction and the pendant-tree rule get to fire.
    let mut snaps: Vec<Vec<Edge>> = (0..9).map(|t| vec![Edge::new(t, t + 1)]).collect();
    snaps[2].push(Edge::new(2, 10));
    snaps[2].push(Edge::new(10, 11));
    snaps[2].push(Edge::new(10, 12));
    let graph = TemporalGraph::new(13, snaps).unwrap();
    let inst = Instance::new(graph, None, 0, None).unwrap();

    let before = inst.stats();
    let (kernel, trace) = kernelize(&inst).unwrap();
    let after = kernel.stats();

    println!("before: n={} appearances={} p={}", before.n, before.edge_appearances, before.p);
    for app in &trace.applications {
        println!(
            "  {} at {} ({} -> {} vertices, p {} -> {})",
            app.rule, app.locus, app.before.n, app.after.n, app.before.p, app.after.p
        );
    }
    println!("after:  n={} appearances={} p={}", after.n, after.edge_appearances, after.p);
    println!("trace as JSON lines:\n{}", trace.to_json_lines().unwrap());
}
