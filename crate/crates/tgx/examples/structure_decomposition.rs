//! The structural objects behind the reduction rules: red/blue edges, a
//! feedback edge set, the core wiring, and important separations.

use tgx::decomposition::{decompose, important_separations};
use tgx::{Edge, Instance, TemporalGraph};

fn main() {
    // A cycle with a pendant path: one edge beyond a spanning tree (p = 1).
    let graph = TemporalGraph::new(
        6,
        vec![
            vec![Edge::new(0, 1), Edge::new(3, 4)],
            vec![Edge::new(1, 2), Edge::new(4, 5)],
            vec![Edge::new(0, 2), Edge::new(0, 3)],
        ],
    )
    .unwrap();
    let inst = Instance::new(graph, None, 0, None).unwrap();
    println!("p = {}", inst.stats().p);

    let d = decompose(&inst).unwrap();
    println!("red edges (repeated appearances): {:?}", d.red);
    println!("feedback edge set: {:?}", d.fes);
    println!("core vertices: {:?}", d.core);
    for pendant in &d.pendants {
        println!("pendant {:?} hanging at {:?}", pendant.vertices, pendant.attachments);
    }
    for sep in important_separations(&inst).unwrap() {
        println!("separation at {} with windows {:?}", sep.cut_vertex, sep.windows);
    }
}
