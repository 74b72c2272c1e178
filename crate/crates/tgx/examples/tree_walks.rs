//! Walk values on a temporal tree: every target in one rooted pass.

use tgx::solvers::{best_tree_walk_from, solve_tree, tree_walk_values, TemporalTree};
use tgx::{Edge, TemporalGraph};

fn main() {
    // A star with arms appearing at different times; each edge exactly once.
    let graph = TemporalGraph::new(
        5,
        vec![
            vec![Edge::new(0, 1)],
            vec![Edge::new(0, 2), Edge::new(2, 3)],
            vec![Edge::new(0, 4)],
        ],
    )
    .unwrap();
    let weights = vec![1, 5, 1, 7, 2];
    let tree = TemporalTree::new(graph).unwrap();

    let values = tree_walk_values(&tree, &weights, 0).unwrap();
    for (y, v) in values.iter().enumerate() {
        match v {
            Some(w) => println!("best walk 0 -> {y}: weight {w}"),
            None => println!("best walk 0 -> {y}: impossible"),
        }
    }
    let (w, y) = best_tree_walk_from(&tree, &weights, 0).unwrap();
    println!("overall best ends at {y} with weight {w}");

    // The single-pair variant agrees with the batched one.
    assert_eq!(solve_tree(&tree, &weights, 0, y).unwrap(), Some(w));
}
