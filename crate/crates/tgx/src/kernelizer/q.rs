//! Kernel for the non-appearance count `q = |E(G)| * L - appearances`.
//!
//! Two rewrites suffice: contract any edge present in every snapshot, and
//! collapse to a constant-size instance once some snapshot is connected.
//! Nontrivial outputs have at most `q + 1` vertices and at most `q`
//! snapshots, and `q` itself never grows.

use crate::error::{Error, Result};
use crate::graph::{Edge, Instance, TemporalGraph, VertexId};

/// Merges `e.v` into `e.u`: weights add, appearances of edges at `e.v` move
/// to `e.u` (parallel copies collapse), ids above `e.v` shift down by one.
fn contract(inst: &Instance, e: Edge) -> Result<Instance> {
    let n = inst.n();
    let remap = |x: VertexId| -> VertexId {
        if x == e.v {
            e.u
        } else if x > e.v {
            x - 1
        } else {
            x
        }
    };
    let snapshots: Vec<Vec<Edge>> = inst
        .graph
        .snapshots()
        .iter()
        .map(|snap| {
            let mut edges: Vec<Edge> = snap
                .iter()
                .filter(|&&f| f != e)
                .map(|f| Edge::new(remap(f.u), remap(f.v)))
                .collect();
            edges.sort();
            edges.dedup();
            edges
        })
        .collect();
    let mut weights: Vec<u64> = Vec::with_capacity(n - 1);
    for v in 0..n {
        if v == e.v {
            continue;
        }
        let w = if v == e.u {
            inst.weights[e.u]
                .checked_add(inst.weights[e.v])
                .ok_or(Error::ArithmeticOverflow)?
        } else {
            inst.weights[v]
        };
        weights.push(w);
    }
    let graph = TemporalGraph::new(n - 1, snapshots)?;
    Instance::new(graph, Some(weights), remap(inst.source), Some(inst.k))
}

/// Shrinks an instance with connected underlying graph to one whose size is
/// governed by the number of missed edge appearances.  The answer (best walk
/// weight reaching `k` or not) is preserved; a snapshot that connects all
/// vertices resolves it outright and yields a one-vertex instance with
/// `k = 1` (yes) or `k = 2` (no).
pub fn kernelize_q(inst: &Instance) -> Result<Instance> {
    if !inst.graph.underlying().is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let mut cur = inst.clone();
    loop {
        let l = cur.graph.lifetime();
        let under = cur.graph.underlying();
        match under.edges().iter().copied().find(|&e| under.multiplicity(e) == l) {
            Some(e) => cur = contract(&cur, e)?,
            None => break,
        }
    }
    // A connected snapshot lets a walk collect every vertex in one step.
    if (1..=cur.graph.lifetime()).any(|t| cur.graph.connected_components(t).len() == 1) {
        let yes = cur.total_weight() >= cur.k;
        let graph = TemporalGraph::new(1, vec![Vec::new()])?;
        return Instance::new(graph, Some(vec![1]), 0, Some(if yes { 1 } else { 2 }));
    }
    let s = cur.stats();
    if cur.n() as u64 > s.q + 1 || s.lifetime as u64 > s.q {
        return Err(Error::StructureViolation(format!(
            "missed-appearance bounds violated: n = {}, lifetime = {}, q = {}",
            cur.n(),
            s.lifetime,
            s.q
        )));
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::solve_oracle;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn inst(n: usize, snaps: Vec<Vec<(usize, usize)>>, weights: Vec<u64>, k: u64) -> Instance {
        let snapshots = snaps
            .into_iter()
            .map(|s| s.into_iter().map(|(a, b)| Edge::new(a, b)).collect())
            .collect();
        let graph = TemporalGraph::new(n, snapshots).unwrap();
        Instance::new(graph, Some(weights), 0, Some(k)).unwrap()
    }

    #[test]
    fn contraction_merges_weights_and_parallel_copies() {
        // 0-1 always present; 0-2 and 1-2 both live at time 1 and collapse
        // onto the merged vertex.
        let g = inst(
            3,
            vec![vec![(0, 1), (0, 2), (1, 2)], vec![(0, 1)]],
            vec![2, 3, 5],
            100,
        );
        let out = contract(&g, Edge::new(0, 1)).unwrap();
        assert_eq!(out.n(), 2);
        assert_eq!(out.weights, vec![5, 5]);
        assert_eq!(out.graph.snapshot(1), &[Edge::new(0, 1)]);
        assert!(out.graph.snapshot(2).is_empty());
        assert_eq!(out.source, 0);
        assert_eq!(out.k, 100);
    }

    #[test]
    fn contraction_remaps_a_high_source() {
        let g = {
            let snapshots = vec![vec![Edge::new(0, 1), Edge::new(1, 2)], vec![Edge::new(0, 1)]];
            let graph = TemporalGraph::new(3, snapshots).unwrap();
            Instance::new(graph, Some(vec![1, 1, 7]), 2, Some(9)).unwrap()
        };
        let out = contract(&g, Edge::new(0, 1)).unwrap();
        assert_eq!(out.source, 1);
        assert_eq!(out.weights, vec![2, 7]);
    }

    #[test]
    fn connected_snapshot_resolves_the_answer() {
        // Snapshot 1 is a spanning star, so the whole weight is reachable.
        let star = vec![(0, 1), (0, 2), (0, 3)];
        let yes = kernelize_q(&inst(4, vec![star.clone(), vec![(0, 1)]], vec![1, 1, 1, 1], 4)).unwrap();
        assert_eq!((yes.n(), yes.graph.lifetime(), yes.k), (1, 1, 2 - 1));
        assert_eq!(yes.weights, vec![1]);
        let no = kernelize_q(&inst(4, vec![star, vec![(0, 1)]], vec![1, 1, 1, 1], 5)).unwrap();
        assert_eq!(no.k, 2);
    }

    #[test]
    fn single_vertex_input_is_already_trivial() {
        let graph = TemporalGraph::new(1, vec![Vec::new(), Vec::new()]).unwrap();
        let g = Instance::new(graph, Some(vec![3]), 0, Some(3)).unwrap();
        let out = kernelize_q(&g).unwrap();
        assert_eq!(out.k, 1);
    }

    #[test]
    fn rejects_disconnected_input() {
        let graph = TemporalGraph::new(3, vec![vec![Edge::new(0, 1)]]).unwrap();
        let g = Instance::new(graph, None, 0, Some(1)).unwrap();
        assert!(matches!(kernelize_q(&g), Err(Error::DisconnectedGraph)));
    }

    #[test]
    fn random_instances_keep_their_answer_and_meet_the_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x71626e64);
        for round in 0..150 {
            let n = rng.gen_range(2..=8);
            let l = rng.gen_range(1..=4);
            let mut snaps: Vec<std::collections::BTreeSet<Edge>> = vec![Default::default(); l];
            for v in 1..n {
                let u = rng.gen_range(0..v);
                // Bias towards always-present edges so contraction fires.
                if rng.gen_bool(0.4) {
                    for snap in &mut snaps {
                        snap.insert(Edge::new(u, v));
                    }
                } else {
                    snaps[rng.gen_range(0..l)].insert(Edge::new(u, v));
                }
            }
            for _ in 0..rng.gen_range(0..=n) {
                let u = rng.gen_range(0..n);
                let v = rng.gen_range(0..n);
                if u != v {
                    snaps[rng.gen_range(0..l)].insert(Edge::new(u, v));
                }
            }
            let snapshots: Vec<Vec<Edge>> = snaps.into_iter().map(|s| s.into_iter().collect()).collect();
            let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=5)).collect();
            let graph = TemporalGraph::new(n, snapshots).unwrap();
            let mut g = Instance::new(graph, Some(weights), rng.gen_range(0..n), None).unwrap();
            let opt = solve_oracle(&g).unwrap().max_weight;
            g.k = if round % 2 == 0 { opt } else { opt + 1 };
            let expected = solve_oracle(&g).unwrap().max_weight >= g.k;
            let before = g.stats();
            let kern = kernelize_q(&g).unwrap();
            let got = solve_oracle(&kern).unwrap().max_weight >= kern.k;
            assert_eq!(got, expected, "answer flipped (round {round})");
            let after = kern.stats();
            assert!(after.q <= before.q, "q grew (round {round})");
            if kern.n() > 1 {
                assert!(kern.n() as u64 <= after.q + 1, "n bound (round {round})");
                assert!(after.lifetime as u64 <= after.q, "lifetime bound (round {round})");
            }
        }
    }
}
