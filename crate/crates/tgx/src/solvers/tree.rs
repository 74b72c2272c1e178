//! Walks in temporal trees (every edge present in exactly one snapshot).
//!
//! With unique edge times, walking down an edge commits to walking back up
//! at the same time — so everything a walk collects off its (x,y)-path comes
//! from one-time excursions. [`solve_tree`] evaluates one (x,y) pair
//! directly from that case analysis; [`best_tree_walk_from`] scans all
//! targets in one rooted pass:
//!
//! For a child edge z→c entered at time τ, the excursion from z through c
//! collects the maximal subtree under c whose edges all carry the time τ.
//! Summing those values per vertex and time (and prefix-summing over sorted
//! child times) lets the downward scan extend a path by one edge in
//! O(log deg) while accounting for every excursion the extension window
//! [entry time, exit time] admits.

use crate::error::{Error, Result};
use crate::graph::{sum_checked, Edge, TemporalGraph, TimeStep, VertexId};

/// A temporal graph whose underlying graph is a tree and every edge appears
/// in exactly one snapshot.
#[derive(Debug, Clone)]
pub struct TemporalTree {
    graph: TemporalGraph,
    /// adj[v] = (neighbor, edge time), sorted by neighbor.
    adj: Vec<Vec<(VertexId, TimeStep)>>,
}

impl TemporalTree {
    pub fn new(graph: TemporalGraph) -> Result<Self> {
        let under = graph.underlying();
        if under.edges().iter().any(|&e| under.multiplicity(e) != 1) {
            return Err(Error::MultipleAppearances);
        }
        if under.edges().len() + 1 != graph.n() || !under.is_connected() {
            return Err(Error::NotATree);
        }
        let mut adj = vec![Vec::new(); graph.n()];
        for &e in under.edges() {
            let t = under.appearances(e)[0];
            adj[e.u].push((e.v, t));
            adj[e.v].push((e.u, t));
        }
        Ok(TemporalTree { graph, adj })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &TemporalGraph {
        &self.graph
    }

    pub fn lifetime(&self) -> TimeStep {
        self.graph.lifetime()
    }

    /// The unique appearance time of a tree edge.
    pub fn time(&self, e: Edge) -> Option<TimeStep> {
        self.adj[e.u].iter().find(|&&(v, _)| v == e.v).map(|&(_, t)| t)
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v >= self.n() {
            return Err(Error::VertexNotInTree { vertex: v });
        }
        Ok(())
    }

    /// Tree path from x to y as (vertices, edge times).
    fn path(&self, x: VertexId, y: VertexId) -> (Vec<VertexId>, Vec<TimeStep>) {
        let mut parent: Vec<Option<(VertexId, TimeStep)>> = vec![None; self.n()];
        let mut stack = vec![x];
        let mut seen = vec![false; self.n()];
        seen[x] = true;
        while let Some(v) = stack.pop() {
            if v == y {
                break;
            }
            for &(u, t) in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some((v, t));
                    stack.push(u);
                }
            }
        }
        let mut vertices = vec![y];
        let mut times = Vec::new();
        let mut cur = y;
        while let Some((p, t)) = parent[cur] {
            vertices.push(p);
            times.push(t);
            cur = p;
        }
        vertices.reverse();
        times.reverse();
        (vertices, times)
    }

    /// Distinct edge times, ascending.
    fn edge_times(&self) -> Vec<TimeStep> {
        let mut ts: Vec<TimeStep> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(v, nb)| nb.iter().filter(move |&&(u, _)| v < u).map(|&(_, t)| t))
            .collect();
        ts.sort_unstable();
        ts.dedup();
        ts
    }

    /// Adds to `covered` the component of `anchor` in the forest of edges
    /// whose time is exactly `t`. Traversal is gated by `stamp` (one value
    /// per time), not by `covered`: a component may run through vertices
    /// covered at other times.
    fn cover_mono_component(
        &self,
        anchor: VertexId,
        t: TimeStep,
        covered: &mut [bool],
        stamp: &mut [TimeStep],
    ) {
        let mut stack = vec![anchor];
        stamp[anchor] = t;
        covered[anchor] = true;
        while let Some(v) = stack.pop() {
            for &(u, tu) in &self.adj[v] {
                if tu == t && stamp[u] != t {
                    stamp[u] = t;
                    covered[u] = true;
                    stack.push(u);
                }
            }
        }
    }
}

/// Maximum weight of a monotone (x,y)-walk, or `None` when no such walk
/// exists. Direct evaluation of the exchange argument: a maximum walk visits
/// the (x,y)-path plus, per time step, one component of the equal-time
/// forest anchored on the path.
pub fn solve_tree(
    tree: &TemporalTree,
    weights: &[u64],
    x: VertexId,
    y: VertexId,
) -> Result<Option<u64>> {
    tree.check_vertex(x)?;
    tree.check_vertex(y)?;
    check_weights(tree, weights)?;

    let n = tree.n();
    let mut covered = vec![false; n];
    let mut stamp = vec![0; n];

    if x == y {
        covered[x] = true;
        for t in tree.edge_times() {
            tree.cover_mono_component(x, t, &mut covered, &mut stamp);
        }
    } else {
        let (path, times) = tree.path(x, y);
        if times.windows(2).any(|w| w[0] > w[1]) {
            return Ok(None);
        }
        for &v in &path {
            covered[v] = true;
        }
        let r = times.len();
        for t in tree.edge_times() {
            // Anchor of the component collectable at time t: the latest path
            // vertex reached by edges of time ≤ t.
            let anchor = if t < times[0] {
                path[0]
            } else if t > times[r - 1] {
                path[r]
            } else {
                // Largest i with times[i-1] <= t (1-based path position).
                let i = times.partition_point(|&ti| ti <= t);
                path[i]
            };
            tree.cover_mono_component(anchor, t, &mut covered, &mut stamp);
        }
    }
    let total = covered
        .iter()
        .enumerate()
        .filter(|(_, &c)| c)
        .map(|(v, _)| weights[v])
        .sum();
    Ok(Some(total))
}

/// Maximum over y of [`solve_tree`], with ties broken by least y. One rooted
/// pass instead of n path evaluations.
pub fn best_tree_walk_from(
    tree: &TemporalTree,
    weights: &[u64],
    x: VertexId,
) -> Result<(u64, VertexId)> {
    let values = tree_walk_values(tree, weights, x)?;
    let (mut best_w, mut best_y) = (0, x);
    for (y, v) in values.iter().enumerate() {
        if let Some(w) = v {
            if *w > best_w {
                best_w = *w;
                best_y = y;
            }
        }
    }
    Ok((best_w, best_y))
}

/// Per-target maxima: `values[y]` = maximum weight of a monotone (x,y)-walk,
/// `None` when the (x,y)-path times decrease somewhere.
pub fn tree_walk_values(
    tree: &TemporalTree,
    weights: &[u64],
    x: VertexId,
) -> Result<Vec<Option<u64>>> {
    tree.check_vertex(x)?;
    check_weights(tree, weights)?;
    let n = tree.n();
    let l = tree.lifetime();

    // Root at x; children sorted by edge time for windowed prefix sums.
    let mut parent_time = vec![0; n];
    let mut children: Vec<Vec<(TimeStep, VertexId)>> = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut stack = vec![x];
    while let Some(v) = stack.pop() {
        order.push(v);
        for &(u, t) in &tree.adj[v] {
            if !seen[u] {
                seen[u] = true;
                parent_time[u] = t;
                children[v].push((t, u));
                stack.push(u);
            }
        }
    }
    for ch in &mut children {
        ch.sort_unstable();
    }

    // excursion[c] = weight collected by entering c from its parent at the
    // parent edge's time and returning: c itself plus every descendant
    // reachable through edges of that same time.
    let mut excursion = vec![0u64; n];
    for &v in order.iter().rev() {
        if v == x {
            continue;
        }
        let t = parent_time[v];
        let mut acc = weights[v];
        let lo = children[v].partition_point(|&(ct, _)| ct < t);
        let hi = children[v].partition_point(|&(ct, _)| ct <= t);
        for &(_, c) in &children[v][lo..hi] {
            acc += excursion[c];
        }
        excursion[v] = acc;
    }

    // prefix[v][i] = sum of excursion over the first i children of v.
    let prefix: Vec<Vec<u64>> = children
        .iter()
        .map(|ch| {
            let mut p = Vec::with_capacity(ch.len() + 1);
            p.push(0);
            for &(_, c) in ch {
                p.push(p.last().unwrap() + excursion[c]);
            }
            p
        })
        .collect();
    let window_sum = |v: VertexId, a: TimeStep, b: TimeStep| -> u64 {
        let lo = children[v].partition_point(|&(ct, _)| ct < a);
        let hi = children[v].partition_point(|&(ct, _)| ct <= b);
        prefix[v][hi] - prefix[v][lo]
    };

    // Downward scan: descending x → … → v arrived at time t_in, `acc` holds
    // the value of all proper ancestors with their windows closed off.
    let mut values: Vec<Option<u64>> = vec![None; n];
    let mut scan = vec![(x, 0usize, 0u64)];
    while let Some((v, t_in, acc)) = scan.pop() {
        values[v] = Some(acc + weights[v] + window_sum(v, t_in, l));
        for &(t, c) in &children[v] {
            if t >= t_in {
                let closed = acc + weights[v] + window_sum(v, t_in, t) - excursion[c];
                scan.push((c, t, closed));
            }
        }
    }
    Ok(values)
}

fn check_weights(tree: &TemporalTree, weights: &[u64]) -> Result<()> {
    if weights.len() != tree.n() {
        return Err(Error::WeightCountMismatch { got: weights.len(), n: tree.n() });
    }
    sum_checked(weights.iter().copied()).map(|_| ())
}
