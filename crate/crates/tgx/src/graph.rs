use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
/// Time steps are 1-based: a graph with lifetime `L` has snapshots `1..=L`.
pub type TimeStep = usize;

/// Undirected edge, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    /// Normalizes the endpoint order; `a == b` is rejected by the graph
    /// constructors, not here.
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

/// A sequence of snapshot edge sets over a fixed vertex set `0..n`.
///
/// Snapshots are kept as sorted, duplicate-free edge lists; everything derived
/// (appearance lists, the underlying graph) is computed on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalGraph {
    n: usize,
    snapshots: Vec<Vec<Edge>>,
}

impl TemporalGraph {
    pub fn new(n: usize, snapshots: Vec<Vec<Edge>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyVertexSet);
        }
        let mut cleaned = Vec::with_capacity(snapshots.len());
        for (idx, snap) in snapshots.into_iter().enumerate() {
            let t = idx + 1;
            let mut edges = snap;
            for e in &edges {
                if e.u >= n || e.v >= n {
                    let vertex = if e.u >= n { e.u } else { e.v };
                    return Err(Error::OutOfRangeVertex { vertex, n });
                }
                if e.u == e.v {
                    return Err(Error::SelfLoop { vertex: e.u, t });
                }
            }
            edges.sort();
            if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdgeInSnapshot { u: w[0].u, v: w[0].v, t });
            }
            cleaned.push(edges);
        }
        if cleaned.is_empty() {
            // A graph always has at least one (possibly empty) snapshot.
            cleaned.push(Vec::new());
        }
        Ok(TemporalGraph { n, snapshots: cleaned })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lifetime(&self) -> TimeStep {
        self.snapshots.len()
    }

    /// Edge list of snapshot `t` (1-based).
    pub fn snapshot(&self, t: TimeStep) -> &[Edge] {
        &self.snapshots[t - 1]
    }

    pub fn snapshots(&self) -> &[Vec<Edge>] {
        &self.snapshots
    }

    pub fn has_edge(&self, t: TimeStep, e: Edge) -> bool {
        self.snapshots[t - 1].binary_search(&e).is_ok()
    }

    /// Total number of edge appearances, summed over snapshots.
    pub fn edge_appearances(&self) -> u64 {
        self.snapshots.iter().map(|s| s.len() as u64).sum()
    }

    pub fn underlying(&self) -> UnderlyingGraph {
        let mut appearances: BTreeMap<Edge, Vec<TimeStep>> = BTreeMap::new();
        for (idx, snap) in self.snapshots.iter().enumerate() {
            for &e in snap {
                appearances.entry(e).or_default().push(idx + 1);
            }
        }
        let edges = appearances.keys().copied().collect();
        UnderlyingGraph { n: self.n, edges, appearances }
    }

    /// Connected components of snapshot `t`, ordered by smallest member,
    /// members sorted. Isolated vertices form singleton components.
    pub fn connected_components(&self, t: TimeStep) -> Vec<Vec<VertexId>> {
        components_of(self.n, self.snapshot(t).iter().copied())
    }
}

/// Partitions `0..n` into connected components of the given edge set.
pub(crate) fn components_of(n: usize, edges: impl Iterator<Item = Edge>) -> Vec<Vec<VertexId>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in edges {
        let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
        if a != b {
            // Union by smaller root keeps representatives at component minima.
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent[hi] = lo;
        }
    }
    let mut groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    groups.into_values().collect()
}

/// The union of all snapshots, with per-edge appearance times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnderlyingGraph {
    n: usize,
    edges: Vec<Edge>,
    appearances: BTreeMap<Edge, Vec<TimeStep>>,
}

impl UnderlyingGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn appearances(&self, e: Edge) -> &[TimeStep] {
        self.appearances.get(&e).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Number of snapshots the edge appears in; 0 for non-edges.
    pub fn multiplicity(&self, e: Edge) -> usize {
        self.appearances(e).len()
    }

    pub fn adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        adj
    }

    pub fn components(&self) -> Vec<Vec<VertexId>> {
        components_of(self.n, self.edges.iter().copied())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }
}

/// Summary quantities of an instance. `p` counts edge appearances beyond a
/// spanning tree (`appearances - n + 1`); `q` counts missed appearances
/// (`|E| * lifetime - appearances`); `gamma` is the largest per-snapshot
/// component count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub n: usize,
    pub lifetime: TimeStep,
    pub edge_appearances: u64,
    pub underlying_edges: usize,
    pub p: i64,
    pub q: u64,
    pub gamma: usize,
}

/// A weighted exploration instance: temporal graph, positive vertex weights,
/// start vertex, and the weight threshold `k` that a walk should reach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: TemporalGraph,
    pub weights: Vec<u64>,
    pub source: VertexId,
    pub k: u64,
}

impl Instance {
    /// `weights = None` means unit weights; `k = None` means the sum of all
    /// weights (i.e. full exploration).
    pub fn new(
        graph: TemporalGraph,
        weights: Option<Vec<u64>>,
        source: VertexId,
        k: Option<u64>,
    ) -> Result<Self> {
        let n = graph.n();
        if source >= n {
            return Err(Error::OutOfRangeVertex { vertex: source, n });
        }
        let weights = weights.unwrap_or_else(|| vec![1; n]);
        if weights.len() != n {
            return Err(Error::WeightCountMismatch { got: weights.len(), n });
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(Error::NonPositiveWeight { vertex: i });
        }
        let total = sum_checked(weights.iter().copied())?;
        let k = k.unwrap_or(total);
        Ok(Instance { graph, weights, source, k })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn weight_of(&self, vertices: impl Iterator<Item = VertexId>) -> Result<u64> {
        sum_checked(vertices.map(|v| self.weights[v]))
    }

    pub fn total_weight(&self) -> u64 {
        // Positivity and the constructor's checked sum make this safe.
        self.weights.iter().sum()
    }

    pub fn stats(&self) -> Stats {
        let under = self.graph.underlying();
        let n = self.n();
        let l = self.graph.lifetime();
        let m = self.graph.edge_appearances();
        let e = under.edges().len();
        let gamma = (1..=l)
            .map(|t| self.graph.connected_components(t).len())
            .max()
            .unwrap_or(0);
        Stats {
            n,
            lifetime: l,
            edge_appearances: m,
            underlying_edges: e,
            p: m as i64 - n as i64 + 1,
            q: (e as u64) * (l as u64) - m,
            gamma,
        }
    }

    /// Induced sub-instance on `keep` (sorted, deduplicated internally).
    /// Vertex ids are compacted in order; the source must be kept.
    pub fn induced(&self, keep: &[VertexId]) -> Result<(Instance, Vec<VertexId>)> {
        let mut keep: Vec<VertexId> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&v| v >= self.n()) {
            return Err(Error::OutOfRangeVertex { vertex: bad, n: self.n() });
        }
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        if new_id[self.source] == usize::MAX {
            return Err(Error::SourceNotCovered);
        }
        let snapshots = self
            .graph
            .snapshots()
            .iter()
            .map(|snap| {
                snap.iter()
                    .filter(|e| new_id[e.u] != usize::MAX && new_id[e.v] != usize::MAX)
                    .map(|e| Edge::new(new_id[e.u], new_id[e.v]))
                    .collect()
            })
            .collect();
        let graph = TemporalGraph::new(keep.len(), snapshots)?;
        let weights = keep.iter().map(|&v| self.weights[v]).collect();
        let inst = Instance::new(graph, Some(weights), new_id[self.source], Some(self.k))?;
        Ok((inst, keep))
    }
}

pub(crate) fn sum_checked(values: impl Iterator<Item = u64>) -> Result<u64> {
    let mut acc: u64 = 0;
    for v in values {
        acc = acc.checked_add(v).ok_or(Error::ArithmeticOverflow)?;
    }
    Ok(acc)
}

/// Result of restricting an instance to the source's underlying component.
#[derive(Debug, Clone)]
pub struct SourceRestriction {
    pub instance: Instance,
    /// `old_ids[new] = old`; the map is strictly increasing.
    pub old_ids: Vec<VertexId>,
}

/// Drops every vertex outside the underlying connected component of the
/// source. Unreachable vertices cannot contribute to any walk, so the answer
/// for any threshold is preserved.
pub fn restrict_to_source_component(instance: &Instance) -> SourceRestriction {
    let comps = instance.graph.underlying().components();
    let comp = comps
        .into_iter()
        .find(|c| c.binary_search(&instance.source).is_ok())
        .expect("source is always in some component");
    let (restricted, old_ids) = instance
        .induced(&comp)
        .expect("source component induces a valid instance");
    SourceRestriction { instance: restricted, old_ids }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_instance() -> Instance {
        // 0-1 at time 1, 1-2 at time 2.
        let g = TemporalGraph::new(
            3,
            vec![vec![Edge::new(0, 1)], vec![Edge::new(1, 2)]],
        )
        .unwrap();
        Instance::new(g, None, 0, None).unwrap()
    }

    #[test]
    fn stats_of_temporal_path() {
        let s = path_instance().stats();
        assert_eq!(s.n, 3);
        assert_eq!(s.lifetime, 2);
        assert_eq!(s.edge_appearances, 2);
        assert_eq!(s.underlying_edges, 2);
        assert_eq!(s.p, 0);
        assert_eq!(s.q, 2);
        assert_eq!(s.gamma, 2);
    }

    #[test]
    fn stats_of_triangle_one_edge_per_snapshot() {
        let g = TemporalGraph::new(
            3,
            vec![
                vec![Edge::new(0, 1)],
                vec![Edge::new(1, 2)],
                vec![Edge::new(0, 2)],
            ],
        )
        .unwrap();
        let s = Instance::new(g, None, 0, None).unwrap().stats();
        assert_eq!(s.edge_appearances, 3);
        assert_eq!(s.p, 1);
        assert_eq!(s.q, 6);
    }

    #[test]
    fn components_are_sorted_and_cover() {
        let inst = path_instance();
        assert_eq!(inst.graph.connected_components(1), vec![vec![0, 1], vec![2]]);
        assert_eq!(inst.graph.connected_components(2), vec![vec![0], vec![1, 2]]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            TemporalGraph::new(2, vec![vec![Edge::new(1, 1)]]).unwrap_err(),
            Error::SelfLoop { vertex: 1, t: 1 }
        );
        assert_eq!(
            TemporalGraph::new(2, vec![vec![Edge::new(0, 2)]]).unwrap_err(),
            Error::OutOfRangeVertex { vertex: 2, n: 2 }
        );
        assert_eq!(
            TemporalGraph::new(2, vec![vec![Edge::new(0, 1), Edge::new(1, 0)]]).unwrap_err(),
            Error::DuplicateEdgeInSnapshot { u: 0, v: 1, t: 1 }
        );
    }

    #[test]
    fn rejects_zero_weight() {
        let g = TemporalGraph::new(2, vec![vec![Edge::new(0, 1)]]).unwrap();
        assert_eq!(
            Instance::new(g, Some(vec![1, 0]), 0, None).unwrap_err(),
            Error::NonPositiveWeight { vertex: 1 }
        );
    }

    #[test]
    fn default_k_is_total_weight() {
        let g = TemporalGraph::new(2, vec![vec![Edge::new(0, 1)]]).unwrap();
        let inst = Instance::new(g, Some(vec![2, 3]), 0, None).unwrap();
        assert_eq!(inst.k, 5);
    }

    #[test]
    fn restriction_keeps_source_side() {
        // Two components: {0,1} and {2,3}; source 3.
        let g = TemporalGraph::new(
            4,
            vec![vec![Edge::new(0, 1)], vec![Edge::new(2, 3)]],
        )
        .unwrap();
        let inst = Instance::new(g, Some(vec![1, 2, 3, 4]), 3, Some(5)).unwrap();
        let r = restrict_to_source_component(&inst);
        assert_eq!(r.old_ids, vec![2, 3]);
        assert_eq!(r.instance.n(), 2);
        assert_eq!(r.instance.source, 1);
        assert_eq!(r.instance.weights, vec![3, 4]);
        assert_eq!(r.instance.k, 5);
        assert_eq!(r.instance.graph.snapshot(2), &[Edge::new(0, 1)]);
    }

    #[test]
    fn underlying_multiplicities() {
        let e = Edge::new(0, 1);
        let g = TemporalGraph::new(2, vec![vec![e], vec![e], vec![]]).unwrap();
        let u = g.underlying();
        assert_eq!(u.appearances(e), &[1, 2]);
        assert_eq!(u.multiplicity(e), 2);
        assert_eq!(g.edge_appearances(), 2);
    }
}
