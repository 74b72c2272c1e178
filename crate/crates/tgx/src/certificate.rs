use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Instance, TimeStep, VertexId};

/// Certificate for an exploration value: entry `i` is a connected component
/// of snapshot `i + 1`, the first entry contains the source, and consecutive
/// entries share a vertex. The walk it certifies visits the union of all
/// entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSequence(pub Vec<Vec<VertexId>>);

impl ComponentSequence {
    /// Vertices covered by the sequence, sorted.
    pub fn visited(&self) -> Vec<VertexId> {
        let set: BTreeSet<VertexId> = self.0.iter().flatten().copied().collect();
        set.into_iter().collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks the certificate against the instance and returns the weight of
    /// the visited set.
    pub fn validate(&self, inst: &Instance) -> Result<u64> {
        if self.0.is_empty() {
            return Err(Error::EmptyCertificate);
        }
        let l = inst.graph.lifetime();
        if self.0.len() > l {
            return Err(Error::TimeStepOutOfRange { t: self.0.len(), l });
        }
        for (i, entry) in self.0.iter().enumerate() {
            let t = i + 1;
            let comps = inst.graph.connected_components(t);
            let mut sorted = entry.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != entry.len() || !comps.iter().any(|c| *c == sorted) {
                return Err(Error::NotAComponent { index: i, t });
            }
        }
        if !self.0[0].contains(&inst.source) {
            return Err(Error::SourceNotCovered);
        }
        for i in 1..self.0.len() {
            let prev: BTreeSet<_> = self.0[i - 1].iter().collect();
            if !self.0[i].iter().any(|v| prev.contains(v)) {
                return Err(Error::NonIntersectingConsecutive { first: i - 1, second: i });
            }
        }
        inst.weight_of(self.visited().into_iter())
    }

    /// Expands the certificate into an explicit walk visiting every covered
    /// vertex. Within each snapshot the walk traverses a spanning tree of the
    /// entry's component and then moves to a hand-off vertex shared with the
    /// next entry.
    pub fn to_walk(&self, inst: &Instance) -> Result<MonotoneWalk> {
        self.validate(inst)?;
        let mut vertices = vec![inst.source];
        let mut times = Vec::new();
        for (i, entry) in self.0.iter().enumerate() {
            let t = i + 1;
            let here = *vertices.last().unwrap();
            let handoff = match self.0.get(i + 1) {
                Some(next) => {
                    let set: BTreeSet<_> = entry.iter().collect();
                    *next
                        .iter()
                        .find(|v| set.contains(v))
                        .expect("validated: consecutive entries intersect")
                }
                None => here,
            };
            let tour = tree_tour(inst, entry, t, here, handoff);
            for v in tour {
                vertices.push(v);
                times.push(t);
            }
        }
        let walk = MonotoneWalk { vertices, times };
        walk.validate(inst)?;
        Ok(walk)
    }
}

/// Walks a spanning tree of `entry` (a component of snapshot `t`) starting at
/// `from`: a depth-first closed tour followed by the tree path to `to`.
/// Returns the vertex sequence after `from`.
fn tree_tour(
    inst: &Instance,
    entry: &[VertexId],
    t: TimeStep,
    from: VertexId,
    to: VertexId,
) -> Vec<VertexId> {
    let in_entry: BTreeSet<VertexId> = entry.iter().copied().collect();
    let mut adj: std::collections::BTreeMap<VertexId, Vec<VertexId>> =
        entry.iter().map(|&v| (v, Vec::new())).collect();
    for e in inst.graph.snapshot(t) {
        if in_entry.contains(&e.u) && in_entry.contains(&e.v) {
            adj.get_mut(&e.u).unwrap().push(e.v);
            adj.get_mut(&e.v).unwrap().push(e.u);
        }
    }
    // Parent pointers of a DFS tree rooted at `from`.
    let mut parent: std::collections::BTreeMap<VertexId, VertexId> = Default::default();
    let mut order = Vec::new();
    let mut stack = vec![from];
    let mut seen: BTreeSet<VertexId> = [from].into();
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in &adj[&v] {
            if seen.insert(w) {
                parent.insert(w, v);
                stack.push(w);
            }
        }
    }
    debug_assert_eq!(order.len(), entry.len());
    let mut children: std::collections::BTreeMap<VertexId, Vec<VertexId>> = Default::default();
    for (&c, &p) in &parent {
        children.entry(p).or_default().push(c);
    }
    // Closed Euler tour of the DFS tree.
    let mut tour = Vec::new();
    fn euler(
        v: VertexId,
        children: &std::collections::BTreeMap<VertexId, Vec<VertexId>>,
        tour: &mut Vec<VertexId>,
    ) {
        for &c in children.get(&v).map(|v| v.as_slice()).unwrap_or(&[]) {
            tour.push(c);
            euler(c, children, tour);
            tour.push(v);
        }
    }
    euler(from, &children, &mut tour);
    // Tree path from `from` up from `to`, reversed.
    let mut path = Vec::new();
    let mut cur = to;
    while cur != from {
        path.push(cur);
        cur = parent[&cur];
    }
    path.reverse();
    tour.extend(path);
    tour
}

/// An explicit walk: `times[i]` is the snapshot in which the step from
/// `vertices[i]` to `vertices[i + 1]` is taken. Times are non-decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneWalk {
    pub vertices: Vec<VertexId>,
    pub times: Vec<TimeStep>,
}

impl MonotoneWalk {
    pub fn visited(&self) -> Vec<VertexId> {
        let set: BTreeSet<VertexId> = self.vertices.iter().copied().collect();
        set.into_iter().collect()
    }

    /// Checks the walk against the instance and returns the weight of the
    /// visited set.
    pub fn validate(&self, inst: &Instance) -> Result<u64> {
        if self.vertices.is_empty() {
            return Err(Error::EmptyCertificate);
        }
        if self.vertices[0] != inst.source {
            return Err(Error::SourceNotCovered);
        }
        if self.times.len() + 1 != self.vertices.len() {
            return Err(Error::NonMonotoneTimes { index: self.times.len() });
        }
        let l = inst.graph.lifetime();
        for (i, &t) in self.times.iter().enumerate() {
            if t < 1 || t > l {
                return Err(Error::TimeStepOutOfRange { t, l });
            }
            if i > 0 && t < self.times[i - 1] {
                return Err(Error::NonMonotoneTimes { index: i });
            }
            let (u, v) = (self.vertices[i], self.vertices[i + 1]);
            if u == v || !inst.graph.has_edge(t, Edge::new(u, v)) {
                return Err(Error::EdgeAbsentAtTime { u, v, t });
            }
        }
        inst.weight_of(self.visited().into_iter())
    }
}

/// Orders candidate certificates: fewer entries first, then entry-wise
/// lexicographic (entries themselves sorted ascending). Solvers use this to
/// pick a canonical optimum.
pub fn shorter_then_lex(a: &ComponentSequence, b: &ComponentSequence) -> Ordering {
    a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::TemporalGraph;

    fn path3() -> Instance {
        let g = TemporalGraph::new(
            3,
            vec![vec![Edge::new(0, 1)], vec![Edge::new(1, 2)]],
        )
        .unwrap();
        Instance::new(g, None, 0, None).unwrap()
    }

    #[test]
    fn accepts_full_exploration_of_path() {
        let inst = path3();
        let seq = ComponentSequence(vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(seq.validate(&inst).unwrap(), 3);
        assert_eq!(seq.visited(), vec![0, 1, 2]);
    }

    #[test]
    fn rejects_partial_component() {
        let inst = path3();
        let seq = ComponentSequence(vec![vec![0]]);
        assert_eq!(
            seq.validate(&inst).unwrap_err(),
            Error::NotAComponent { index: 0, t: 1 }
        );
    }

    #[test]
    fn rejects_disjoint_consecutive_entries() {
        let g = TemporalGraph::new(
            4,
            vec![vec![Edge::new(0, 1)], vec![Edge::new(2, 3)]],
        )
        .unwrap();
        let inst = Instance::new(g, None, 0, None).unwrap();
        let seq = ComponentSequence(vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(
            seq.validate(&inst).unwrap_err(),
            Error::NonIntersectingConsecutive { first: 0, second: 1 }
        );
    }

    #[test]
    fn rejects_missing_source() {
        let inst = path3();
        let seq = ComponentSequence(vec![vec![2]]);
        assert_eq!(seq.validate(&inst).unwrap_err(), Error::SourceNotCovered);
    }

    #[test]
    fn walk_expansion_visits_union() {
        let inst = path3();
        let seq = ComponentSequence(vec![vec![0, 1], vec![1, 2]]);
        let walk = seq.to_walk(&inst).unwrap();
        assert_eq!(walk.visited(), vec![0, 1, 2]);
        assert_eq!(walk.validate(&inst).unwrap(), 3);
    }

    #[test]
    fn walk_expansion_covers_stars() {
        // Star at time 1, then hand off to a far vertex at time 2.
        let g = TemporalGraph::new(
            5,
            vec![
                vec![Edge::new(0, 1), Edge::new(0, 2), Edge::new(0, 3)],
                vec![Edge::new(3, 4)],
            ],
        )
        .unwrap();
        let inst = Instance::new(g, None, 0, None).unwrap();
        let seq = ComponentSequence(vec![vec![0, 1, 2, 3], vec![3, 4]]);
        let walk = seq.to_walk(&inst).unwrap();
        assert_eq!(walk.visited(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn rejects_time_travel_walk() {
        let inst = path3();
        // 1 -> 0 needs time >= 2 but edge {0,1} only exists at time 1.
        let walk = MonotoneWalk { vertices: vec![0, 1, 0, 1], times: vec![1, 2, 2] };
        assert_eq!(
            walk.validate(&inst).unwrap_err(),
            Error::EdgeAbsentAtTime { u: 1, v: 0, t: 2 }
        );
        let g = TemporalGraph::new(
            3,
            vec![vec![Edge::new(0, 1)], vec![Edge::new(0, 1), Edge::new(1, 2)]],
        )
        .unwrap();
        let inst = Instance::new(g, None, 0, None).unwrap();
        let walk = MonotoneWalk { vertices: vec![0, 1, 2], times: vec![2, 1] };
        assert_eq!(
            walk.validate(&inst).unwrap_err(),
            Error::NonMonotoneTimes { index: 1 }
        );
    }

    #[test]
    fn ordering_prefers_shorter() {
        let a = ComponentSequence(vec![vec![0, 1]]);
        let b = ComponentSequence(vec![vec![0], vec![0, 1]]);
        assert_eq!(shorter_then_lex(&a, &b), Ordering::Less);
    }
}
