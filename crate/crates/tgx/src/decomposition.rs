//! Structural decomposition of the underlying graph.
//!
//! With `p` = appearances − n + 1, a connected instance has a feedback edge
//! set S of at most p edges containing every red (multi-appearance) edge.
//! The core X — the source, the endpoints of S, and the branch vertices of
//! the pruned remainder — has at most max(4p, 1) vertices, and G − X falls
//! apart into pendant trees touching X in one or two vertices. Reduction
//! rules only ever rewrite such pendant trees; the rewrite sites are located
//! by [`important_separations`] (tree hanging off one cut vertex) and
//! [`important_edge_cuts`] (tree cut off by two blue edges).

use crate::error::{Error, Result};
use crate::graph::{components_of, Edge, Instance, TimeStep, UnderlyingGraph, VertexId};

/// How a pendant tree of G − X touches the core: one attachment vertex (A)
/// or two (B).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PendantKind {
    A,
    B,
}

/// A connected component of G − X together with its attachment vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pendant {
    pub vertices: Vec<VertexId>,
    pub kind: PendantKind,
    /// Core vertices with a neighbor in the component, sorted; one for kind
    /// A, two for kind B. No core vertex has two neighbors inside.
    pub attachments: Vec<VertexId>,
}

/// Red/blue split, feedback edge set, core, and typed pendants of one
/// instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub red: Vec<Edge>,
    pub blue: Vec<Edge>,
    pub fes: Vec<Edge>,
    pub core: Vec<VertexId>,
    pub pendants: Vec<Pendant>,
}

impl Decomposition {
    /// Number of pendants attached at two core vertices.
    pub fn q(&self) -> usize {
        self.pendants.iter().filter(|f| f.kind == PendantKind::B).count()
    }
}

/// An order-one separation: G[P] is an all-blue tree meeting the rest of the
/// graph only in the cut vertex, and P is inclusion-maximal for its cut
/// vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImportantSeparation {
    pub p_side: Vec<VertexId>,
    /// V ∖ P plus the cut vertex; holds the source and every red edge.
    pub q_side: Vec<VertexId>,
    pub cut_vertex: VertexId,
    /// Distinct appearance times of the cut vertex's edges into Q ∖ {x},
    /// sorted. Empty when the whole graph is the tree G[P].
    pub windows: Vec<TimeStep>,
}

/// An order-two cut: two blue edges with four distinct endpoints whose
/// removal cuts off a source-free all-blue tree P containing one endpoint of
/// each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImportantEdgeCut {
    pub p_side: Vec<VertexId>,
    pub q_side: Vec<VertexId>,
    /// The two cut edges, lexicographically ordered.
    pub cut: [Edge; 2],
    /// y₁, x₁, …, x₂, y₂: the Q-endpoint of `cut[0]`, the tree path through
    /// P, the Q-endpoint of `cut[1]`.
    pub backbone: Vec<VertexId>,
    /// `backbone_times[i]` = appearance time of the edge backbone[i..=i+1].
    pub backbone_times: Vec<TimeStep>,
}

impl ImportantEdgeCut {
    /// The same cut walked from the other side. Rules that key on a pattern
    /// at the start of the backbone are tried in both orientations.
    pub fn reversed(&self) -> ImportantEdgeCut {
        let mut out = self.clone();
        out.cut.swap(0, 1);
        out.backbone.reverse();
        out.backbone_times.reverse();
        out
    }
}

/// Splits the edges into red (two or more appearances) and blue (exactly
/// one), each sorted.
pub fn red_blue_partition(g: &UnderlyingGraph) -> (Vec<Edge>, Vec<Edge>) {
    g.edges().iter().copied().partition(|&e| g.multiplicity(e) >= 2)
}

/// A feedback edge set containing every red edge: the complement of a
/// spanning tree chosen to prefer blue edges, plus the red edges the tree
/// could not avoid. G − S is a forest and |S| ≤ p.
pub fn feedback_edge_set(g: &UnderlyingGraph, red: &[Edge]) -> Result<Vec<Edge>> {
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let is_red = |e: &Edge| red.binary_search(e).is_ok();
    let mut in_tree = vec![false; g.edges().len()];
    // Blue pass first, then red: a red tree edge is then always a bridge.
    for pass_red in [false, true] {
        for (i, e) in g.edges().iter().enumerate() {
            if is_red(e) != pass_red {
                continue;
            }
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a != b {
                parent[a] = b;
                in_tree[i] = true;
            }
        }
    }
    Ok(g.edges()
        .iter()
        .zip(&in_tree)
        .filter(|&(e, &t)| !t || is_red(e))
        .map(|(&e, _)| e)
        .collect())
}

/// The core X = Y ∪ Z: Y is the source plus all endpoints of the feedback
/// edge set; Z contains the vertices of degree ≥ 3 in the forest G − S after
/// iteratively pruning degree-1 vertices outside Y. |X| ≤ max(4p, 1).
pub fn core_set(g: &UnderlyingGraph, fes: &[Edge], source: VertexId) -> Vec<VertexId> {
    let n = g.n();
    let mut in_y = vec![false; n];
    in_y[source] = true;
    for e in fes {
        in_y[e.u] = true;
        in_y[e.v] = true;
    }
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for e in g.edges() {
        if fes.binary_search(e).is_err() {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
    }
    let mut deg: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    let mut alive = vec![true; n];
    let mut queue: Vec<VertexId> = (0..n).filter(|&v| deg[v] == 1 && !in_y[v]).collect();
    while let Some(v) = queue.pop() {
        if !alive[v] || deg[v] != 1 {
            continue;
        }
        alive[v] = false;
        for &u in &adj[v] {
            if alive[u] {
                deg[u] -= 1;
                if deg[u] == 1 && !in_y[u] {
                    queue.push(u);
                }
            }
        }
    }
    (0..n).filter(|&v| in_y[v] || (alive[v] && deg[v] >= 3)).collect()
}

/// Components of G − X with attachment typing; also returns q, the number of
/// kind-B pendants. When p ≥ 1 the counting bounds q ≤ 4p − 1 and
/// |E(G[X])| ≤ 5p − q − 1 are enforced — a violation means `core` was not
/// produced by [`core_set`].
pub fn classify_pendants(
    g: &UnderlyingGraph,
    core: &[VertexId],
) -> Result<(Vec<Pendant>, usize)> {
    let n = g.n();
    let mut in_x = vec![false; n];
    for &v in core {
        in_x[v] = true;
    }
    let outside = g
        .edges()
        .iter()
        .copied()
        .filter(|e| !in_x[e.u] && !in_x[e.v]);
    let mut comp_id = vec![usize::MAX; n];
    let comps: Vec<Vec<VertexId>> = components_of(n, outside)
        .into_iter()
        .filter(|c| !in_x[c[0]])
        .collect();
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_id[v] = i;
        }
    }

    let mut inner_edges = vec![0usize; comps.len()];
    // attach[i] = per-pendant map core vertex -> neighbor count inside.
    let mut attach: Vec<Vec<(VertexId, usize)>> = vec![Vec::new(); comps.len()];
    for e in g.edges() {
        match (in_x[e.u], in_x[e.v]) {
            (false, false) => inner_edges[comp_id[e.u]] += 1,
            (true, false) => bump(&mut attach[comp_id[e.v]], e.u),
            (false, true) => bump(&mut attach[comp_id[e.u]], e.v),
            (true, true) => {}
        }
    }

    let mut pendants = Vec::with_capacity(comps.len());
    for (i, c) in comps.into_iter().enumerate() {
        if inner_edges[i] != c.len() - 1 {
            return Err(Error::StructureViolation(format!(
                "component containing vertex {} is not a tree",
                c[0]
            )));
        }
        attach[i].sort_unstable();
        if let Some(&(x, cnt)) = attach[i].iter().find(|&&(_, cnt)| cnt > 1) {
            return Err(Error::StructureViolation(format!(
                "core vertex {x} has {cnt} neighbors in one component"
            )));
        }
        let attachments: Vec<VertexId> = attach[i].iter().map(|&(x, _)| x).collect();
        let kind = match attachments.len() {
            1 => PendantKind::A,
            2 => PendantKind::B,
            k => {
                return Err(Error::StructureViolation(format!(
                    "component containing vertex {} attaches to {k} core vertices",
                    c[0]
                )))
            }
        };
        pendants.push(Pendant { vertices: c, kind, attachments });
    }

    let q = pendants.iter().filter(|f| f.kind == PendantKind::B).count();
    let appearances: i64 = g.edges().iter().map(|&e| g.multiplicity(e) as i64).sum();
    let p = appearances - n as i64 + 1;
    if p >= 1 {
        if q as i64 > 4 * p - 1 {
            return Err(Error::StructureViolation(format!(
                "{q} two-attachment components exceed the bound 4p-1 = {}",
                4 * p - 1
            )));
        }
        let core_edges = g.edges().iter().filter(|e| in_x[e.u] && in_x[e.v]).count();
        if core_edges as i64 > 5 * p - q as i64 - 1 {
            return Err(Error::StructureViolation(format!(
                "{core_edges} core edges exceed the bound 5p-q-1 = {}",
                5 * p - q as i64 - 1
            )));
        }
    }
    Ok((pendants, q))
}

fn bump(counts: &mut Vec<(VertexId, usize)>, x: VertexId) {
    match counts.iter_mut().find(|(v, _)| *v == x) {
        Some((_, c)) => *c += 1,
        None => counts.push((x, 1)),
    }
}

/// Runs the whole pipeline on one instance.
pub fn decompose(inst: &Instance) -> Result<Decomposition> {
    let g = inst.graph.underlying();
    let (red, blue) = red_blue_partition(&g);
    let fes = feedback_edge_set(&g, &red)?;
    let core = core_set(&g, &fes, inst.source);
    let (pendants, _) = classify_pendants(&g, &core)?;
    Ok(Decomposition { red, blue, fes, core, pendants })
}

/// All important separations, ordered by cut vertex (at most one each): for
/// every vertex x, P collects x and every component C of G − x such that the
/// source is outside C and G[C ∪ {x}] is an all-blue tree. Emitted when
/// |P| ≥ 2; P is then inclusion-maximal for x by construction.
pub fn important_separations(inst: &Instance) -> Result<Vec<ImportantSeparation>> {
    let g = inst.graph.underlying();
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let n = g.n();
    let adj = g.adjacency();
    let mut out = Vec::new();
    let mut comp_id = vec![usize::MAX; n];
    for x in 0..n {
        comp_id.fill(usize::MAX);
        let mut ncomps = 0;
        for v in 0..n {
            if v == x || comp_id[v] != usize::MAX {
                continue;
            }
            let id = ncomps;
            ncomps += 1;
            comp_id[v] = id;
            let mut stack = vec![v];
            while let Some(w) = stack.pop() {
                for &u in &adj[w] {
                    if u != x && comp_id[u] == usize::MAX {
                        comp_id[u] = id;
                        stack.push(u);
                    }
                }
            }
        }
        // Per component: vertex count, half-edge counts, blue/source flags.
        let mut size = vec![0usize; ncomps];
        let mut inner_half = vec![0usize; ncomps];
        let mut to_x = vec![0usize; ncomps];
        let mut clean = vec![true; ncomps];
        for v in 0..n {
            if v == x {
                continue;
            }
            let c = comp_id[v];
            size[c] += 1;
            for &u in &adj[v] {
                if u == x {
                    to_x[c] += 1;
                } else {
                    inner_half[c] += 1;
                }
                if u > v || u == x {
                    if g.multiplicity(Edge::new(v, u)) >= 2 {
                        clean[c] = false;
                    }
                }
            }
        }
        if inst.source != x {
            clean[comp_id[inst.source]] = false;
        }
        let keep: Vec<bool> = (0..ncomps)
            .map(|c| clean[c] && inner_half[c] / 2 + to_x[c] == size[c])
            .collect();
        let mut p_side: Vec<VertexId> = (0..n)
            .filter(|&v| v == x || keep[comp_id[v]])
            .collect();
        if p_side.len() < 2 {
            continue;
        }
        let q_side: Vec<VertexId> = (0..n)
            .filter(|&v| v == x || !keep[comp_id[v]])
            .collect();
        let mut windows: Vec<TimeStep> = adj[x]
            .iter()
            .filter(|&&u| !keep[comp_id[u]])
            .flat_map(|&u| g.appearances(Edge::new(x, u)).iter().copied())
            .collect();
        windows.sort_unstable();
        windows.dedup();
        p_side.sort_unstable();
        out.push(ImportantSeparation { p_side, q_side, cut_vertex: x, windows });
    }
    Ok(out)
}

/// All important edge cuts, ordered by cut pair: every pair of blue edges
/// with four distinct endpoints such that removing both leaves a component P
/// that avoids the source, contains exactly one endpoint of each cut edge,
/// and induces an all-blue tree. At most one component qualifies per pair.
pub fn important_edge_cuts(inst: &Instance) -> Result<Vec<ImportantEdgeCut>> {
    let g = inst.graph.underlying();
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let n = g.n();
    let adj = g.adjacency();
    let blue: Vec<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|&e| g.multiplicity(e) == 1)
        .collect();
    let mut out = Vec::new();
    let mut comp_id = vec![usize::MAX; n];
    for i in 0..blue.len() {
        'pair: for j in i + 1..blue.len() {
            let (e1, e2) = (blue[i], blue[j]);
            if e1.touches(e2.u) || e1.touches(e2.v) {
                continue;
            }
            comp_id.fill(usize::MAX);
            let skip = |a: VertexId, b: VertexId| {
                let e = Edge::new(a, b);
                e == e1 || e == e2
            };
            let mut ncomps = 0;
            for v in 0..n {
                if comp_id[v] != usize::MAX {
                    continue;
                }
                comp_id[v] = ncomps;
                let mut stack = vec![v];
                while let Some(w) = stack.pop() {
                    for &u in &adj[w] {
                        if comp_id[u] == usize::MAX && !skip(w, u) {
                            comp_id[u] = ncomps;
                            stack.push(u);
                        }
                    }
                }
                ncomps += 1;
            }
            if comp_id[e1.u] == comp_id[e1.v] || comp_id[e2.u] == comp_id[e2.v] {
                continue;
            }
            for k in [comp_id[e1.u], comp_id[e1.v]] {
                if k == comp_id[inst.source] || (k != comp_id[e2.u] && k != comp_id[e2.v]) {
                    continue;
                }
                let p_side: Vec<VertexId> = (0..n).filter(|&v| comp_id[v] == k).collect();
                let mut inner = 0usize;
                for &v in &p_side {
                    for &u in &adj[v] {
                        if comp_id[u] == k {
                            if u > v && g.multiplicity(Edge::new(v, u)) >= 2 {
                                continue 'pair;
                            }
                            inner += 1;
                        }
                    }
                }
                if inner / 2 != p_side.len() - 1 {
                    continue;
                }
                let q_side: Vec<VertexId> = (0..n).filter(|&v| comp_id[v] != k).collect();
                let (x1, y1) = oriented(e1, &comp_id, k);
                let (x2, y2) = oriented(e2, &comp_id, k);
                let (mut backbone, mut times) = tree_path(&adj, &comp_id, k, x1, x2, &g);
                backbone.insert(0, y1);
                backbone.push(y2);
                times.insert(0, g.appearances(e1)[0]);
                times.push(g.appearances(e2)[0]);
                out.push(ImportantEdgeCut {
                    p_side,
                    q_side,
                    cut: [e1, e2],
                    backbone,
                    backbone_times: times,
                });
            }
        }
    }
    Ok(out)
}

/// Splits a cut edge into (inside-P endpoint, outside endpoint).
fn oriented(e: Edge, comp_id: &[usize], k: usize) -> (VertexId, VertexId) {
    if comp_id[e.u] == k {
        (e.u, e.v)
    } else {
        (e.v, e.u)
    }
}

/// Unique path between two vertices of the tree component `k`, with per-edge
/// appearance times.
fn tree_path(
    adj: &[Vec<VertexId>],
    comp_id: &[usize],
    k: usize,
    from: VertexId,
    to: VertexId,
    g: &UnderlyingGraph,
) -> (Vec<VertexId>, Vec<TimeStep>) {
    let mut parent: Vec<Option<VertexId>> = vec![None; comp_id.len()];
    parent[from] = Some(from);
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        if v == to {
            break;
        }
        for &u in &adj[v] {
            if comp_id[u] == k && parent[u].is_none() {
                parent[u] = Some(v);
                stack.push(u);
            }
        }
    }
    let mut vertices = vec![to];
    let mut times = Vec::new();
    let mut cur = to;
    while let Some(p) = parent[cur] {
        if p == cur {
            break;
        }
        times.push(g.appearances(Edge::new(p, cur))[0]);
        vertices.push(p);
        cur = p;
    }
    vertices.reverse();
    times.reverse();
    (vertices, times)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::TemporalGraph;

    fn inst(n: usize, snaps: &[&[(usize, usize)]], source: VertexId) -> Instance {
        let snapshots = snaps
            .iter()
            .map(|s| s.iter().map(|&(a, b)| Edge::new(a, b)).collect())
            .collect();
        let g = TemporalGraph::new(n, snapshots).unwrap();
        Instance::new(g, None, source, None).unwrap()
    }

    #[test]
    fn red_blue_splits_by_multiplicity() {
        let i = inst(3, &[&[(0, 1), (1, 2), (0, 2)], &[(0, 1)]], 0);
        let (red, blue) = red_blue_partition(&i.graph.underlying());
        assert_eq!(red, vec![Edge::new(0, 1)]);
        assert_eq!(blue, vec![Edge::new(0, 2), Edge::new(1, 2)]);
    }

    #[test]
    fn feedback_set_is_empty_on_blue_trees() {
        let i = inst(4, &[&[(0, 1)], &[(1, 2), (1, 3)]], 0);
        let g = i.graph.underlying();
        let (red, _) = red_blue_partition(&g);
        assert_eq!(feedback_edge_set(&g, &red).unwrap(), vec![]);
    }

    #[test]
    fn feedback_set_on_blue_triangle_has_one_edge() {
        let i = inst(3, &[&[(0, 1), (1, 2), (0, 2)]], 0);
        let g = i.graph.underlying();
        let (red, _) = red_blue_partition(&g);
        let s = feedback_edge_set(&g, &red).unwrap();
        assert_eq!(s.len(), 1); // p = 1
    }

    #[test]
    fn red_bridge_lands_in_feedback_set() {
        // Path 0-1-2 where 1-2 appears twice: S is exactly the red bridge.
        let i = inst(3, &[&[(0, 1), (1, 2)], &[(1, 2)]], 0);
        let g = i.graph.underlying();
        let (red, _) = red_blue_partition(&g);
        let s = feedback_edge_set(&g, &red).unwrap();
        assert_eq!(s, vec![Edge::new(1, 2)]);
        // G - S is a forest: 2 components, no cycle.
        assert_eq!(components_of(3, [Edge::new(0, 1)].into_iter()).len(), 2);
    }

    #[test]
    fn feedback_set_needs_connectivity() {
        let i = inst(4, &[&[(0, 1)], &[(2, 3)]], 0);
        let g = i.graph.underlying();
        assert!(matches!(
            feedback_edge_set(&g, &[]),
            Err(Error::DisconnectedGraph)
        ));
    }

    #[test]
    fn core_of_blue_star_is_the_center() {
        let i = inst(4, &[&[(0, 1)], &[(0, 2)], &[(0, 3)]], 0);
        let g = i.graph.underlying();
        assert_eq!(core_set(&g, &[], 0), vec![0]);
    }

    #[test]
    fn core_of_path_is_the_source() {
        let i = inst(4, &[&[(0, 1), (1, 2), (2, 3)]], 0);
        let g = i.graph.underlying();
        assert_eq!(core_set(&g, &[], 0), vec![0]);
    }

    #[test]
    fn core_of_blue_triangle_is_everything() {
        let i = inst(3, &[&[(0, 1), (1, 2), (0, 2)]], 0);
        let g = i.graph.underlying();
        let (red, _) = red_blue_partition(&g);
        let s = feedback_edge_set(&g, &red).unwrap();
        let x = core_set(&g, &s, 0);
        assert!(x.contains(&0));
        assert!(x.len() <= 3);
        for e in &s {
            assert!(x.contains(&e.u) && x.contains(&e.v));
        }
    }

    #[test]
    fn branch_vertices_enter_the_core() {
        // 4-cycle plus a second route 0-4-5-1 / 4-6-3: vertices 1 and 4 have
        // degree 3 and survive pruning, so they join the core as branch
        // vertices (or as feedback endpoints, depending on the tree).
        let i = inst(
            7,
            &[&[(0, 1), (1, 2), (2, 3), (0, 3)], &[(0, 4), (4, 5), (4, 6), (5, 1), (6, 3)]],
            0,
        );
        let g = i.graph.underlying();
        let (red, _) = red_blue_partition(&g);
        assert!(red.is_empty());
        let s = feedback_edge_set(&g, &red).unwrap();
        // p = 9 - 7 + 1 = 3, so |S| = 3 non-tree edges.
        assert_eq!(s.len(), 3);
        let x = core_set(&g, &s, 0);
        for v in x {
            let endpoint = s.iter().any(|e| e.touches(v));
            let branch = g.adjacency()[v].len() >= 3;
            assert!(v == 0 || endpoint || branch);
        }
    }

    #[test]
    fn pendant_typing_matches_attachment_count() {
        // Path of 5, X = {2}: two one-attachment pendants.
        let i = inst(5, &[&[(0, 1), (1, 2), (2, 3), (3, 4)]], 0);
        let g = i.graph.underlying();
        let (pendants, q) = classify_pendants(&g, &[2]).unwrap();
        assert_eq!(q, 0);
        assert_eq!(pendants.len(), 2);
        assert_eq!(pendants[0].vertices, vec![0, 1]);
        assert_eq!(pendants[0].kind, PendantKind::A);
        assert_eq!(pendants[0].attachments, vec![2]);
        assert_eq!(pendants[1].vertices, vec![3, 4]);
    }

    #[test]
    fn opposite_cycle_vertices_make_two_attachment_pendants() {
        let i = inst(4, &[&[(0, 1), (1, 2), (2, 3), (0, 3)]], 0);
        let g = i.graph.underlying();
        let (pendants, q) = classify_pendants(&g, &[0, 2]).unwrap();
        assert_eq!(q, 2);
        assert!(pendants.iter().all(|f| f.kind == PendantKind::B));
        assert_eq!(pendants[0].attachments, vec![0, 2]);
    }

    #[test]
    fn star_leaves_are_singleton_pendants() {
        let i = inst(4, &[&[(0, 1)], &[(0, 2)], &[(0, 3)]], 0);
        let g = i.graph.underlying();
        let (pendants, q) = classify_pendants(&g, &[0]).unwrap();
        assert_eq!(q, 0);
        assert_eq!(pendants.len(), 3);
        assert!(pendants.iter().all(|f| f.vertices.len() == 1));
    }

    #[test]
    fn decompose_checks_out_on_triangle_with_tail() {
        let i = inst(5, &[&[(0, 1), (1, 2), (0, 2)], &[(2, 3), (3, 4)]], 0);
        let d = decompose(&i).unwrap();
        assert!(d.red.is_empty());
        assert_eq!(d.fes.len(), 1);
        assert_eq!(d.q(), 0);
        // The tail 3-4 is one pendant hanging off the core.
        assert_eq!(d.pendants.len(), 1);
        assert_eq!(d.pendants[0].vertices, vec![3, 4]);
        assert_eq!(d.pendants[0].attachments, vec![2]);
    }

    #[test]
    fn separations_on_blue_path() {
        // 0-1-2 from 0: x=1 cuts off {1,2}; x=0 takes the whole tree; x=2
        // only sees the source side.
        let i = inst(3, &[&[(0, 1)], &[(1, 2)]], 0);
        let seps = important_separations(&i).unwrap();
        assert_eq!(seps.len(), 2);
        assert_eq!(seps[0].cut_vertex, 0);
        assert_eq!(seps[0].p_side, vec![0, 1, 2]);
        assert_eq!(seps[0].q_side, vec![0]);
        assert_eq!(seps[0].windows, Vec::<TimeStep>::new());
        assert_eq!(seps[1].cut_vertex, 1);
        assert_eq!(seps[1].p_side, vec![1, 2]);
        assert_eq!(seps[1].q_side, vec![0, 1]);
        assert_eq!(seps[1].windows, vec![1]);
    }

    #[test]
    fn star_from_center_is_one_separation() {
        let i = inst(4, &[&[(0, 1)], &[(0, 2)], &[(0, 3)]], 0);
        let seps = important_separations(&i).unwrap();
        assert_eq!(seps.len(), 1);
        assert_eq!(seps[0].cut_vertex, 0);
        assert_eq!(seps[0].p_side, vec![0, 1, 2, 3]);
        assert_eq!(seps[0].windows, Vec::<TimeStep>::new());
    }

    #[test]
    fn pendant_tree_on_red_cycle_separates_at_attachment() {
        // Red triangle 0-1-2 (all edges twice), blue tail 2-3-4, source 0.
        let i = inst(
            5,
            &[
                &[(0, 1), (1, 2), (0, 2)],
                &[(0, 1), (1, 2), (0, 2)],
                &[(2, 3)],
                &[(3, 4)],
            ],
            0,
        );
        let seps = important_separations(&i).unwrap();
        let cuts: Vec<VertexId> = seps.iter().map(|s| s.cut_vertex).collect();
        assert_eq!(cuts, vec![2, 3]);
        assert_eq!(seps[0].p_side, vec![2, 3, 4]);
        assert_eq!(seps[0].windows, vec![1, 2]);
        assert_eq!(seps[1].p_side, vec![3, 4]);
        assert_eq!(seps[1].windows, vec![3]);
    }

    #[test]
    fn red_component_is_never_a_separation_side() {
        // Red edge 1-2 hanging off 0: no separation may cut it off.
        let i = inst(3, &[&[(0, 1), (1, 2)], &[(1, 2)]], 0);
        let seps = important_separations(&i).unwrap();
        assert_eq!(seps.len(), 0);
    }

    #[test]
    fn edge_cut_on_blue_path() {
        let i = inst(4, &[&[(0, 1)], &[(1, 2)], &[(2, 3)]], 0);
        let cuts = important_edge_cuts(&i).unwrap();
        assert_eq!(cuts.len(), 1);
        let c = &cuts[0];
        assert_eq!(c.cut, [Edge::new(0, 1), Edge::new(2, 3)]);
        assert_eq!(c.p_side, vec![1, 2]);
        assert_eq!(c.q_side, vec![0, 3]);
        assert_eq!(c.backbone, vec![0, 1, 2, 3]);
        assert_eq!(c.backbone_times, vec![1, 2, 3]);
    }

    #[test]
    fn opposite_cycle_edges_cut_twice() {
        let i = inst(4, &[&[(0, 1), (1, 2), (2, 3), (0, 3)]], 0);
        let cuts = important_edge_cuts(&i).unwrap();
        assert_eq!(cuts.len(), 2);
        assert_eq!(cuts[0].cut, [Edge::new(0, 1), Edge::new(2, 3)]);
        assert_eq!(cuts[0].p_side, vec![1, 2]);
        assert_eq!(cuts[0].backbone, vec![0, 1, 2, 3]);
        assert_eq!(cuts[1].cut, [Edge::new(0, 3), Edge::new(1, 2)]);
        assert_eq!(cuts[1].p_side, vec![2, 3]);
        assert_eq!(cuts[1].backbone, vec![0, 3, 2, 1]);
    }

    #[test]
    fn shared_endpoints_never_cut() {
        let i = inst(3, &[&[(0, 1)], &[(1, 2)]], 0);
        assert_eq!(important_edge_cuts(&i).unwrap().len(), 0);
    }

    #[test]
    fn red_side_never_cut_off() {
        // 0-1, then a red edge 2-3 inside the would-be P side 1-2-3-4.
        let i = inst(
            5,
            &[&[(0, 1), (1, 2), (2, 3), (3, 4)], &[(2, 3)]],
            0,
        );
        let cuts = important_edge_cuts(&i).unwrap();
        assert!(cuts.iter().all(|c| !c.p_side.contains(&2) || !c.p_side.contains(&3)));
    }
}
