//! Batched sweeps for large instances.
//!
//! The exact driver rescans every separation and edge cut after each
//! application, which is quadratic on instances dominated by pendant forests
//! and long blue chains. The sweeps here locate all rewrite sites in one DFS
//! pass over the underlying graph and apply a conflict-free batch of them in
//! a single rebuild. A touched-set keeps supports disjoint, so the batch
//! equals some sequential order of the exact rules; at most one cycle edge is
//! removed per sweep so connectivity can never break jointly. The exact loop
//! still runs afterwards and owns the fixpoint.

use crate::decomposition::{ImportantEdgeCut, ImportantSeparation};
use crate::error::{Error, Result};
use crate::graph::{Edge, Instance, TimeStep, VertexId};

use super::rules::{
    apply_patch, apply_rule_contract_backbone, apply_rule_delete_edge,
    apply_rule_merge_equal_times, apply_rule_trees, contract_weights, stats_of,
    tree_walk_bounds, End, Patch,
};
use super::trace::{KernelTrace, RuleApplication, TraceStats};
use super::windows_from_times;

/// Rooted DFS of the underlying graph. `order` is the preorder, `tin[v]` the
/// preorder index, and the subtree of `v` is `order[tin[v]..tout[v]]`. The
/// root is its own parent.
struct Dfs {
    parent: Vec<VertexId>,
    order: Vec<VertexId>,
    tin: Vec<usize>,
    tout: Vec<usize>,
}

fn dfs_from_source(n: usize, adj: &[Vec<VertexId>], source: VertexId) -> Dfs {
    let mut parent = vec![usize::MAX; n];
    let mut tin = vec![usize::MAX; n];
    let mut tout = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut ptr = vec![0usize; n];
    parent[source] = source;
    tin[source] = 0;
    order.push(source);
    let mut stack = vec![source];
    while let Some(&v) = stack.last() {
        if let Some(&u) = adj[v].get(ptr[v]) {
            ptr[v] += 1;
            if tin[u] == usize::MAX {
                parent[u] = v;
                tin[u] = order.len();
                order.push(u);
                stack.push(u);
            }
        } else {
            tout[v] = order.len();
            stack.pop();
        }
    }
    Dfs { parent, order, tin, tout }
}

fn is_tree_edge(dfs: &Dfs, e: Edge) -> bool {
    dfs.parent[e.u] == e.v || dfs.parent[e.v] == e.u
}

/// Lowpoint per vertex: the parent edge of `v` is a bridge iff
/// `low[v] == tin[v]`. A red tree edge counts as its own parallel back edge,
/// so it is never a bridge.
fn lowlink(under: &crate::graph::UnderlyingGraph, dfs: &Dfs) -> Vec<usize> {
    let mut low = dfs.tin.clone();
    for &e in under.edges() {
        if !is_tree_edge(dfs, e) {
            low[e.u] = low[e.u].min(dfs.tin[e.v]);
            low[e.v] = low[e.v].min(dfs.tin[e.u]);
        } else if under.multiplicity(e) >= 2 {
            let child = if dfs.parent[e.u] == e.v { e.u } else { e.v };
            low[child] = low[child].min(dfs.tin[dfs.parent[child]]);
        }
    }
    for &v in dfs.order.iter().rev() {
        let p = dfs.parent[v];
        if p != v && low[v] < low[p] {
            low[p] = low[v];
        }
    }
    low
}

/// One separation rewrite site: a cut vertex whose qualifying children
/// subtrees are all-blue pendant trees, stored as preorder ranges with their
/// attachment times, plus the appearance times of the cut vertex's remaining
/// edges (they carve the timeline into windows).
struct SepSite {
    x: VertexId,
    /// (attachment time, preorder range) per qualifying child subtree.
    branches: Vec<(TimeStep, usize, usize)>,
    aq: Vec<TimeStep>,
    /// Total branch vertex count; sites are applied largest first.
    weight: usize,
}

/// `sub[v] == 0` iff the subtree of `v` is an all-blue pendant tree: no
/// vertex in it touches a non-tree edge, and no tree edge in it (including
/// the parent edge of `v`) is red.
fn pendant_subtrees(under: &crate::graph::UnderlyingGraph, dfs: &Dfs) -> Vec<u64> {
    let n = under.n();
    let mut sub = vec![0u64; n];
    for &e in under.edges() {
        if !is_tree_edge(dfs, e) {
            sub[e.u] += 1;
            sub[e.v] += 1;
        } else if under.multiplicity(e) >= 2 {
            let child = if dfs.parent[e.u] == e.v { e.u } else { e.v };
            sub[child] += 1;
        }
    }
    for &v in dfs.order.iter().rev() {
        if dfs.parent[v] != v {
            sub[dfs.parent[v]] += sub[v];
        }
    }
    sub
}

fn separation_sites(
    under: &crate::graph::UnderlyingGraph,
    adj: &[Vec<VertexId>],
    dfs: &Dfs,
) -> Vec<SepSite> {
    let n = under.n();
    let sub = pendant_subtrees(under, dfs);
    let mut branches_at: Vec<Vec<(TimeStep, usize, usize)>> = vec![Vec::new(); n];
    for &v in &dfs.order[1..] {
        if sub[v] == 0 {
            let e = Edge::new(dfs.parent[v], v);
            branches_at[dfs.parent[v]].push((under.appearances(e)[0], dfs.tin[v], dfs.tout[v]));
        }
    }
    let mut sites = Vec::new();
    for (x, branches) in branches_at.into_iter().enumerate() {
        let weight: usize = branches.iter().map(|&(_, lo, hi)| hi - lo).sum();
        // A window needs at least three tree vertices besides x to fire.
        if weight < 3 {
            continue;
        }
        let mut aq: Vec<TimeStep> = Vec::new();
        for &u in &adj[x] {
            let qualifying_child = dfs.parent[u] == x && sub[u] == 0;
            if !qualifying_child {
                aq.extend_from_slice(under.appearances(Edge::new(x, u)));
            }
        }
        aq.sort_unstable();
        aq.dedup();
        sites.push(SepSite { x, branches, aq, weight });
    }
    sites.sort_by(|a, b| b.weight.cmp(&a.weight).then(a.x.cmp(&b.x)));
    sites
}

/// A maximal run of degree-2 vertices with only blue edges, walked between
/// two anchors (which coincide for a cycle hanging at one vertex). All edges
/// on the run are blue; `times[i]` belongs to `verts[i]..=verts[i+1]`.
struct Chain {
    verts: Vec<VertexId>,
    times: Vec<TimeStep>,
}

fn collect_chains(
    under: &crate::graph::UnderlyingGraph,
    adj: &[Vec<VertexId>],
    source: VertexId,
) -> Vec<Chain> {
    let n = under.n();
    let interior = |v: VertexId| {
        v != source
            && adj[v].len() == 2
            && adj[v].iter().all(|&u| under.multiplicity(Edge::new(v, u)) == 1)
    };
    let mut claimed = vec![false; n];
    let mut chains = Vec::new();
    for a in 0..n {
        if interior(a) {
            continue;
        }
        for &w in &adj[a] {
            if !interior(w) || claimed[w] {
                continue;
            }
            claimed[w] = true;
            let mut verts = vec![a, w];
            let mut times = vec![under.appearances(Edge::new(a, w))[0]];
            let (mut prev, mut cur) = (a, w);
            loop {
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                times.push(under.appearances(Edge::new(cur, next))[0]);
                verts.push(next);
                // Non-interior ends the run; a cycle ends back at `a`.
                if !interior(next) || claimed[next] {
                    break;
                }
                claimed[next] = true;
                prev = cur;
                cur = next;
            }
            chains.push(Chain { verts, times });
        }
    }
    chains
}

/// The first rewrite a chain admits, by edge index `j`. Distinctness guards
/// reject the windows that wrap all the way around a short hanging cycle.
enum Action {
    /// times `t[j-1] > t[j] < t[j+1]`: the middle appearance is unusable.
    Valley(usize),
    /// `t[j] == t[j+1]`: re-route the earlier edge past `verts[j+1]`.
    EqualFwd(usize),
    /// `t[j] == t[j+1]` at the chain's far end: same rewrite walked backwards.
    EqualRev(usize),
    /// Five strictly increasing times: contract the inner path to a gadget.
    Run(usize),
}

fn find_action(chain: &Chain) -> Option<Action> {
    let v = &chain.verts;
    let t = &chain.times;
    let m = t.len();
    for j in 1..m.saturating_sub(1) {
        if t[j - 1] > t[j] && t[j] < t[j + 1] && v[j - 1] != v[j + 2] {
            return Some(Action::Valley(j));
        }
    }
    for j in 0..m.saturating_sub(1) {
        if t[j] == t[j + 1] {
            if j + 2 < m && v[j] != v[j + 3] {
                return Some(Action::EqualFwd(j));
            }
            if j >= 1 && v[j + 2] != v[j - 1] {
                return Some(Action::EqualRev(j));
            }
        }
    }
    for j in 0..m.saturating_sub(4) {
        if (j..j + 4).all(|i| t[i] < t[i + 1]) && v[j] != v[j + 5] {
            return Some(Action::Run(j));
        }
    }
    None
}

/// A batched application awaiting the rebuild: created ids and added edges
/// are resolved once the shared patch lands.
struct Pending {
    rule: &'static str,
    locus: String,
    deleted: Vec<VertexId>,
    weights: Vec<u64>,
    create_range: (usize, usize),
    add_range: (usize, usize),
    edges_removed: Vec<(VertexId, VertexId, TimeStep)>,
    before: TraceStats,
    after: TraceStats,
}

impl Pending {
    fn check_monotone(&self) -> Result<()> {
        if self.after.p > self.before.p {
            return Err(Error::InternalError(format!(
                "rule {} increased p from {} to {} at {}",
                self.rule, self.before.p, self.after.p, self.locus
            )));
        }
        Ok(())
    }
}

/// Applies the accumulated patch and turns the pending entries into trace
/// records. The incrementally tracked stats must agree with the rebuilt
/// instance, otherwise some batched application was miscounted.
fn finalize(
    inst: &Instance,
    patch: &Patch,
    pending: Vec<Pending>,
    running: TraceStats,
    trace: &mut KernelTrace,
) -> Result<Option<Instance>> {
    if pending.is_empty() {
        return Ok(None);
    }
    let applied = apply_patch(inst, patch)?;
    let rebuilt = stats_of(&applied.instance);
    if rebuilt != running {
        return Err(Error::InternalError(format!(
            "sweep bookkeeping drifted: tracked {running:?}, rebuilt {rebuilt:?}"
        )));
    }
    for p in pending {
        let created = applied.created_ids[p.create_range.0..p.create_range.1]
            .iter()
            .copied()
            .zip(p.weights)
            .collect();
        let edges_added = patch.add_edges[p.add_range.0..p.add_range.1]
            .iter()
            .map(|(a, b, t)| (applied.resolve(a), applied.resolve(b), *t))
            .collect();
        trace.applications.push(RuleApplication {
            rule: p.rule.into(),
            locus: p.locus,
            deleted: p.deleted,
            created,
            edges_removed: p.edges_removed,
            edges_added,
            before: p.before,
            after: p.after,
        });
    }
    Ok(Some(applied.instance))
}

/// One pass of the trees rule over every separation site, largest first.
/// Within a site every window fires independently; the windows are disjoint
/// in time, so the new pendant of one window never joins another.
fn sweep_separations(inst: &Instance, trace: &mut KernelTrace) -> Result<Option<Instance>> {
    let n = inst.n();
    let under = inst.graph.underlying();
    let adj = under.adjacency();
    let dfs = dfs_from_source(n, &adj, inst.source);
    if dfs.order.len() != n {
        return Err(Error::InternalError("sweep ran on a disconnected graph".into()));
    }
    let sites = separation_sites(&under, &adj, &dfs);
    let l = inst.graph.lifetime();

    let mut touched = vec![false; n];
    let mut patch = Patch::default();
    let mut pending: Vec<Pending> = Vec::new();
    let mut running = stats_of(inst);

    'site: for site in &sites {
        if touched[site.x] {
            continue;
        }
        for &(_, lo, hi) in &site.branches {
            if dfs.order[lo..hi].iter().any(|&v| touched[v]) {
                continue 'site;
            }
        }
        let mut site_fired = false;
        for window in windows_from_times(&site.aq) {
            let selected: Vec<(TimeStep, usize, usize)> = site
                .branches
                .iter()
                .copied()
                .filter(|&(t, _, _)| window.admits(t))
                .collect();
            let size: usize = 1 + selected.iter().map(|&(_, lo, hi)| hi - lo).sum::<usize>();
            if size < 4 {
                continue;
            }
            let mut verts: Vec<VertexId> = vec![site.x];
            let mut edges: Vec<(VertexId, VertexId, TimeStep)> = Vec::new();
            for &(_, lo, hi) in &selected {
                for &v in &dfs.order[lo..hi] {
                    verts.push(v);
                    let e = Edge::new(dfs.parent[v], v);
                    edges.push((dfs.parent[v], v, under.appearances(e)[0]));
                }
            }
            let (w1, w2) = tree_walk_bounds(&inst.weights, &verts, &edges, site.x)?;
            let wy = w1
                .checked_sub(inst.weights[site.x])
                .filter(|&w| w > 0)
                .ok_or_else(|| {
                    Error::InternalError("trees rule: closed value not above w(x)".into())
                })?;
            let t_min = selected.iter().map(|&(t, _, _)| t).min().expect("nonempty selection");

            let create_start = patch.create.len();
            let add_start = patch.add_edges.len();
            let deleted = verts[1..].to_vec();
            patch.delete.extend_from_slice(&deleted);
            patch.create.push(wy);
            patch.add_edges.push((End::Old(site.x), End::New(create_start), t_min));
            let mut weights = vec![wy];
            if w2 > w1 {
                patch.create.push(w2 - w1);
                patch
                    .add_edges
                    .push((End::New(create_start), End::New(create_start + 1), l));
                weights.push(w2 - w1);
            }
            // Every deleted branch vertex owns exactly one blue edge (its
            // parent edge), so appearances drop by the vertex count.
            let before = running;
            let n_after = before.n - deleted.len() + weights.len();
            let m_after = before.appearances - deleted.len() as u64 + weights.len() as u64;
            running = TraceStats {
                n: n_after,
                appearances: m_after,
                lifetime: before.lifetime,
                p: m_after as i64 - n_after as i64 + 1,
            };
            let entry = Pending {
                rule: "trees",
                locus: format!("cut vertex {}, window {window:?}", site.x),
                deleted,
                weights,
                create_range: (create_start, patch.create.len()),
                add_range: (add_start, patch.add_edges.len()),
                edges_removed: Vec::new(),
                before,
                after: running,
            };
            entry.check_monotone()?;
            pending.push(entry);
            site_fired = true;
        }
        if site_fired {
            touched[site.x] = true;
            for &(_, lo, hi) in &site.branches {
                for &v in &dfs.order[lo..hi] {
                    touched[v] = true;
                }
            }
        }
    }
    finalize(inst, &patch, pending, running, trace)
}

/// One pass of the edge-cut rules over every chain, one action per chain.
/// Bridge valleys drop their pendant subtree exactly; at most one non-bridge
/// valley is taken per sweep, because two cycle-edge removals could
/// disconnect the graph jointly even though each alone cannot.
fn sweep_chains(inst: &Instance, trace: &mut KernelTrace) -> Result<Option<Instance>> {
    let n = inst.n();
    let under = inst.graph.underlying();
    let adj = under.adjacency();
    let dfs = dfs_from_source(n, &adj, inst.source);
    if dfs.order.len() != n {
        return Err(Error::InternalError("sweep ran on a disconnected graph".into()));
    }
    let low = lowlink(&under, &dfs);
    let chains = collect_chains(&under, &adj, inst.source);
    let l = inst.graph.lifetime();

    let mut touched = vec![false; n];
    let mut cycle_edge_removed = false;
    let mut patch = Patch::default();
    let mut pending: Vec<Pending> = Vec::new();
    let mut running = stats_of(inst);

    'chain: for chain in &chains {
        let Some(action) = find_action(chain) else { continue };
        let v = &chain.verts;
        let t = &chain.times;
        match action {
            Action::Valley(j) => {
                let e = Edge::new(v[j], v[j + 1]);
                let child = if dfs.parent[v[j + 1]] == v[j] {
                    Some(v[j + 1])
                } else if dfs.parent[v[j]] == v[j + 1] {
                    Some(v[j])
                } else {
                    None
                };
                let bridge_child = child.filter(|&c| low[c] == dfs.tin[c]);
                let dropped: Vec<VertexId> = match bridge_child {
                    Some(c) => dfs.order[dfs.tin[c]..dfs.tout[c]].to_vec(),
                    None => Vec::new(),
                };
                if v.iter().chain(&dropped).any(|&u| touched[u]) {
                    continue 'chain;
                }
                if bridge_child.is_none() {
                    if cycle_edge_removed {
                        continue 'chain;
                    }
                    cycle_edge_removed = true;
                }
                for &u in v.iter().chain(&dropped) {
                    touched[u] = true;
                }
                patch.remove_appearances.push((e, t[j]));
                patch.delete.extend_from_slice(&dropped);
                let removed_apps: u64 = match bridge_child {
                    Some(c) => {
                        let (lo, hi) = (dfs.tin[c], dfs.tout[c]);
                        let mut sum = 1u64;
                        for &u in &dropped {
                            for &w in &adj[u] {
                                if lo <= dfs.tin[w]
                                    && dfs.tin[w] < hi
                                    && dfs.tin[u] < dfs.tin[w]
                                {
                                    sum += under.multiplicity(Edge::new(u, w)) as u64;
                                }
                            }
                        }
                        sum
                    }
                    None => 1,
                };
                let before = running;
                let n_after = before.n - dropped.len();
                let m_after = before.appearances - removed_apps;
                running = TraceStats {
                    n: n_after,
                    appearances: m_after,
                    lifetime: before.lifetime,
                    p: m_after as i64 - n_after as i64 + 1,
                };
                let entry = Pending {
                    rule: "delete-edge",
                    locus: format!("backbone edge {{{}, {}}} at time {}", v[j], v[j + 1], t[j]),
                    deleted: dropped,
                    weights: Vec::new(),
                    create_range: (patch.create.len(), patch.create.len()),
                    add_range: (patch.add_edges.len(), patch.add_edges.len()),
                    edges_removed: vec![(v[j], v[j + 1], t[j])],
                    before,
                    after: running,
                };
                entry.check_monotone()?;
                pending.push(entry);
            }
            Action::EqualFwd(j) | Action::EqualRev(j) => {
                if v.iter().any(|&u| touched[u]) {
                    continue 'chain;
                }
                for &u in v {
                    touched[u] = true;
                }
                // Forward: delete edge j, re-route its outer end v[j] to
                // v[j+2]. Reversed: delete edge j+1, re-route v[j+2] to v[j].
                let (del, keep_far, time) = match action {
                    Action::EqualFwd(_) => ((v[j], v[j + 1]), v[j], t[j]),
                    _ => ((v[j + 2], v[j + 1]), v[j + 2], t[j + 1]),
                };
                let other = if keep_far == v[j] { v[j + 2] } else { v[j] };
                let add_start = patch.add_edges.len();
                patch.remove_appearances.push((Edge::new(del.0, del.1), time));
                patch.add_edges.push((End::Old(keep_far), End::Old(other), time));
                let before = running;
                let entry = Pending {
                    rule: "merge-equal-times",
                    locus: format!("cut edge {{{}, {}}} at time {}", del.0, del.1, time),
                    deleted: Vec::new(),
                    weights: Vec::new(),
                    create_range: (patch.create.len(), patch.create.len()),
                    add_range: (add_start, patch.add_edges.len()),
                    edges_removed: vec![(del.0, del.1, time)],
                    before,
                    after: before,
                };
                entry.check_monotone()?;
                pending.push(entry);
            }
            Action::Run(j) => {
                if v.iter().any(|&u| touched[u]) {
                    continue 'chain;
                }
                let path: Vec<VertexId> = v[j..=j + 5].to_vec();
                let edges: Vec<(VertexId, VertexId, TimeStep)> =
                    (0..5).map(|i| (v[j + i], v[j + i + 1], t[j + i])).collect();
                let created = contract_weights(&inst.weights, &path, &edges, v[j], v[j + 5])?;
                for &u in v {
                    touched[u] = true;
                }
                let cs = patch.create.len();
                let add_start = patch.add_edges.len();
                patch.delete.extend_from_slice(&v[j + 1..=j + 4]);
                patch.create.extend_from_slice(&created);
                patch.add_edges.push((End::Old(v[j]), End::New(cs), t[j]));
                patch.add_edges.push((End::New(cs), End::New(cs + 1), t[j + 1]));
                patch.add_edges.push((End::New(cs + 1), End::New(cs + 2), t[j + 3]));
                patch.add_edges.push((End::New(cs + 2), End::Old(v[j + 5]), t[j + 4]));
                patch.add_edges.push((End::New(cs), End::New(cs + 3), t[j + 2]));
                if created.len() == 5 {
                    patch.add_edges.push((End::New(cs + 2), End::New(cs + 4), l));
                }
                let before = running;
                let n_after = before.n - 4 + created.len();
                let m_after = before.appearances - 5 + created.len() as u64 + 1;
                running = TraceStats {
                    n: n_after,
                    appearances: m_after,
                    lifetime: before.lifetime,
                    p: m_after as i64 - n_after as i64 + 1,
                };
                let entry = Pending {
                    rule: "contract-backbone",
                    locus: format!(
                        "backbone {}..{}, times {:?}",
                        v[j],
                        v[j + 5],
                        &t[j..=j + 4]
                    ),
                    deleted: v[j + 1..=j + 4].to_vec(),
                    weights: created,
                    create_range: (cs, patch.create.len()),
                    add_range: (add_start, patch.add_edges.len()),
                    edges_removed: Vec::new(),
                    before,
                    after: running,
                };
                entry.check_monotone()?;
                pending.push(entry);
            }
        }
    }
    finalize(inst, &patch, pending, running, trace)
}

// ---- site-directed exact step ----
//
// Every qualifying edge cut leaves a local trace: the rules read only a
// bounded window of the backbone next to the cut edges, and the P side next
// to that window is a clean spine vertex with pendant trees. Scanning those
// local sites finds an applicable rewrite whenever the pairwise cut
// enumeration would, in time linear in the graph instead of quadratic in the
// blue edge count.

/// Per-vertex spine profile. A vertex can sit inside a cut's P side iff it
/// is clean; its `bad` neighbors (capped at three) are the ones whose G − v
/// component is not an all-blue pendant tree hanging at v, so they must be
/// covered by the two spine exceptions.
struct SpineProfile {
    clean: Vec<bool>,
    bad: Vec<Vec<VertexId>>,
}

fn spine_profile(
    under: &crate::graph::UnderlyingGraph,
    adj: &[Vec<VertexId>],
    dfs: &Dfs,
    sub: &[u64],
    source: VertexId,
) -> SpineProfile {
    let n = under.n();
    let mut clean = vec![true; n];
    clean[source] = false;
    for &e in under.edges() {
        if under.multiplicity(e) >= 2 {
            clean[e.u] = false;
            clean[e.v] = false;
        }
    }
    let mut bad = vec![Vec::new(); n];
    for v in 0..n {
        if !clean[v] {
            continue;
        }
        for &u in &adj[v] {
            // The parent side always holds the source; a back edge or a
            // dirty child subtree breaks the pendant shape.
            let pendant = dfs.parent[u] == v && sub[u] == 0;
            if !pendant && bad[v].len() < 3 {
                bad[v].push(u);
            }
        }
    }
    SpineProfile { clean, bad }
}

/// Ends usable as the outer vertex of a cut edge at spine vertex `b`, with
/// the spine neighbor `excl` excluded: the bad neighbors of `b` must all be
/// covered, otherwise any neighbor qualifies. At most `keep` survivors that
/// satisfy `pred` on the edge time, so callers can dodge distinctness
/// clashes among a bounded forbidden set.
fn outer_ends(
    under: &crate::graph::UnderlyingGraph,
    adj: &[Vec<VertexId>],
    profile: &SpineProfile,
    b: VertexId,
    excl: VertexId,
    keep: usize,
    pred: impl Fn(TimeStep) -> bool,
) -> Vec<(VertexId, TimeStep)> {
    let forced: Vec<VertexId> =
        profile.bad[b].iter().copied().filter(|&u| u != excl).collect();
    if forced.len() >= 2 {
        return Vec::new();
    }
    let t = |u: VertexId| under.appearances(Edge::new(b, u))[0];
    if let [a] = forced[..] {
        let ta = t(a);
        return if pred(ta) { vec![(a, ta)] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for &u in &adj[b] {
        if u == excl {
            continue;
        }
        let tu = t(u);
        if pred(tu) {
            out.push((u, tu));
            if out.len() == keep {
                break;
            }
        }
    }
    out
}

/// P side of a cut whose spine is `spine`: the spine plus every pendant
/// subtree hanging at it, minus the subtrees rooted at an outer endpoint.
fn spine_p_side(dfs: &Dfs, sub: &[u64], spine: &[VertexId], outer: &[VertexId]) -> Vec<VertexId> {
    let mut p_side = Vec::new();
    for &v in spine {
        p_side.push(v);
        for w in dfs.order[dfs.tin[v]..dfs.tout[v]]
            .iter()
            .copied()
            .filter(|&w| dfs.parent[w] == v && sub[w] == 0)
        {
            if spine.contains(&w) || outer.contains(&w) {
                continue;
            }
            p_side.extend_from_slice(&dfs.order[dfs.tin[w]..dfs.tout[w]]);
        }
    }
    p_side.sort_unstable();
    p_side
}

/// First applicable (rule, site) in rule order, located through local spine
/// sites. Agrees with the pairwise enumeration over all important cuts on
/// whether any rule applies; the chosen site may differ.
pub(super) fn sited_exact_step(inst: &Instance) -> Result<Option<(Instance, RuleApplication)>> {
    let n = inst.n();
    let under = inst.graph.underlying();
    let adj = under.adjacency();
    let dfs = dfs_from_source(n, &adj, inst.source);
    if dfs.order.len() != n {
        return Err(Error::InternalError("exact step ran on a disconnected graph".into()));
    }
    let sub = pendant_subtrees(&under, &dfs);

    // Trees rule: same sites the separation sweep uses, tried one at a time
    // so the trace matches one exact application per window.
    for site in separation_sites(&under, &adj, &dfs) {
        let mut p_side: Vec<VertexId> = vec![site.x];
        for &(_, lo, hi) in &site.branches {
            p_side.extend_from_slice(&dfs.order[lo..hi]);
        }
        p_side.sort_unstable();
        let q_side: Vec<VertexId> =
            (0..n).filter(|v| p_side.binary_search(v).is_err() || *v == site.x).collect();
        let sep = ImportantSeparation {
            p_side,
            q_side,
            cut_vertex: site.x,
            windows: site.aq.clone(),
        };
        for window in windows_from_times(&sep.windows) {
            match apply_rule_trees(inst, &sep, window) {
                Err(Error::NotApplicable) => continue,
                other => return other.map(Some),
            }
        }
    }

    let profile = spine_profile(&under, &adj, &dfs, &sub, inst.source);
    let t_of = |a: VertexId, b: VertexId| under.appearances(Edge::new(a, b))[0];
    let interior = |v: VertexId| profile.clean[v] && profile.bad[v].len() <= 2;
    // Spine edges, each taken in both orientations where a rule is one-sided.
    let spine_edges: Vec<Edge> = under
        .edges()
        .iter()
        .copied()
        .filter(|&e| interior(e.u) && interior(e.v))
        .collect();

    // Delete-edge: a valley t(ab) > t(bc) < t(cd) behind the cut {ab, cd}.
    for &e in &spine_edges {
        let (b, c) = (e.u, e.v);
        let tbc = t_of(b, c);
        let heads = outer_ends(&under, &adj, &profile, b, c, 3, |t| t > tbc);
        if heads.is_empty() {
            continue;
        }
        let tails = outer_ends(&under, &adj, &profile, c, b, 3, |t| t > tbc);
        let Some((a, ta, d, td)) = heads
            .iter()
            .find_map(|&(a, ta)| {
                tails.iter().find(|&&(d, _)| d != a).map(|&(d, td)| (a, ta, d, td))
            })
        else {
            continue;
        };
        let cut = ImportantEdgeCut {
            p_side: spine_p_side(&dfs, &sub, &[b, c], &[a, d]),
            q_side: Vec::new(),
            cut: [Edge::new(a, b), Edge::new(c, d)],
            backbone: vec![a, b, c, d],
            backbone_times: vec![ta, tbc, td],
        };
        return apply_rule_delete_edge(inst, &cut).map(Some);
    }

    // Merge-equal-times: t(ab) == t(bc) re-routes a past b; both directions.
    for &e in &spine_edges {
        for (b, c) in [(e.u, e.v), (e.v, e.u)] {
            let tbc = t_of(b, c);
            let heads = outer_ends(&under, &adj, &profile, b, c, 3, |t| t == tbc);
            if heads.is_empty() {
                continue;
            }
            let tails = outer_ends(&under, &adj, &profile, c, b, 3, |_| true);
            let Some((a, ta, d, td)) = heads
                .iter()
                .find_map(|&(a, ta)| {
                    tails.iter().find(|&&(d, _)| d != a).map(|&(d, td)| (a, ta, d, td))
                })
            else {
                continue;
            };
            let cut = ImportantEdgeCut {
                p_side: spine_p_side(&dfs, &sub, &[b, c], &[a, d]),
                q_side: Vec::new(),
                cut: [Edge::new(a, b), Edge::new(c, d)],
                backbone: vec![a, b, c, d],
                backbone_times: vec![ta, tbc, td],
            };
            return apply_rule_merge_equal_times(inst, &cut).map(Some);
        }
    }

    // Contract-backbone: five strictly increasing times over a four-vertex
    // clean spine v1..v4 with outer ends v0, v5.
    for &e in &spine_edges {
        for (v2, v3) in [(e.u, e.v), (e.v, e.u)] {
            let t23 = t_of(v2, v3);
            for &v1 in adj[v2].iter().filter(|&&u| u != v3) {
                if !interior(v1)
                    || t_of(v1, v2) >= t23
                    || profile.bad[v2].iter().any(|&u| u != v1 && u != v3)
                {
                    continue;
                }
                let t12 = t_of(v1, v2);
                for &v4 in adj[v3].iter().filter(|&&u| u != v2 && u != v1) {
                    if !interior(v4)
                        || t_of(v3, v4) <= t23
                        || profile.bad[v3].iter().any(|&u| u != v2 && u != v4)
                    {
                        continue;
                    }
                    let t34 = t_of(v3, v4);
                    let spine = [v1, v2, v3, v4];
                    let zeros = outer_ends(&under, &adj, &profile, v1, v2, 6, |t| t < t12);
                    let fives = outer_ends(&under, &adj, &profile, v4, v3, 6, |t| t > t34);
                    let pick = zeros.iter().find_map(|&(v0, t01)| {
                        if spine.contains(&v0) {
                            return None;
                        }
                        fives
                            .iter()
                            .find(|&&(v5, _)| v5 != v0 && !spine.contains(&v5))
                            .map(|&(v5, t45)| (v0, t01, v5, t45))
                    });
                    let Some((v0, t01, v5, t45)) = pick else { continue };
                    let cut = ImportantEdgeCut {
                        p_side: spine_p_side(&dfs, &sub, &spine, &[v0, v5]),
                        q_side: Vec::new(),
                        cut: [Edge::new(v0, v1), Edge::new(v4, v5)],
                        backbone: vec![v0, v1, v2, v3, v4, v5],
                        backbone_times: vec![t01, t12, t23, t34, t45],
                    };
                    return apply_rule_contract_backbone(inst, &cut).map(Some);
                }
            }
        }
    }
    Ok(None)
}

/// Runs separation sweeps to a fixpoint, then one chain sweep, until neither
/// finds anything. The cap is shared with the exact loop.
pub(super) fn accelerate(cur: &mut Instance, trace: &mut KernelTrace, cap: u64) -> Result<()> {
    loop {
        let mut any = false;
        while let Some(next) = sweep_separations(cur, trace)? {
            *cur = next;
            super::check_cap(trace, cap)?;
            any = true;
        }
        if let Some(next) = sweep_chains(cur, trace)? {
            *cur = next;
            super::check_cap(trace, cap)?;
            any = true;
        }
        if !any {
            return Ok(());
        }
    }
}
