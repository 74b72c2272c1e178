//! The structural rewrite rules.
//!
//! Each `apply_*` function takes an instance plus a location (a separation
//! with a window, or an edge cut) and returns the rewritten instance together
//! with its trace record, or `Error::NotApplicable` when the stated pattern
//! is absent. The location objects are trusted: callers obtain them from
//! `decomposition` on the same instance.

use std::collections::BTreeSet;

use crate::decomposition::{ImportantEdgeCut, ImportantSeparation};
use crate::error::{Error, Result};
use crate::graph::{Edge, Instance, TemporalGraph, TimeStep, VertexId};
use crate::solvers::{best_tree_walk_from, solve_tree, TemporalTree};

use super::trace::{RuleApplication, TraceStats};
use super::RuleWindow;

/// Trace stats without the full `Instance::stats` sweep (no component
/// counting), cheap enough to call per sweep on large instances.
pub(crate) fn stats_of(inst: &Instance) -> TraceStats {
    let n = inst.n();
    let m = inst.graph.edge_appearances();
    TraceStats {
        n,
        appearances: m,
        lifetime: inst.graph.lifetime(),
        p: m as i64 - n as i64 + 1,
    }
}

/// Endpoint of an edge added by a patch: a surviving old vertex or the i-th
/// created one.
#[derive(Debug, Clone, Copy)]
pub(crate) enum End {
    Old(VertexId),
    New(usize),
}

/// A batch of vertex deletions, vertex creations, and edge changes, applied
/// in one rebuild. Survivors keep their relative order; created vertices are
/// appended after them.
#[derive(Debug, Clone, Default)]
pub(crate) struct Patch {
    pub delete: Vec<VertexId>,
    pub create: Vec<u64>,
    pub remove_appearances: Vec<(Edge, TimeStep)>,
    pub add_edges: Vec<(End, End, TimeStep)>,
}

pub(crate) struct Applied {
    pub instance: Instance,
    pub created_ids: Vec<VertexId>,
    /// `old_to_new[old] = new`, `usize::MAX` for deleted vertices.
    pub old_to_new: Vec<VertexId>,
}

impl Applied {
    pub fn resolve(&self, e: &End) -> VertexId {
        match *e {
            End::Old(v) => self.old_to_new[v],
            End::New(i) => self.created_ids[i],
        }
    }
}

pub(crate) fn apply_patch(inst: &Instance, patch: &Patch) -> Result<Applied> {
    let n = inst.n();
    let mut dead = vec![false; n];
    for &v in &patch.delete {
        dead[v] = true;
    }
    let mut old_to_new = vec![usize::MAX; n];
    let mut next = 0;
    for (v, slot) in old_to_new.iter_mut().enumerate() {
        if !dead[v] {
            *slot = next;
            next += 1;
        }
    }
    if dead[inst.source] {
        return Err(Error::InternalError("patch deletes the source".into()));
    }
    let created_ids: Vec<VertexId> = (0..patch.create.len()).map(|i| next + i).collect();
    let resolve = |e: &End| -> VertexId {
        match *e {
            End::Old(v) => old_to_new[v],
            End::New(i) => created_ids[i],
        }
    };

    let l = inst.graph.lifetime();
    let removed: BTreeSet<(Edge, TimeStep)> = patch.remove_appearances.iter().copied().collect();
    let mut snapshots: Vec<Vec<Edge>> = vec![Vec::new(); l];
    for t in 1..=l {
        for &e in inst.graph.snapshot(t) {
            if dead[e.u] || dead[e.v] || removed.contains(&(e, t)) {
                continue;
            }
            snapshots[t - 1].push(Edge::new(old_to_new[e.u], old_to_new[e.v]));
        }
    }
    for (a, b, t) in &patch.add_edges {
        if *t == 0 || *t > l {
            return Err(Error::TimeStepOutOfRange { t: *t, l });
        }
        snapshots[t - 1].push(Edge::new(resolve(a), resolve(b)));
    }

    let mut weights: Vec<u64> = (0..n).filter(|&v| !dead[v]).map(|v| inst.weights[v]).collect();
    weights.extend_from_slice(&patch.create);
    let graph = TemporalGraph::new(next + patch.create.len(), snapshots)?;
    let instance = Instance::new(graph, Some(weights), old_to_new[inst.source], Some(inst.k))?;
    Ok(Applied { instance, created_ids, old_to_new })
}

/// Closed- and open-walk maxima of a one-appearance-per-edge tree, given as
/// an edge list with times. Returns `(w1, w2)` where `w1` is the best
/// `(x, x)`-walk weight and `w2` the best `(x, y)`-walk weight over all `y`.
/// Times are rank-compressed, which preserves both values.
pub(crate) fn tree_walk_bounds(
    weights: &[u64],
    verts: &[VertexId],
    edges: &[(VertexId, VertexId, TimeStep)],
    x: VertexId,
) -> Result<(u64, u64)> {
    let (tree, w, xi) = build_tree(weights, verts, edges, x)?;
    let w1 = solve_tree(&tree, &w, xi, xi)?
        .ok_or_else(|| Error::InternalError("closed tree walk vanished".into()))?;
    let (w2, _) = best_tree_walk_from(&tree, &w, xi)?;
    Ok((w1, w2))
}

/// Builds a `TemporalTree` over `verts` from `edges`, rank-compressing times.
/// Returns the tree, its weight vector, and the compact id of `x`.
pub(crate) fn build_tree(
    weights: &[u64],
    verts: &[VertexId],
    edges: &[(VertexId, VertexId, TimeStep)],
    x: VertexId,
) -> Result<(TemporalTree, Vec<u64>, VertexId)> {
    let mut sorted: Vec<VertexId> = verts.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let id_of = |v: VertexId| -> Result<usize> {
        sorted
            .binary_search(&v)
            .map_err(|_| Error::InternalError(format!("vertex {v} not in tree patch")))
    };
    let mut times: Vec<TimeStep> = edges.iter().map(|&(_, _, t)| t).collect();
    times.sort_unstable();
    times.dedup();
    let mut snapshots: Vec<Vec<Edge>> = vec![Vec::new(); times.len().max(1)];
    for &(u, v, t) in edges {
        let rank = times.binary_search(&t).expect("time came from the same list");
        snapshots[rank].push(Edge::new(id_of(u)?, id_of(v)?));
    }
    let graph = TemporalGraph::new(sorted.len(), snapshots)?;
    let tree = TemporalTree::new(graph)?;
    let w: Vec<u64> = sorted.iter().map(|&v| weights[v]).collect();
    Ok((tree, w, id_of(x)?))
}

/// Branches of the separation's tree side: connected components of
/// `G[P] - x`, each with the time of its unique attachment edge at `x`.
pub(crate) fn separation_branches(
    inst: &Instance,
    sep: &ImportantSeparation,
) -> Result<Vec<(TimeStep, Vec<VertexId>)>> {
    let n = inst.n();
    let x = sep.cut_vertex;
    let mut in_p = vec![false; n];
    for &v in &sep.p_side {
        in_p[v] = true;
    }
    let under = inst.graph.underlying();
    // Component labels over P - x.
    let mut label = vec![usize::MAX; n];
    let mut groups: Vec<Vec<VertexId>> = Vec::new();
    for &start in &sep.p_side {
        if start == x || label[start] != usize::MAX {
            continue;
        }
        let id = groups.len();
        let mut stack = vec![start];
        let mut group = vec![start];
        label[start] = id;
        while let Some(v) = stack.pop() {
            for &e in under.edges() {
                if !e.touches(v) {
                    continue;
                }
                let u = e.other(v);
                if u != x && in_p[u] && label[u] == usize::MAX {
                    label[u] = id;
                    group.push(u);
                    stack.push(u);
                }
            }
        }
        group.sort_unstable();
        groups.push(group);
    }
    let mut attach = vec![None; groups.len()];
    for &e in under.edges() {
        if !e.touches(x) {
            continue;
        }
        let y = e.other(x);
        if !in_p[y] {
            continue;
        }
        let times = under.appearances(e);
        if times.len() != 1 {
            return Err(Error::StructureViolation(format!(
                "tree-side edge {{{}, {}}} appears {} times",
                e.u,
                e.v,
                times.len()
            )));
        }
        let slot = &mut attach[label[y]];
        if slot.is_some() {
            return Err(Error::StructureViolation(format!(
                "branch of {x} attaches twice (at {y})"
            )));
        }
        *slot = Some(times[0]);
    }
    let mut out = Vec::with_capacity(groups.len());
    for (group, t) in groups.into_iter().zip(attach) {
        let t = t.ok_or_else(|| {
            Error::StructureViolation("separation branch without attachment".into())
        })?;
        out.push((t, group));
    }
    out.sort();
    Ok(out)
}

/// Replaces the window's tree by a pendant of at most two vertices whose
/// walk values match the tree's closed and open maxima.
pub(crate) fn apply_rule_trees(
    inst: &Instance,
    sep: &ImportantSeparation,
    window: RuleWindow,
) -> Result<(Instance, RuleApplication)> {
    let x = sep.cut_vertex;
    let branches = separation_branches(inst, sep)?;
    let selected: Vec<&(TimeStep, Vec<VertexId>)> =
        branches.iter().filter(|&&(t, _)| window.admits(t)).collect();
    let size: usize = 1 + selected.iter().map(|(_, g)| g.len()).sum::<usize>();
    if size < 4 {
        return Err(Error::NotApplicable);
    }

    let mut verts: Vec<VertexId> = vec![x];
    let mut edges: Vec<(VertexId, VertexId, TimeStep)> = Vec::new();
    let under = inst.graph.underlying();
    for &(_, ref group) in &selected {
        verts.extend_from_slice(group);
        for &v in group {
            for &e in under.edges() {
                // Take each tree edge once, from its lower endpoint inside
                // the branch; attachment edges are picked up at v = y.
                if e.touches(v) {
                    let u = e.other(v);
                    let inside = group.binary_search(&u).is_ok();
                    if (inside && u > v) || u == x {
                        edges.push((v, u, under.appearances(e)[0]));
                    }
                }
            }
        }
    }
    let (w1, w2) = tree_walk_bounds(&inst.weights, &verts, &edges, x)?;
    let wx = inst.weights[x];
    let wy = w1
        .checked_sub(wx)
        .filter(|&w| w > 0)
        .ok_or_else(|| Error::InternalError("trees rule: closed value not above w(x)".into()))?;
    let t_min = selected.iter().map(|&&(t, _)| t).min().expect("nonempty selection");
    let l = inst.graph.lifetime();

    let mut patch = Patch {
        delete: verts[1..].to_vec(),
        create: vec![wy],
        add_edges: vec![(End::Old(x), End::New(0), t_min)],
        ..Patch::default()
    };
    if w2 > w1 {
        patch.create.push(w2 - w1);
        patch.add_edges.push((End::New(0), End::New(1), l));
    }
    let before = stats_of(inst);
    let applied = apply_patch(inst, &patch)?;
    let record = RuleApplication {
        rule: "trees".into(),
        locus: format!("cut vertex {x}, window {window:?}"),
        deleted: patch.delete.clone(),
        created: applied.created_ids.iter().copied().zip(patch.create.clone()).collect(),
        edges_removed: Vec::new(),
        edges_added: resolve_added(&patch, &applied),
        before,
        after: stats_of(&applied.instance),
    };
    Ok((applied.instance, record))
}

fn resolve_added(patch: &Patch, applied: &Applied) -> Vec<(VertexId, VertexId, TimeStep)> {
    patch
        .add_edges
        .iter()
        .map(|(a, b, t)| (applied.resolve(a), applied.resolve(b), *t))
        .collect()
}

/// Deletes the valley appearance behind the cut: with backbone times
/// `t1 > t2 < t3` on the first three edges, no walk can use the middle edge.
/// If the deletion disconnects the graph, the side without the source goes.
pub(crate) fn apply_rule_delete_edge(
    inst: &Instance,
    cut: &ImportantEdgeCut,
) -> Result<(Instance, RuleApplication)> {
    let ts = &cut.backbone_times;
    if ts.len() < 3 || ts[0] <= ts[1] || ts[2] <= ts[1] {
        return Err(Error::NotApplicable);
    }
    let (a, b, t) = (cut.backbone[1], cut.backbone[2], ts[1]);
    let patch = Patch {
        remove_appearances: vec![(Edge::new(a, b), t)],
        ..Patch::default()
    };
    let before = stats_of(inst);
    let applied = apply_patch(inst, &patch)?;
    let mut out = applied.instance;
    let mut deleted = Vec::new();
    let comps = out.graph.underlying().components();
    if comps.len() > 1 {
        let keep = comps
            .iter()
            .find(|c| c.binary_search(&out.source).is_ok())
            .expect("source component exists");
        // Ids were unchanged by the appearance removal, so these are also
        // pre-application ids.
        deleted = (0..out.n()).filter(|v| keep.binary_search(v).is_err()).collect();
        let (kept, _) = out.induced(keep)?;
        out = kept;
    }
    let record = RuleApplication {
        rule: "delete-edge".into(),
        locus: format!("backbone edge {{{a}, {b}}} at time {t}"),
        deleted,
        created: Vec::new(),
        edges_removed: vec![(a, b, t)],
        edges_added: Vec::new(),
        before,
        after: stats_of(&out),
    };
    Ok((out, record))
}

/// With the first two backbone times equal, re-routes the cut edge past its
/// inner neighbour: the cut edge is deleted and an edge from its outer
/// endpoint to the second backbone vertex is added at the same time.
pub(crate) fn apply_rule_merge_equal_times(
    inst: &Instance,
    cut: &ImportantEdgeCut,
) -> Result<(Instance, RuleApplication)> {
    let ts = &cut.backbone_times;
    if ts[0] != ts[1] {
        return Err(Error::NotApplicable);
    }
    let (v0, v1, v2, t) = (cut.backbone[0], cut.backbone[1], cut.backbone[2], ts[0]);
    let patch = Patch {
        remove_appearances: vec![(Edge::new(v0, v1), t)],
        add_edges: vec![(End::Old(v0), End::Old(v2), t)],
        ..Patch::default()
    };
    let before = stats_of(inst);
    let applied = apply_patch(inst, &patch)?;
    let record = RuleApplication {
        rule: "merge-equal-times".into(),
        locus: format!("cut edge {{{v0}, {v1}}} at time {t}"),
        deleted: Vec::new(),
        created: Vec::new(),
        edges_removed: vec![(v0, v1, t)],
        edges_added: vec![(v0, v2, t)],
        before,
        after: stats_of(&applied.instance),
    };
    Ok((applied.instance, record))
}

/// Walk maxima needed by the backbone contraction: closed walks at both
/// ends, the crossing walk, and the one-way maxima from each end
/// (`w0` taken in the tree minus the far endpoint).
pub(crate) struct BackboneValues {
    pub w1: u64,
    pub w2: u64,
    pub w3: u64,
    pub w0: u64,
    pub w5: u64,
}

pub(crate) fn backbone_values(
    weights: &[u64],
    verts: &[VertexId],
    edges: &[(VertexId, VertexId, TimeStep)],
    v0: VertexId,
    v5: VertexId,
) -> Result<BackboneValues> {
    let (tree, w, i0) = build_tree(weights, verts, edges, v0)?;
    let i5 = {
        let mut sorted = verts.to_vec();
        sorted.sort_unstable();
        sorted.binary_search(&v5).expect("v5 in verts")
    };
    let missing = || Error::InternalError("backbone walk vanished".into());
    let w1 = solve_tree(&tree, &w, i0, i0)?.ok_or_else(missing)?;
    let w2 = solve_tree(&tree, &w, i0, i5)?.ok_or_else(missing)?;
    let w3 = solve_tree(&tree, &w, i5, i5)?.ok_or_else(missing)?;
    let (w5, _) = best_tree_walk_from(&tree, &w, i5)?;
    // w0 ranges over walks avoiding v5.
    let sub_verts: Vec<VertexId> = verts.iter().copied().filter(|&v| v != v5).collect();
    let sub_edges: Vec<(VertexId, VertexId, TimeStep)> =
        edges.iter().copied().filter(|&(a, b, _)| a != v5 && b != v5).collect();
    let (t0, w0v, j0) = build_tree(weights, &sub_verts, &sub_edges, v0)?;
    let (w0, _) = best_tree_walk_from(&t0, &w0v, j0)?;
    Ok(BackboneValues { w1, w2, w3, w0, w5 })
}

/// Gadget weights for a backbone contraction: `[u1, u2, u3, y1]` plus a
/// fifth entry for the far pendant when the one-way maximum from `v5`
/// exceeds the closed one.  The tree spans `verts`/`edges`.
pub(crate) fn contract_weights(
    weights: &[u64],
    verts: &[VertexId],
    edges: &[(VertexId, VertexId, TimeStep)],
    v0: VertexId,
    v5: VertexId,
) -> Result<Vec<u64>> {
    let vals = backbone_values(weights, verts, edges, v0, v5)?;
    let internal = |what: &str| Error::InternalError(format!("contraction: {what}"));
    let wu1 = vals
        .w1
        .checked_sub(weights[v0])
        .filter(|&w| w > 0)
        .ok_or_else(|| internal("w1 not above w(v0)"))?;
    let wu3 = vals
        .w3
        .checked_sub(weights[v5])
        .filter(|&w| w > 0)
        .ok_or_else(|| internal("w3 not above w(v5)"))?;
    let wu2 = vals
        .w2
        .checked_sub(vals.w1)
        .and_then(|w| w.checked_sub(vals.w3))
        .filter(|&w| w > 0)
        .ok_or_else(|| internal("w2 not above w1 + w3"))?;
    let wy1 = vals
        .w0
        .checked_sub(vals.w1)
        .and_then(|w| w.checked_sub(wu2))
        .filter(|&w| w > 0)
        .ok_or_else(|| internal("w0 not above w1 + w(u2)"))?;
    let mut out = vec![wu1, wu2, wu3, wy1];
    if vals.w5 > vals.w3 {
        out.push(vals.w5 - vals.w3);
    }
    Ok(out)
}

/// Contracts a five-edge strictly increasing backbone to a four-edge gadget
/// with matching walk maxima in every direction.
pub(crate) fn apply_rule_contract_backbone(
    inst: &Instance,
    cut: &ImportantEdgeCut,
) -> Result<(Instance, RuleApplication)> {
    let ts = &cut.backbone_times;
    if ts.len() != 5 || !ts.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::NotApplicable);
    }
    let v0 = cut.backbone[0];
    let v5 = cut.backbone[5];
    // T ranges over P plus both cut endpoints (any v0-v5 edge would be a
    // third cut edge, so no exclusion is needed).
    let mut verts: Vec<VertexId> = cut.p_side.clone();
    verts.push(v0);
    verts.push(v5);
    verts.sort_unstable();
    let under = inst.graph.underlying();
    let mut in_t = vec![false; inst.n()];
    for &v in &verts {
        in_t[v] = true;
    }
    let mut edges: Vec<(VertexId, VertexId, TimeStep)> = Vec::new();
    for &e in under.edges() {
        if in_t[e.u] && in_t[e.v] && !(e.touches(v0) && e.touches(v5)) {
            edges.push((e.u, e.v, under.appearances(e)[0]));
        }
    }
    let created = contract_weights(&inst.weights, &verts, &edges, v0, v5)?;
    let l = inst.graph.lifetime();

    let mut patch = Patch {
        delete: cut.p_side.clone(),
        create: created.clone(),
        add_edges: vec![
            (End::Old(v0), End::New(0), ts[0]),
            (End::New(0), End::New(1), ts[1]),
            (End::New(1), End::New(2), ts[3]),
            (End::New(2), End::Old(v5), ts[4]),
            (End::New(0), End::New(3), ts[2]),
        ],
        ..Patch::default()
    };
    if created.len() == 5 {
        patch.add_edges.push((End::New(2), End::New(4), l));
    }
    let before = stats_of(inst);
    let applied = apply_patch(inst, &patch)?;
    let record = RuleApplication {
        rule: "contract-backbone".into(),
        locus: format!("backbone {v0}..{v5}, times {ts:?}"),
        deleted: patch.delete.clone(),
        created: applied.created_ids.iter().copied().zip(patch.create.clone()).collect(),
        edges_removed: Vec::new(),
        edges_added: resolve_added(&patch, &applied),
        before,
        after: stats_of(&applied.instance),
    };
    Ok((applied.instance, record))
}

/// Removes edgeless snapshots and renumbers the remaining times; a graph
/// whose snapshots are all empty keeps one empty snapshot.
pub(crate) fn apply_rule_drop_empty_snapshots(inst: &Instance) -> Result<(Instance, Option<RuleApplication>)> {
    let l = inst.graph.lifetime();
    let kept: Vec<TimeStep> = (1..=l).filter(|&t| !inst.graph.snapshot(t).is_empty()).collect();
    if kept.len() == l || (kept.is_empty() && l == 1) {
        return Ok((inst.clone(), None));
    }
    let snapshots: Vec<Vec<Edge>> = if kept.is_empty() {
        vec![Vec::new()]
    } else {
        kept.iter().map(|&t| inst.graph.snapshot(t).to_vec()).collect()
    };
    let before = stats_of(inst);
    let graph = TemporalGraph::new(inst.n(), snapshots)?;
    let out = Instance::new(graph, Some(inst.weights.clone()), inst.source, Some(inst.k))?;
    let record = RuleApplication {
        rule: "drop-empty-snapshots".into(),
        locus: format!("lifetime {} -> {}", l, kept.len().max(1)),
        deleted: Vec::new(),
        created: Vec::new(),
        edges_removed: Vec::new(),
        edges_added: Vec::new(),
        before,
        after: stats_of(&out),
    };
    Ok((out, Some(record)))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Divides the threshold and all weights by their common gcd. Identity when
/// the gcd is one.
pub(crate) fn apply_reduce_weights(inst: &Instance) -> Result<(Instance, Option<RuleApplication>)> {
    let g = inst.weights.iter().fold(inst.k, |acc, &w| gcd(acc, w));
    if g <= 1 {
        return Ok((inst.clone(), None));
    }
    let before = stats_of(inst);
    let weights: Vec<u64> = inst.weights.iter().map(|&w| w / g).collect();
    let out = Instance::new(inst.graph.clone(), Some(weights), inst.source, Some(inst.k / g))?;
    let record = RuleApplication {
        rule: "reduce-weights".into(),
        locus: format!("divided by {g}"),
        deleted: Vec::new(),
        created: Vec::new(),
        edges_removed: Vec::new(),
        edges_added: Vec::new(),
        before,
        after: stats_of(&out),
    };
    Ok((out, Some(record)))
}

/// Whether every weight and the threshold fit the representation bound
/// `2^(4 r^3) * (r + 1)^(r (r + 2))` with `r = n + 1`; beyond roughly n = 3
/// the bound exceeds any u64, so this only bites on artificial inputs.
pub fn weights_within_size_bound(inst: &Instance) -> bool {
    let r = inst.n() as f64 + 1.0;
    let bound_bits = 4.0 * r.powi(3) + r * (r + 2.0) * (r + 1.0).log2();
    if bound_bits >= 64.0 {
        return true;
    }
    let fits = |w: u64| (64 - w.leading_zeros()) as f64 <= bound_bits;
    fits(inst.k) && inst.weights.iter().all(|&w| fits(w))
}
