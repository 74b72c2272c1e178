//! Hardness-construction instance generators.
//!
//! Each generator reduces a classical hard problem to an exploration
//! instance whose answer equals the answer of the source problem: SAT for
//! few snapshot components, monotone 3-SAT for two-star trees, hitting set
//! for short lifetimes, multicolored independent set for the weight
//! threshold, and an OR-composition that glues instances behind a selector
//! tree. A seeded random generator rounds the set out for fuzzing and
//! benchmarks.
//!
//! Component-based constructions describe each snapshot as a vertex
//! partition; [`ComponentShape`] picks whether a part becomes a clique (the
//! textbook realization) or a star (same per-snapshot connectivity, fewer
//! edge appearances).

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Instance, TemporalGraph, TimeStep, VertexId};

/// How a connected component is turned into snapshot edges. Exploration
/// only sees per-snapshot components, so the two shapes yield equivalent
/// instances; stars keep the appearance count linear in the part size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentShape {
    Clique,
    Star,
}

fn realize(parts: &[Vec<VertexId>], shape: ComponentShape) -> Vec<Edge> {
    let mut edges = Vec::new();
    for part in parts {
        match shape {
            ComponentShape::Clique => {
                for i in 0..part.len() {
                    for j in i + 1..part.len() {
                        edges.push(Edge::new(part[i], part[j]));
                    }
                }
            }
            ComponentShape::Star => {
                // Parts are sorted, so the hub is the least id.
                for &v in part.iter().skip(1) {
                    edges.push(Edge::new(part[0], v));
                }
            }
        }
    }
    edges
}

/// CNF formula with 1-based variable indices; literal `+i` / `-i` is the
/// positive / negative literal of variable `i`. No clause may contain a
/// variable together with its negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i64>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i64>>) -> Result<Self> {
        for clause in &clauses {
            let mut seen = BTreeSet::new();
            for &lit in clause {
                let var = lit.unsigned_abs() as usize;
                if lit == 0 || var > num_vars {
                    return Err(Error::BadLiteral { literal: lit, num_vars });
                }
                seen.insert(lit);
                if seen.contains(&-lit) {
                    return Err(Error::BadGeneratorInput(format!(
                        "clause contains both {var} and its negation"
                    )));
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// Every clause all-positive or all-negative.
    pub fn is_monotone(&self) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().all(|&l| l > 0) || c.iter().all(|&l| l < 0))
    }

    /// Parses DIMACS CNF: `c` comment lines, a `p cnf <vars> <clauses>`
    /// header, then whitespace-separated literals with `0` ending a clause.
    pub fn from_dimacs(text: &str) -> Result<Self> {
        let syntax = |line: usize, msg: &str| Error::Syntax { line, msg: msg.into() };
        let mut num_vars = None;
        let mut clauses: Vec<Vec<i64>> = Vec::new();
        let mut current: Vec<i64> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('c') {
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix('p') {
                if num_vars.is_some() {
                    return Err(syntax(line, "duplicate problem line"));
                }
                let fields: Vec<&str> = rest.split_whitespace().collect();
                if fields.len() != 3 || fields[0] != "cnf" {
                    return Err(syntax(line, "expected `p cnf <vars> <clauses>`"));
                }
                let vars = fields[1].parse().map_err(|_| syntax(line, "bad variable count"))?;
                num_vars = Some(vars);
                continue;
            }
            if num_vars.is_none() {
                return Err(syntax(line, "clause before the problem line"));
            }
            for tok in trimmed.split_whitespace() {
                let lit: i64 = tok.parse().map_err(|_| syntax(line, "bad literal"))?;
                if lit == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else {
                    current.push(lit);
                }
            }
        }
        if !current.is_empty() {
            clauses.push(current);
        }
        match num_vars {
            Some(v) => CnfFormula::new(v, clauses),
            None => Err(syntax(text.lines().count().max(1), "missing problem line")),
        }
    }
}

// Vertex ids for the SAT construction: clause j is vertex j; variable i owns
// the literal vertices pos/neg and the control vertex ctrl; one global
// control vertex closes the layout.
struct SatIds {
    m: usize,
}

impl SatIds {
    fn pos(&self, i: usize) -> VertexId {
        self.m + 3 * (i - 1)
    }
    fn neg(&self, i: usize) -> VertexId {
        self.m + 3 * (i - 1) + 1
    }
    fn ctrl(&self, i: usize) -> VertexId {
        self.m + 3 * (i - 1) + 2
    }
}

/// Per-snapshot vertex partitions of the SAT construction, in the fixed
/// order: unprocessed controls, idle clauses, variable component, negative
/// branch, processed controls. Empty parts are kept so the shrink/grow
/// structure is visible; `realize` skips them.
fn sat_components(f: &CnfFormula) -> Vec<[Vec<VertexId>; 5]> {
    let m = f.clauses.len();
    let n = f.num_vars;
    let ids = SatIds { m };
    let chat: VertexId = m + 3 * n;
    let clauses: Vec<VertexId> = (0..m).collect();
    let lits: Vec<VertexId> = (1..=n).flat_map(|i| [ids.pos(i), ids.neg(i)]).collect();
    let with_lit = |lit: i64| -> Vec<VertexId> {
        (0..m).filter(|&c| f.clauses[c].contains(&lit)).collect()
    };
    let sorted = |mut v: Vec<VertexId>| {
        v.sort_unstable();
        v
    };

    let mut out = Vec::with_capacity(2 * n + 1);
    for tau in 1..=2 * n + 1 {
        let comp = if tau == 1 {
            let c1 = sorted((1..=n).map(|i| ids.ctrl(i)).chain([chat]).collect());
            [c1, clauses.clone(), lits.clone(), Vec::new(), Vec::new()]
        } else if tau == 2 * n + 1 {
            // The control of the last variable crosses the variable
            // component together with the global control.
            let c3 = sorted(lits.iter().copied().chain([ids.ctrl(n), chat]).collect());
            let c5 = sorted((1..n).map(|i| ids.ctrl(i)).collect());
            [Vec::new(), clauses.clone(), c3, Vec::new(), c5]
        } else if tau % 2 == 0 {
            // Variable v is decided: its negative literal splits off with
            // the clauses it satisfies; the positive side keeps the rest.
            let v = tau / 2;
            let c1 = sorted((v..=n).map(|i| ids.ctrl(i)).chain([chat]).collect());
            let c2 = (0..m)
                .filter(|&c| {
                    !f.clauses[c].contains(&(v as i64)) && !f.clauses[c].contains(&-(v as i64))
                })
                .collect();
            let c3 = sorted(
                lits.iter()
                    .copied()
                    .filter(|&x| x != ids.neg(v))
                    .chain(with_lit(v as i64))
                    .collect(),
            );
            let c4 = sorted([ids.neg(v)].into_iter().chain(with_lit(-(v as i64))).collect());
            let c5 = sorted((1..v).map(|i| ids.ctrl(i)).collect());
            [c1, c2, c3, c4, c5]
        } else {
            // Between decisions the control of the just-decided variable
            // passes through the variable component.
            let v = (tau - 1) / 2;
            let c1 = sorted((v + 1..=n).map(|i| ids.ctrl(i)).chain([chat]).collect());
            let c3 = sorted(lits.iter().copied().chain([ids.ctrl(v)]).collect());
            let c5 = sorted((1..v).map(|i| ids.ctrl(i)).collect());
            [c1, clauses.clone(), c3, Vec::new(), c5]
        };
        out.push(comp);
    }
    out
}

/// Exploration instance that is fully explorable iff the formula is
/// satisfiable. At most five components per snapshot; lifetime `2n + 1`;
/// the source is the positive literal of variable 1; `k` asks for every
/// vertex.
pub fn gen_from_sat(f: &CnfFormula, shape: ComponentShape) -> Result<Instance> {
    if f.num_vars == 0 || f.clauses.is_empty() {
        return Err(Error::EmptyFormula);
    }
    let n_vertices = f.clauses.len() + 3 * f.num_vars + 1;
    let snapshots = sat_components(f)
        .iter()
        .map(|parts| realize(parts.as_slice(), shape))
        .collect();
    let graph = TemporalGraph::new(n_vertices, snapshots)?;
    Instance::new(graph, None, SatIds { m: f.clauses.len() }.pos(1), Some(n_vertices as u64))
}

/// Exploration instance over two stars joined by a bridge, fully explorable
/// iff the monotone formula (at most three literals per clause) is
/// satisfiable. Variables live in the timeline: odd steps offer the bridge,
/// even step `2v` attaches the clauses satisfied by either assignment of
/// variable `v` to their star center.
pub fn gen_two_stars(f: &CnfFormula) -> Result<Instance> {
    if f.num_vars == 0 || f.clauses.is_empty() {
        return Err(Error::EmptyFormula);
    }
    for (idx, clause) in f.clauses.iter().enumerate() {
        if clause.len() > 3 {
            return Err(Error::ClauseTooWide { clause: idx });
        }
        if !(clause.iter().all(|&l| l > 0) || clause.iter().all(|&l| l < 0)) {
            return Err(Error::NotMonotone { clause: idx });
        }
    }
    let m = f.clauses.len();
    let (top, bot) = (m, m + 1);
    let mut snapshots = Vec::with_capacity(2 * f.num_vars);
    for t in 1..=2 * f.num_vars {
        if t % 2 == 1 {
            snapshots.push(vec![Edge::new(top, bot)]);
        } else {
            let v = (t / 2) as i64;
            let mut edges = Vec::new();
            for (c, clause) in f.clauses.iter().enumerate() {
                if clause.contains(&v) {
                    edges.push(Edge::new(top, c));
                } else if clause.contains(&-v) {
                    edges.push(Edge::new(bot, c));
                }
            }
            snapshots.push(edges);
        }
    }
    let graph = TemporalGraph::new(m + 2, snapshots)?;
    Instance::new(graph, None, top, Some((m + 2) as u64))
}

/// Hitting-set input over a 0-based universe. Sets must be nonempty with
/// in-range elements; the budget is the number of phases of the generated
/// instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSetInput {
    pub universe: usize,
    pub sets: Vec<Vec<usize>>,
    pub budget: usize,
}

impl HittingSetInput {
    pub fn new(universe: usize, sets: Vec<Vec<usize>>, budget: usize) -> Result<Self> {
        if universe == 0 || budget == 0 {
            return Err(Error::BadGeneratorInput(
                "universe and budget must be positive".into(),
            ));
        }
        let mut sets = sets;
        for set in &mut sets {
            if set.is_empty() {
                return Err(Error::BadGeneratorInput("empty set".into()));
            }
            set.sort_unstable();
            set.dedup();
            if *set.last().expect("nonempty") >= universe {
                return Err(Error::BadGeneratorInput(format!(
                    "element {} outside the universe of size {universe}",
                    set.last().expect("nonempty")
                )));
            }
        }
        Ok(HittingSetInput { universe, sets, budget })
    }
}

/// Exploration instance with lifetime `k(n+1) + 1` that is fully explorable
/// iff a hitting set of size `k` exists. Each of the `k` phases walks the
/// universe past the source one element per step; staying on an element
/// while it carries its sets fixes one choice per phase, and a marching
/// copy of the universe forces the walk back afterwards. At most six
/// components per snapshot.
pub fn gen_from_hitting_set(h: &HittingSetInput, shape: ComponentShape) -> Result<Instance> {
    let (n, m, k) = (h.universe, h.sets.len(), h.budget);
    // x_j is vertex j - 1 (1-based j as in the phase arithmetic); set i is
    // n + i; the phase-i copy of x_j follows.
    let set_id = |i: usize| n + i;
    let ctrl_id = |i: usize, j: usize| n + m + (i - 1) * n + (j - 1);
    // The copy of x_j in phase i crosses the walk at these steps (0-based
    // time): in the shrinking component before, in the grown one after.
    let window = |i: usize, j: usize| -> (usize, usize) {
        if j < n {
            let first = (i - 1) * (n + 1) + j;
            (first, first + 1)
        } else {
            (i * (n + 1), i * (n + 1))
        }
    };
    let lifetime = k * (n + 1) + 1;
    let universe: Vec<VertexId> = (0..n).collect();
    let all_sets: Vec<VertexId> = (0..m).map(set_id).collect();

    let mut snapshots = Vec::with_capacity(lifetime);
    for t in 0..lifetime {
        let (mut c3, mut c4, mut c5): (Vec<VertexId>, Vec<VertexId>, Vec<VertexId>) =
            (Vec::new(), Vec::new(), Vec::new());
        if t == k * (n + 1) {
            c3.extend(&universe);
            c3.push(ctrl_id(k, n));
        } else {
            let i = t / (n + 1) + 1;
            let j = t % (n + 1);
            if j == 0 {
                c3.extend(&universe);
                if i >= 2 {
                    c3.push(ctrl_id(i - 1, n));
                }
            } else {
                c3.extend(universe.iter().filter(|&&x| x + 1 > j));
                if j < n {
                    c3.push(ctrl_id(i, j));
                }
                c4.push(j - 1);
                c4.extend(h.sets.iter().enumerate().filter(|(_, s)| s.contains(&(j - 1))).map(
                    |(idx, _)| set_id(idx),
                ));
                c5.extend(universe.iter().filter(|&&x| x + 1 < j));
                if j >= 2 {
                    c5.push(ctrl_id(i, j - 1));
                }
            }
        }
        let c2: Vec<VertexId> =
            all_sets.iter().copied().filter(|s| !c4.contains(s)).collect();
        let (mut c1, mut c6) = (Vec::new(), Vec::new());
        for i in 1..=k {
            for j in 1..=n {
                let (first, last) = window(i, j);
                if t < first {
                    c1.push(ctrl_id(i, j));
                } else if t > last {
                    c6.push(ctrl_id(i, j));
                }
            }
        }
        let mut parts = [c1, c2, c3, c4, c5, c6];
        for part in &mut parts {
            part.sort_unstable();
        }
        snapshots.push(realize(&parts, shape));
    }
    let n_vertices = n + m + k * n;
    let graph = TemporalGraph::new(n_vertices, snapshots)?;
    Instance::new(graph, None, 0, Some(n_vertices as u64))
}

/// `d`-regular `k`-partite graph; `parts` holds the part sizes and vertices
/// are numbered consecutively part by part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartiteGraph {
    pub parts: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub degree: usize,
}

impl PartiteGraph {
    pub fn new(parts: Vec<usize>, edges: Vec<(usize, usize)>, degree: usize) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::BadGeneratorInput("parts must be nonempty".into()));
        }
        let total: usize = parts.iter().sum();
        let g = PartiteGraph { parts, edges, degree };
        let mut seen = BTreeSet::new();
        let mut deg = vec![0usize; total];
        for &(u, v) in &g.edges {
            if u >= total || v >= total {
                return Err(Error::OutOfRangeVertex { vertex: u.max(v), n: total });
            }
            if g.part_of(u) == g.part_of(v) {
                return Err(Error::IntraPartEdge { u, v });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::BadGeneratorInput(format!("duplicate edge {{{u}, {v}}}")));
            }
            deg[u] += 1;
            deg[v] += 1;
        }
        if let Some(v) = (0..total).find(|&v| deg[v] != g.degree) {
            return Err(Error::NotRegular { d: g.degree, vertex: v, degree: deg[v] });
        }
        Ok(g)
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    fn part_of(&self, mut v: usize) -> usize {
        for (idx, &size) in self.parts.iter().enumerate() {
            if v < size {
                return idx;
            }
            v -= size;
        }
        unreachable!("vertex out of range")
    }

    fn part_range(&self, idx: usize) -> std::ops::Range<usize> {
        let start: usize = self.parts[..idx].iter().sum();
        start..start + self.parts[idx]
    }
}

/// Weight-threshold instance with lifetime `2k` whose answer is yes iff the
/// graph has a multicolored independent set. Each edge is subdivided; odd
/// steps merge consecutive parts so the walk can hop between part choices,
/// even steps open each part vertex to its private subdivision neighbors.
/// The threshold counts every part vertex plus `k * degree` subdivision
/// vertices, which only disjoint neighborhoods can deliver.
pub fn gen_from_mis(g: &PartiteGraph, shape: ComponentShape) -> Result<Instance> {
    let total = g.total();
    let k = g.parts.len();
    let sub_id = |e: usize| total + e;
    let mut snapshots = Vec::with_capacity(2 * k);
    for i in 1..=k {
        let merged: Vec<VertexId> = if i == 1 {
            g.part_range(0).collect()
        } else {
            g.part_range(i - 2).chain(g.part_range(i - 1)).collect()
        };
        snapshots.push(realize(&[merged], shape));
        let mut parts: Vec<Vec<VertexId>> = Vec::new();
        for v in g.part_range(i - 1) {
            let mut part = vec![v];
            part.extend(
                g.edges
                    .iter()
                    .enumerate()
                    .filter(|(_, &(a, b))| a == v || b == v)
                    .map(|(e, _)| sub_id(e)),
            );
            parts.push(part);
        }
        snapshots.push(realize(&parts, shape));
    }
    let graph = TemporalGraph::new(total + g.edges.len(), snapshots)?;
    let threshold = (total + k * g.degree) as u64;
    Instance::new(graph, None, 0, Some(threshold))
}

// Lifts an instance to the target threshold and lifetime: missing lifetime
// duplicates the final snapshot, missing threshold hangs unit pendants on
// the source, present in every snapshot. Both changes shift the optimum by
// exactly the padding weight.
fn pad_instance(inst: &Instance, k_target: u64, l_target: TimeStep) -> Result<Instance> {
    let mut snapshots: Vec<Vec<Edge>> = (1..=inst.graph.lifetime())
        .map(|t| inst.graph.snapshot(t).to_vec())
        .collect();
    while snapshots.len() < l_target {
        snapshots.push(snapshots.last().expect("lifetime >= 1").clone());
    }
    let delta = (k_target - inst.k) as usize;
    let n0 = inst.n();
    for d in 0..delta {
        for snap in &mut snapshots {
            snap.push(Edge::new(inst.source, n0 + d));
        }
    }
    let mut weights = inst.weights.clone();
    weights.extend(std::iter::repeat(1).take(delta));
    let graph = TemporalGraph::new(n0 + delta, snapshots)?;
    Instance::new(graph, Some(weights), inst.source, Some(k_target))
}

/// OR-composition: the result is a yes-instance iff some input is. The
/// inputs (a power of two of them, at least two) are padded to a common
/// threshold `k'` and lifetime `L'`, then hung under a balanced selector
/// tree of `2l - 1` fresh unit vertices; descending it costs the first
/// `log2(l)` steps and the leaf hands over to one input's source. The
/// output threshold is `k' + 2 log2(l) - 1` and the lifetime `L' + log2(l)`.
///
/// A walk can bank the whole selector tree and the source of every input
/// before committing to one, so an input meant as a no-instance should miss
/// its threshold by at least three plus the largest source weight among the
/// inputs.
pub fn compose_or(instances: &[Instance]) -> Result<Instance> {
    let l = instances.len();
    if l < 2 {
        return Err(Error::BadGeneratorInput("need at least two instances".into()));
    }
    if !l.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(l));
    }
    let k_target = instances.iter().map(|i| i.k).max().expect("nonempty");
    let l_target = instances.iter().map(|i| i.graph.lifetime()).max().expect("nonempty");
    let padded: Vec<Instance> = instances
        .iter()
        .map(|i| pad_instance(i, k_target, l_target))
        .collect::<Result<_>>()?;

    let x = l.trailing_zeros() as usize;
    let selectors = 2 * l - 1;
    let mut offsets = Vec::with_capacity(l);
    let mut next = selectors;
    for inst in &padded {
        offsets.push(next);
        next += inst.n();
    }

    // Selector node v sits at heap position v; leaves occupy l-1..2l-2.
    let level = |v: usize| (v + 1).ilog2() as usize;
    let mut snapshots: Vec<Vec<Edge>> = Vec::with_capacity(x + l_target);
    for t in 1..=x {
        let mut edges = Vec::new();
        for v in 0..l - 1 {
            if level(v) == t - 1 {
                edges.push(Edge::new(v, 2 * v + 1));
                edges.push(Edge::new(v, 2 * v + 2));
            }
        }
        if t == x {
            for (i, inst) in padded.iter().enumerate() {
                edges.push(Edge::new(l - 1 + i, offsets[i] + inst.source));
            }
        }
        snapshots.push(edges);
    }
    for t in 1..=l_target {
        let mut edges = Vec::new();
        for (i, inst) in padded.iter().enumerate() {
            edges.extend(
                inst.graph
                    .snapshot(t)
                    .iter()
                    .map(|e| Edge::new(e.u + offsets[i], e.v + offsets[i])),
            );
        }
        snapshots.push(edges);
    }

    let mut weights = vec![1u64; selectors];
    for inst in &padded {
        weights.extend_from_slice(&inst.weights);
    }
    let graph = TemporalGraph::new(next, snapshots)?;
    Instance::new(graph, Some(weights), 0, Some(k_target + 2 * x as u64 - 1))
}

/// Seeded random connected instance: a random spanning tree with one
/// appearance per edge, plus `extra` additional distinct appearances, so
/// the tree parameter of the output is exactly `extra`. Weights are uniform
/// in `1..=max_weight`; the threshold asks for everything.
pub fn gen_random(
    n: usize,
    lifetime: TimeStep,
    extra: u64,
    max_weight: u64,
    seed: u64,
) -> Result<Instance> {
    if n == 0 {
        return Err(Error::EmptyVertexSet);
    }
    if lifetime == 0 || max_weight == 0 {
        return Err(Error::BadGeneratorInput(
            "lifetime and maximum weight must be positive".into(),
        ));
    }
    let slots = (n as u128 * (n as u128 - 1) / 2) * lifetime as u128 - (n as u128 - 1);
    if extra as u128 > slots {
        return Err(Error::BadGeneratorInput(format!(
            "cannot place {extra} extra appearances in {slots} free slots"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present = std::collections::HashSet::new();
    let mut snapshots: Vec<Vec<Edge>> = vec![Vec::new(); lifetime];
    for v in 1..n {
        let u = rng.gen_range(0..v);
        let t = rng.gen_range(1..=lifetime);
        present.insert((Edge::new(u, v), t));
        snapshots[t - 1].push(Edge::new(u, v));
    }
    let mut added = 0;
    while added < extra {
        let v = rng.gen_range(1..n);
        let u = rng.gen_range(0..v);
        let t = rng.gen_range(1..=lifetime);
        if present.insert((Edge::new(u, v), t)) {
            snapshots[t - 1].push(Edge::new(u, v));
            added += 1;
        }
    }
    let weights = (0..n).map(|_| rng.gen_range(1..=max_weight)).collect();
    let source = rng.gen_range(0..n);
    let graph = TemporalGraph::new(n, snapshots)?;
    Instance::new(graph, Some(weights), source, None)
}
