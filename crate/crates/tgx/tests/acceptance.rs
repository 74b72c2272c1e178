//! End-to-end acceptance checks: solver agreement across independent
//! implementations, kernel size guarantees, trace monotonicity,
//! decomposition invariants, generator correctness against brute-force
//! referees, and the large-instance time budget. Each test covers one
//! guarantee and prints a `PASS` line with the volume it checked.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tgx::decomposition::{decompose, PendantKind};
use tgx::solvers::{solve_full_exploration, solve_tree, TemporalTree};
use tgx::verify::{
    brute_walk_values, has_hitting_set, has_multicolored_independent_set, sat_satisfiable,
};
use tgx::{
    compose_or, gen_from_hitting_set, gen_from_mis, gen_from_sat, gen_random, gen_two_stars,
    kernelize, kernelize_q, solve_oracle, solve_search_tree, solve_via_kernel, CnfFormula,
    ComponentShape, Edge, HittingSetInput, Instance, PartiteGraph, TemporalGraph, VertexId,
};

const SUITE_SEED: u64 = 0xacce97;
const SUITE_LEN: usize = 2000;

/// Decision the whole suite is about.
fn yes(inst: &Instance) -> bool {
    solve_oracle(inst).expect("oracle").max_weight >= inst.k
}

/// Replaces the threshold, keeping everything else.
fn with_k(inst: &Instance, k: u64) -> Instance {
    Instance::new(inst.graph.clone(), Some(inst.weights.clone()), inst.source, Some(k))
        .expect("same instance, new threshold")
}

/// A threshold that lands near the optimum often enough to produce both
/// answers, with occasional extremes.
fn pick_k(rng: &mut ChaCha8Rng, inst: &Instance) -> u64 {
    let opt = solve_oracle(inst).expect("oracle").max_weight;
    let total = inst.total_weight();
    match rng.gen_range(0..10) {
        0..=5 => ((opt as i64 + rng.gen_range(-2..=2)).max(1) as u64).min(total),
        6..=7 => rng.gen_range(1..=total),
        8 => 1,
        _ => total,
    }
}

/// The shared corpus: seeded random connected instances, up to 12 vertices,
/// lifetime up to 8, weights up to 10, extra appearances capped so the
/// parameter stays at most 2n.
fn suite() -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    (0..SUITE_LEN)
        .map(|_| {
            let n = rng.gen_range(2..=12usize);
            let l = rng.gen_range(1..=8usize);
            let slots = (n * (n - 1) / 2 * l - (n - 1)) as u64;
            let extra = rng.gen_range(0..=slots.min(2 * n as u64));
            let seed = rng.gen();
            let base = gen_random(n, l, extra, 10, seed).expect("generator");
            let k = pick_k(&mut rng, &base);
            with_k(&base, k)
        })
        .collect()
}

/// True when the edges form a forest on `n` vertices.
fn is_forest(n: usize, edges: impl Iterator<Item = Edge>) -> bool {
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for e in edges {
        let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

#[test]
fn kernel_assisted_solver_matches_oracle() {
    let start = Instant::now();
    let mut yeses = 0usize;
    for (i, inst) in suite().iter().enumerate() {
        let expected = yes(inst);
        let got = solve_via_kernel(inst).expect("kernel route");
        assert_eq!(got, expected, "instance {i} decided differently through the kernel");
        yeses += expected as usize;
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "suite took {elapsed:?}");
    println!(
        "PASS  kernelize-then-solve agrees with the oracle on {SUITE_LEN} instances \
         ({yeses} yes) in {elapsed:.2?}"
    );
}

#[test]
fn kernels_respect_size_bounds() {
    let mut worst = 0u64;
    for (i, inst) in suite().iter().enumerate() {
        let (kern, _) = kernelize(inst).expect("kernelize");
        let s = kern.stats();
        if s.p >= 1 {
            let p = s.p as u64;
            assert!(s.n as u64 <= 324 * p, "instance {i}: {} vertices at p = {p}", s.n);
            assert!(s.edge_appearances <= 326 * p, "instance {i}: {} appearances at p = {p}", s.edge_appearances);
            assert!(s.lifetime as u64 <= 326 * p, "instance {i}: lifetime {} at p = {p}", s.lifetime);
            worst = worst.max(s.n as u64 / p);
        } else {
            assert!(s.n <= 8, "instance {i}: tree kernel kept {} vertices", s.n);
        }
    }
    println!(
        "PASS  kernel bounds n <= 324p, appearances <= 326p, lifetime <= 326p \
         (n <= 8 at p = 0) hold on {SUITE_LEN} instances; worst n/p = {worst}"
    );
}

#[test]
fn traces_never_raise_the_parameter() {
    let mut applications = 0usize;
    for (i, inst) in suite().iter().enumerate() {
        let (_, trace) = kernelize(inst).expect("kernelize");
        for app in &trace.applications {
            assert!(
                app.after.p <= app.before.p,
                "instance {i}: {} at {} raised p from {} to {}",
                app.rule,
                app.locus,
                app.before.p,
                app.after.p
            );
            applications += 1;
        }
    }
    println!("PASS  parameter is monotone across {applications} logged rule applications");
}

#[test]
fn tree_solver_matches_walk_enumeration() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7265e5);
    let mut pairs = 0usize;
    for round in 0..1000 {
        let n = rng.gen_range(2..=9usize);
        let l = rng.gen_range(1..=6usize);
        let mut snapshots: Vec<Vec<Edge>> = vec![Vec::new(); l];
        for v in 1..n {
            let u = rng.gen_range(0..v);
            snapshots[rng.gen_range(0..l)].push(Edge::new(u, v));
        }
        let graph = TemporalGraph::new(n, snapshots).expect("tree graph");
        let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=10)).collect();
        let tree = TemporalTree::new(graph.clone()).expect("single-appearance tree");
        for x in 0..n {
            let probe =
                Instance::new(graph.clone(), Some(weights.clone()), x, Some(1)).expect("probe");
            let reference = brute_walk_values(&probe).expect("enumeration");
            for (y, &want) in reference.iter().enumerate() {
                let got = solve_tree(&tree, &weights, x, y).expect("tree solver");
                assert_eq!(got, want, "round {round}: walk {x} -> {y}");
                pairs += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "tree suite took {elapsed:?}");
    println!(
        "PASS  tree solver matches exhaustive enumeration on {pairs} vertex pairs \
         across 1000 trees in {elapsed:.2?}"
    );
}

#[test]
fn search_tree_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ea7c4);
    for round in 0..1000 {
        let n = rng.gen_range(2..=10usize);
        let l = rng.gen_range(1..=5usize);
        let slots = (n * (n - 1) / 2 * l - (n - 1)) as u64;
        let extra = rng.gen_range(0..=slots.min(2 * n as u64));
        let inst = gen_random(n, l, extra, 10, rng.gen()).expect("generator");
        let a = solve_oracle(&inst).expect("oracle").max_weight;
        let b = solve_search_tree(&inst).expect("search tree").max_weight;
        assert_eq!(a, b, "round {round}: oracle found {a}, search tree {b}");
    }
    println!("PASS  component search tree agrees with the oracle on 1000 instances");
}

#[test]
fn decomposition_invariants_hold() {
    for (i, inst) in suite().iter().enumerate() {
        let d = decompose(inst).expect("decompose");
        let under = inst.graph.underlying();
        let adj = under.adjacency();
        let p = inst.stats().p;

        let red: BTreeSet<Edge> =
            under.edges().iter().copied().filter(|&e| under.multiplicity(e) >= 2).collect();
        assert_eq!(d.red.iter().copied().collect::<BTreeSet<_>>(), red, "instance {i}: red set");

        // Feedback edge set: within budget, covers red, leaves a forest.
        let fes: BTreeSet<Edge> = d.fes.iter().copied().collect();
        assert!(fes.len() as i64 <= p, "instance {i}: feedback set larger than p");
        assert!(red.iter().all(|e| fes.contains(e)), "instance {i}: red edge outside feedback set");
        assert!(
            is_forest(inst.n(), under.edges().iter().copied().filter(|e| !fes.contains(e))),
            "instance {i}: cycle survives the feedback set"
        );

        // Core: holds the source and all red edges, small, and removing its
        // internal edges leaves a forest.
        let core: BTreeSet<VertexId> = d.core.iter().copied().collect();
        assert!(core.contains(&inst.source), "instance {i}: source outside the core");
        assert!(
            red.iter().all(|e| core.contains(&e.u) && core.contains(&e.v)),
            "instance {i}: red edge leaves the core"
        );
        let internal = |e: &Edge| core.contains(&e.u) && core.contains(&e.v);
        assert!(
            is_forest(inst.n(), under.edges().iter().copied().filter(|e| !internal(e))),
            "instance {i}: cycle avoids the core's internal edges"
        );
        assert!(
            core.len() as i64 <= (4 * p).max(1),
            "instance {i}: core of {} vertices at p = {p}",
            core.len()
        );

        // Pendants partition the rest; attachment counts match their kind
        // and no core vertex holds two edges into the same pendant.
        let mut covered: Vec<bool> = (0..inst.n()).map(|v| core.contains(&v)).collect();
        for pend in &d.pendants {
            let inside: BTreeSet<VertexId> = pend.vertices.iter().copied().collect();
            for &v in &pend.vertices {
                assert!(!covered[v], "instance {i}: vertex {v} claimed twice");
                covered[v] = true;
            }
            let mut attach = Vec::new();
            for &x in &d.core {
                let links = adj[x].iter().filter(|v| inside.contains(v)).count();
                assert!(links <= 1, "instance {i}: core vertex {x} holds {links} edges into one pendant");
                if links == 1 {
                    attach.push(x);
                }
            }
            assert_eq!(attach, pend.attachments, "instance {i}: attachment list");
            let want = match pend.kind {
                PendantKind::A => 1,
                PendantKind::B => 2,
            };
            assert_eq!(attach.len(), want, "instance {i}: attachment count for {:?}", pend.kind);
        }
        assert!(covered.iter().all(|&c| c), "instance {i}: vertex in neither core nor pendant");

        if p >= 1 {
            let q = d.q() as i64;
            assert!(q <= 4 * p - 1, "instance {i}: {q} two-attachment pendants at p = {p}");
            let inner = under.edges().iter().filter(|e| internal(e)).count() as i64;
            assert!(inner <= 5 * p - q - 1, "instance {i}: {inner} core edges at p = {p}, q = {q}");
        }
    }
    println!("PASS  decomposition invariants hold on {SUITE_LEN} instances");
}

/// Every nonempty clause over variables `1..=nv` with no variable negated
/// and asserted at once: each variable is absent, positive, or negative.
fn all_clauses(nv: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for code in 1..3usize.pow(nv as u32) {
        let mut clause = Vec::new();
        let mut c = code;
        for v in 1..=nv as i64 {
            match c % 3 {
                1 => clause.push(v),
                2 => clause.push(-v),
                _ => {}
            }
            c /= 3;
        }
        out.push(clause);
    }
    out
}

/// Calls `f` with every size-`size` index subset of `0..items`, increasing.
fn each_subset(items: usize, size: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, items: usize, left: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if left == 0 {
            f(acc);
            return;
        }
        for i in start..=items - left {
            acc.push(i);
            rec(i + 1, items, left - 1, acc, f);
            acc.pop();
        }
    }
    rec(0, items, size, &mut Vec::new(), f);
}

fn shape_for(index: usize) -> ComponentShape {
    if index % 2 == 0 {
        ComponentShape::Clique
    } else {
        ComponentShape::Star
    }
}

/// A small `d`-regular multipartite graph: either edgeless or a ring of
/// shifted perfect matchings between consecutive parts.
fn ring_partite(rng: &mut ChaCha8Rng) -> PartiteGraph {
    let k = rng.gen_range(2..=3usize);
    let s = rng.gen_range(1..=2usize);
    if rng.gen_range(0..5) == 0 {
        return PartiteGraph::new(vec![s; k], Vec::new(), 0).expect("edgeless");
    }
    let pairs: &[(usize, usize)] = if k == 2 { &[(0, 1)] } else { &[(0, 1), (1, 2), (2, 0)] };
    let mut edges = Vec::new();
    for &(a, b) in pairs {
        let shift = rng.gen_range(0..s);
        for off in 0..s {
            edges.push((a * s + off, b * s + (off + shift) % s));
        }
    }
    PartiteGraph::new(vec![s; k], edges, if k == 2 { 1 } else { 2 }).expect("matching ring")
}

#[test]
fn generators_encode_their_problems() {
    // Satisfiability: every formula with up to 3 variables and up to 4
    // distinct clauses, explorable iff satisfiable, few components per step.
    let mut formulas = 0usize;
    for nv in 1..=3usize {
        let clauses = all_clauses(nv);
        for size in 1..=4usize.min(clauses.len()) {
            each_subset(clauses.len(), size, &mut |pick| {
                let chosen: Vec<Vec<i64>> = pick.iter().map(|&i| clauses[i].clone()).collect();
                let f = CnfFormula::new(nv, chosen).expect("formula");
                let inst = gen_from_sat(&f, shape_for(formulas)).expect("sat instance");
                let (explorable, _) = solve_full_exploration(&inst).expect("oracle");
                assert_eq!(explorable, sat_satisfiable(&f), "formula #{formulas}");
                assert!(inst.stats().gamma <= 5, "formula #{formulas}: too many components");
                formulas += 1;
            });
        }
    }

    // Monotone satisfiability on two stars: same answer, and the promised
    // shape — two hubs joined by a bridge, every clause vertex hanging off
    // exactly one hub, lifetime twice the variable count.
    let mut rng = ChaCha8Rng::seed_from_u64(0x2b57a5);
    for round in 0..300 {
        let nv = rng.gen_range(1..=4usize);
        let m = rng.gen_range(1..=4usize);
        let mut clauses = Vec::with_capacity(m);
        for _ in 0..m {
            let negative = rng.gen_bool(0.5);
            let width = rng.gen_range(1..=3usize.min(nv));
            let mut vars: Vec<i64> = (1..=nv as i64).collect();
            for i in 0..width {
                let j = rng.gen_range(i..vars.len());
                vars.swap(i, j);
            }
            clauses.push(vars[..width].iter().map(|&v| if negative { -v } else { v }).collect());
        }
        let f = CnfFormula::new(nv, clauses).expect("monotone formula");
        let inst = gen_two_stars(&f).expect("two-star instance");
        let (explorable, _) = solve_full_exploration(&inst).expect("oracle");
        assert_eq!(explorable, sat_satisfiable(&f), "two stars, round {round}");
        let under = inst.graph.underlying();
        let (top, bot) = (m, m + 1);
        assert_eq!(inst.graph.lifetime(), 2 * nv, "round {round}: lifetime");
        assert_eq!(under.edges().len(), m + 1, "round {round}: edge count");
        assert!(under.edges().contains(&Edge::new(top, bot)), "round {round}: missing bridge");
        let adj = under.adjacency();
        for c in 0..m {
            assert_eq!(adj[c].len(), 1, "round {round}: clause {c} off both hubs");
        }
    }

    // Hitting set: explorable iff a hitting set within budget exists, with
    // the promised lifetime and threshold.
    let mut rng = ChaCha8Rng::seed_from_u64(0x817715);
    for round in 0..200 {
        let n = rng.gen_range(1..=3usize);
        let m = rng.gen_range(1..=2usize);
        let sets: Vec<Vec<usize>> = (0..m)
            .map(|_| {
                let mut s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
                if s.is_empty() {
                    s.push(rng.gen_range(0..n));
                }
                s
            })
            .collect();
        let k = rng.gen_range(1..=2usize);
        let h = HittingSetInput::new(n, sets, k).expect("hitting set input");
        let inst = gen_from_hitting_set(&h, shape_for(round)).expect("hitting set instance");
        let (explorable, _) = solve_full_exploration(&inst).expect("oracle");
        assert_eq!(explorable, has_hitting_set(&h), "hitting set, round {round}");
        assert_eq!(inst.graph.lifetime(), k * (n + 1) + 1, "round {round}: lifetime");
        assert_eq!(inst.k, (n + m + k * n) as u64, "round {round}: threshold");
    }

    // Independent set: threshold reached iff a multicolored independent set
    // exists, with the promised threshold and lifetime.
    let mut rng = ChaCha8Rng::seed_from_u64(0x0a15);
    for round in 0..150 {
        let g = ring_partite(&mut rng);
        let inst = gen_from_mis(&g, shape_for(round)).expect("independent set instance");
        let got = solve_oracle(&inst).expect("oracle").max_weight >= inst.k;
        assert_eq!(got, has_multicolored_independent_set(&g), "independent set, round {round}");
        let k = g.parts.len();
        assert_eq!(inst.k, (g.total() + k * g.degree) as u64, "round {round}: threshold");
        assert_eq!(inst.graph.lifetime(), 2 * k, "round {round}: lifetime");
    }

    // OR-composition: every ordered pair from a pool of known instances,
    // yes iff either side is, with the promised threshold and lifetime.
    let shapes: [(usize, usize, u64, bool); 4] =
        [(3, 2, 1, true), (4, 3, 2, true), (3, 2, 1, false), (4, 2, 0, false)];
    let bases: Vec<Instance> = shapes
        .iter()
        .enumerate()
        .map(|(idx, &(n, l, extra, _))| gen_random(n, l, extra, 4, 0xaa + idx as u64).expect("generator"))
        .collect();
    // A no-instance must miss its threshold by three plus the heaviest
    // source in the pool, or the composition's banked slack closes the gap.
    let margin = 3 + bases.iter().map(|b| b.weights[b.source]).max().expect("nonempty");
    let mut pool = Vec::new();
    for (base, &(.., want_yes)) in bases.iter().zip(&shapes) {
        let opt = solve_oracle(base).expect("oracle").max_weight;
        let k = if want_yes { opt } else { opt + margin };
        pool.push((with_k(base, k), want_yes));
    }
    let mut or_pairs = 0usize;
    for (a, a_yes) in &pool {
        for (b, b_yes) in &pool {
            let c = compose_or(&[a.clone(), b.clone()]).expect("composition");
            assert_eq!(yes(&c), a_yes | b_yes, "composition of {a_yes} and {b_yes}");
            assert_eq!(c.k, a.k.max(b.k) + 1, "composed threshold");
            assert_eq!(
                c.graph.lifetime(),
                a.graph.lifetime().max(b.graph.lifetime()) + 1,
                "composed lifetime"
            );
            or_pairs += 1;
        }
    }

    println!(
        "PASS  generators encode their source problems: {formulas} formulas, \
         300 monotone formulas, 200 hitting-set inputs, 150 partite graphs, \
         {or_pairs} compositions"
    );
}

/// Dense instance with a small miss count: every underlying edge starts
/// everywhere, then a few appearances are dropped.
fn dense_instance(rng: &mut ChaCha8Rng) -> Instance {
    let n = rng.gen_range(2..=6usize);
    let l = rng.gen_range(1..=4usize);
    let mut edges: BTreeSet<Edge> = (1..n).map(|v| Edge::new(rng.gen_range(0..v), v)).collect();
    for _ in 0..rng.gen_range(0..=3) {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            edges.insert(Edge::new(u, v));
        }
    }
    let mut snapshots: Vec<BTreeSet<Edge>> = vec![edges.clone(); l];
    let all: Vec<Edge> = edges.into_iter().collect();
    for _ in 0..rng.gen_range(0..=5) {
        let e = all[rng.gen_range(0..all.len())];
        let t = rng.gen_range(0..l);
        if snapshots.iter().filter(|s| s.contains(&e)).count() > 1 {
            snapshots[t].remove(&e);
        }
    }
    let snapshots: Vec<Vec<Edge>> = snapshots.into_iter().map(|s| s.into_iter().collect()).collect();
    let graph = TemporalGraph::new(n, snapshots).expect("dense graph");
    let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=10)).collect();
    Instance::new(graph, Some(weights), rng.gen_range(0..n), None).expect("dense instance")
}

#[test]
fn q_kernels_preserve_answers_and_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x93e2);
    let mut nontrivial = 0usize;
    for round in 0..500 {
        let base = if round % 2 == 0 {
            let n = rng.gen_range(2..=10usize);
            let l = rng.gen_range(1..=6usize);
            let slots = (n * (n - 1) / 2 * l - (n - 1)) as u64;
            let extra = rng.gen_range(0..=slots.min(2 * n as u64));
            gen_random(n, l, extra, 10, rng.gen()).expect("generator")
        } else {
            dense_instance(&mut rng)
        };
        let inst = with_k(&base, pick_k(&mut rng, &base));
        let kern = kernelize_q(&inst).expect("q-kernelize");
        assert_eq!(yes(&kern), yes(&inst), "round {round}: answer changed");
        if kern.n() > 1 {
            let s = kern.stats();
            assert!(s.n as u64 <= s.q + 1, "round {round}: {} vertices at q = {}", s.n, s.q);
            assert!(s.lifetime as u64 <= s.q, "round {round}: lifetime {} at q = {}", s.lifetime, s.q);
            nontrivial += 1;
        }
    }
    println!(
        "PASS  miss-count kernels preserve answers on 500 instances \
         ({nontrivial} nontrivial, bounded by n <= q + 1 and lifetime <= q)"
    );
}

#[test]
fn large_instance_kernelizes_in_budget() {
    let inst = gen_random(100_000, 40, 50, 8, 0xb16).expect("generator");
    assert_eq!(inst.stats().p, 50, "generator missed the requested parameter");
    let start = Instant::now();
    let (kern, _) = kernelize(&inst).expect("kernelize");
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "kernelization took {elapsed:?}");
    let s = kern.stats();
    if s.p >= 1 {
        assert!(s.n as u64 <= 324 * s.p as u64, "kernel kept {} vertices", s.n);
    } else {
        assert!(s.n <= 8, "kernel kept {} vertices", s.n);
    }
    println!(
        "PASS  100000-vertex instance kernelized to {} vertices in {elapsed:.2?}",
        s.n
    );
}
