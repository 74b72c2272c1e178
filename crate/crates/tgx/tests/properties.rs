//! Randomized invariants: apart from the generators, instances here are
//! arbitrary connected temporal graphs built by proptest, not the output of
//! this crate's own samplers, so the properties also cover shapes the seeded
//! suites never draw.

use std::collections::BTreeSet;

use proptest::prelude::*;

use tgx::format::{parse_instance, serialize_instance};
use tgx::{
    brute_walk_max, gen_random, kernelize, kernelize_q, solve_oracle, solve_search_tree,
    solve_via_kernel, Edge, Instance, TemporalGraph,
};

fn yes(inst: &Instance) -> bool {
    solve_oracle(inst).expect("oracle").max_weight >= inst.k
}

/// Connected instance: a spanning tree with arbitrary appearance times plus
/// a few extra appearances, arbitrary weights, source, and threshold.
fn arb_instance(max_n: usize, max_l: usize) -> impl Strategy<Value = Instance> {
    (2..=max_n, 1..=max_l)
        .prop_flat_map(|(n, l)| {
            (
                Just(n),
                Just(l),
                prop::collection::vec((any::<prop::sample::Index>(), 0..l), n - 1),
                prop::collection::vec(
                    (any::<prop::sample::Index>(), any::<prop::sample::Index>(), 0..l),
                    0..=8,
                ),
                prop::collection::vec(1..=20u64, n),
                any::<prop::sample::Index>(),
                prop::option::of(1..=200u64),
            )
        })
        .prop_map(|(n, l, tree, extras, weights, source, k)| {
            let mut snapshots: Vec<BTreeSet<Edge>> = vec![BTreeSet::new(); l];
            for (v, (parent, t)) in (1..n).zip(tree) {
                snapshots[t].insert(Edge::new(parent.index(v), v));
            }
            for (a, b, t) in extras {
                let (u, v) = (a.index(n), b.index(n));
                if u != v {
                    snapshots[t].insert(Edge::new(u, v));
                }
            }
            let snapshots: Vec<Vec<Edge>> =
                snapshots.into_iter().map(|s| s.into_iter().collect()).collect();
            let graph = TemporalGraph::new(n, snapshots).expect("valid by construction");
            let total: u64 = weights.iter().sum();
            let k = k.map(|k| k.min(total));
            Instance::new(graph, Some(weights), source.index(n), k).expect("valid instance")
        })
}

proptest! {
    #[test]
    fn kernelization_preserves_the_decision(inst in arb_instance(10, 6)) {
        let expected = yes(&inst);
        let (kern, trace) = kernelize(&inst).expect("kernelize");
        prop_assert_eq!(yes(&kern), expected);
        for app in &trace.applications {
            prop_assert!(app.after.p <= app.before.p, "{} raised p", app.rule);
        }
        let s = kern.stats();
        if s.p >= 1 {
            let p = s.p as u64;
            prop_assert!(s.n as u64 <= 324 * p);
            prop_assert!(s.edge_appearances <= 326 * p);
            prop_assert!(s.lifetime as u64 <= 326 * p);
        } else {
            prop_assert!(s.n <= 8);
        }
    }

    #[test]
    fn miss_count_kernelization_preserves_the_decision(inst in arb_instance(8, 5)) {
        let kern = kernelize_q(&inst).expect("q-kernelize");
        prop_assert_eq!(yes(&kern), yes(&inst));
        if kern.n() > 1 {
            let s = kern.stats();
            prop_assert!(s.n as u64 <= s.q + 1);
            prop_assert!(s.lifetime as u64 <= s.q);
        }
    }

    #[test]
    fn solvers_agree(inst in arb_instance(9, 5)) {
        let a = solve_oracle(&inst).expect("oracle").max_weight;
        prop_assert_eq!(solve_search_tree(&inst).expect("search tree").max_weight, a);
        prop_assert_eq!(brute_walk_max(&inst).expect("enumeration"), a);
        prop_assert_eq!(solve_via_kernel(&inst).expect("kernel route"), a >= inst.k);
    }

    #[test]
    fn certificates_validate_to_the_reported_weight(inst in arb_instance(9, 5)) {
        let opt = solve_oracle(&inst).expect("oracle");
        prop_assert_eq!(opt.certificate.validate(&inst).expect("sequence"), opt.max_weight);
        let walk = opt.certificate.to_walk(&inst).expect("walk");
        prop_assert_eq!(walk.validate(&inst).expect("walk steps"), opt.max_weight);
    }

    #[test]
    fn text_format_round_trips(inst in arb_instance(10, 6)) {
        let text = serialize_instance(&inst);
        let back = parse_instance(&text).expect("parse back");
        prop_assert_eq!(back, inst);
    }

    #[test]
    fn stats_are_internally_consistent(inst in arb_instance(10, 6)) {
        let s = inst.stats();
        prop_assert_eq!(s.p, s.edge_appearances as i64 - s.n as i64 + 1);
        prop_assert_eq!(s.q, (s.underlying_edges * s.lifetime) as u64 - s.edge_appearances);
        prop_assert!(s.gamma >= 1);
        prop_assert!(s.gamma <= s.n);
    }

    #[test]
    fn random_generator_hits_its_parameter(
        n in 2..=40usize,
        l in 1..=8usize,
        extra in 0..=12u64,
        w in 1..=9u64,
        seed in any::<u64>(),
    ) {
        let slots = (n * (n - 1) / 2 * l) as u64 - (n as u64 - 1);
        let inst = gen_random(n, l, extra.min(slots), w, seed).expect("generator");
        let s = inst.stats();
        prop_assert_eq!(s.p, extra.min(slots) as i64);
        prop_assert_eq!(s.lifetime, l);
        prop_assert!(inst.graph.underlying().is_connected());
        prop_assert!(inst.weights.iter().all(|&x| 1 <= x && x <= w));
    }
}
