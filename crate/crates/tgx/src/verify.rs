//! Differential verification: seeded random inputs, an exhaustive referee,
//! and one suite per component. A suite stops at the first disagreement and
//! reports it with the offending instance serialized, so a red run is
//! directly reproducible.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::serialize_instance;
use crate::generators::{
    gen_from_hitting_set, gen_from_mis, gen_from_sat, gen_random, gen_two_stars, CnfFormula,
    ComponentShape, HittingSetInput, PartiteGraph,
};
use crate::graph::{Edge, Instance, TemporalGraph, TimeStep};
use crate::kernelizer::{kernelize, kernelize_q};
use crate::solvers::{solve_oracle, tree_walk_values, TemporalTree};

const BRUTE_NODE_CAP: u64 = 50_000_000;

struct Brute<'a> {
    comps: &'a [Vec<u64>],
    weights: &'a [u64],
    values: Vec<Option<u64>>,
    nodes: u64,
}

impl Brute<'_> {
    fn weight(&self, mut mask: u64) -> u64 {
        let mut w = 0;
        while mask != 0 {
            w += self.weights[mask.trailing_zeros() as usize];
            mask &= mask - 1;
        }
        w
    }

    fn rec(&mut self, t: usize, here: u64, visited: u64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > BRUTE_NODE_CAP {
            return Err(Error::BudgetExceeded {
                estimate: self.nodes as u128,
                budget: BRUTE_NODE_CAP as u128,
            });
        }
        if t == self.comps.len() {
            let w = self.weight(visited);
            let mut mask = here;
            while mask != 0 {
                let v = mask.trailing_zeros() as usize;
                if self.values[v].is_none_or(|old| w > old) {
                    self.values[v] = Some(w);
                }
                mask &= mask - 1;
            }
            return Ok(());
        }
        for &c in &self.comps[t] {
            if c & here != 0 {
                self.rec(t + 1, c, visited | c)?;
            }
        }
        Ok(())
    }
}

/// `values[y]` = maximum weight over walks from the source ending at `y`,
/// by exhaustive search over component sequences: one snapshot component
/// per step, consecutive picks sharing a vertex, the first containing the
/// source. No pruning beyond feasibility — this is the referee the solvers
/// and rules are judged against, so it stays naive on purpose.
pub fn brute_walk_values(inst: &Instance) -> Result<Vec<Option<u64>>> {
    let n = inst.n();
    if n > 64 {
        return Err(Error::InstanceTooLargeForOracle { n, limit: 64 });
    }
    let comps: Vec<Vec<u64>> = (1..=inst.graph.lifetime())
        .map(|t| {
            inst.graph
                .connected_components(t)
                .iter()
                .map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v))
                .collect()
        })
        .collect();
    let mut brute = Brute {
        comps: &comps,
        weights: &inst.weights,
        values: vec![None; n],
        nodes: 0,
    };
    let start = 1u64 << inst.source;
    brute.rec(0, start, start)?;
    Ok(brute.values)
}

/// Maximum collectable weight over all walks from the source, exhaustively.
pub fn brute_walk_max(inst: &Instance) -> Result<u64> {
    Ok(brute_walk_values(inst)?
        .into_iter()
        .flatten()
        .max()
        .expect("staying at the source is always a walk"))
}

/// Truth-table satisfiability check.
pub fn sat_satisfiable(f: &CnfFormula) -> bool {
    assert!(f.num_vars < 30, "truth table check needs a small formula");
    (0u64..1 << f.num_vars).any(|mask| {
        f.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let v = lit.unsigned_abs() as usize - 1;
                (mask >> v & 1 == 1) == (lit > 0)
            })
        })
    })
}

/// Subset enumeration over the universe.
pub fn has_hitting_set(h: &HittingSetInput) -> bool {
    assert!(h.universe < 30, "subset check needs a small universe");
    (0u64..1 << h.universe).any(|mask| {
        mask.count_ones() as usize <= h.budget
            && h.sets.iter().all(|s| s.iter().any(|&x| mask >> x & 1 == 1))
    })
}

/// One-vertex-per-part backtracking search.
pub fn has_multicolored_independent_set(g: &PartiteGraph) -> bool {
    let mut starts = Vec::with_capacity(g.parts.len() + 1);
    starts.push(0);
    for &size in &g.parts {
        starts.push(starts.last().expect("nonempty") + size);
    }
    fn rec(g: &PartiteGraph, starts: &[usize], part: usize, chosen: &mut Vec<usize>) -> bool {
        if part == g.parts.len() {
            return true;
        }
        for v in starts[part]..starts[part + 1] {
            let clash = chosen
                .iter()
                .any(|&u| g.edges.contains(&(u, v)) || g.edges.contains(&(v, u)));
            if !clash {
                chosen.push(v);
                if rec(g, starts, part + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    rec(g, &starts, 0, &mut Vec::new())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    KernelP,
    KernelQ,
    TreeSolver,
    Generators,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kernel-p" => Ok(Suite::KernelP),
            "kernel-q" => Ok(Suite::KernelQ),
            "tree-solver" => Ok(Suite::TreeSolver),
            "generators" => Ok(Suite::Generators),
            other => Err(Error::BadGeneratorInput(format!(
                "unknown suite `{other}` (kernel-p, kernel-q, tree-solver, generators)"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::KernelP => "kernel-p",
            Suite::KernelQ => "kernel-q",
            Suite::TreeSolver => "tree-solver",
            Suite::Generators => "generators",
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Counterexample {
    /// Offending instance in the text format, ready to re-run.
    pub instance: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub trials: u64,
    pub agreements: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    /// How often each reduction rule fired across the run.
    pub rule_applications: BTreeMap<String, u64>,
    /// Largest observed kernel size relative to its parameter.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_kernel_ratio: Option<f64>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    fn new(suite: Suite, trials: u64) -> Self {
        VerifyReport {
            suite: suite.to_string(),
            trials,
            agreements: 0,
            counterexample: None,
            rule_applications: BTreeMap::new(),
            max_kernel_ratio: None,
        }
    }
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

// Connected instance with uniform weights and a threshold near the optimum
// half of the time, so both answers and tight boundaries occur.
fn random_threshold_instance(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    max_l: TimeStep,
) -> Result<Instance> {
    let n = rng.gen_range(2..=max_n.max(2));
    let l = rng.gen_range(1..=max_l.max(1));
    let slots = (n as u64 * (n as u64 - 1) / 2) * l as u64 - (n as u64 - 1);
    let extra = rng.gen_range(0..=(2 * n as u64).min(slots));
    let inst = gen_random(n, l, extra, 10, rng.gen())?;
    let total = inst.total_weight();
    let k = if rng.gen_bool(0.5) {
        let opt = brute_walk_max(&inst)?;
        opt.saturating_add_signed(rng.gen_range(-2..=2)).clamp(1, total)
    } else {
        rng.gen_range(1..=total)
    };
    Instance::new(inst.graph, Some(inst.weights), inst.source, Some(k))
}

fn run_kernel_suite(
    suite: Suite,
    trials: u64,
    seed: u64,
    max_n: usize,
    max_l: TimeStep,
) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerifyReport::new(suite, trials);
    for _ in 0..trials {
        let inst = random_threshold_instance(&mut rng, max_n, max_l)?;
        let expected = brute_walk_max(&inst)? >= inst.k;
        let (kernel, got) = match suite {
            Suite::KernelP => {
                let (kernel, trace) = kernelize(&inst)?;
                for app in &trace.applications {
                    *report.rule_applications.entry(app.rule.clone()).or_default() += 1;
                }
                let got = solve_oracle(&kernel)?.max_weight >= kernel.k;
                (kernel, got)
            }
            Suite::KernelQ => {
                let kernel = kernelize_q(&inst)?;
                let got = solve_oracle(&kernel)?.max_weight >= kernel.k;
                (kernel, got)
            }
            _ => unreachable!("kernel suite"),
        };
        let param = match suite {
            Suite::KernelP => inst.stats().p,
            _ => inst.stats().q as i64,
        };
        if param >= 1 {
            let ratio = kernel.n() as f64 / param as f64;
            report.max_kernel_ratio =
                Some(report.max_kernel_ratio.map_or(ratio, |r: f64| r.max(ratio)));
        }
        if got == expected {
            report.agreements += 1;
        } else {
            report.counterexample = Some(Counterexample {
                instance: serialize_instance(&inst),
                expected: yes_no(expected),
                got: yes_no(got),
            });
            break;
        }
    }
    Ok(report)
}

// Random single-appearance temporal tree with its edge times and weights.
fn random_tree_instance(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    max_l: TimeStep,
) -> Result<Instance> {
    let n = rng.gen_range(2..=max_n.max(2));
    let l = rng.gen_range(1..=max_l.max(1));
    let mut snapshots: Vec<Vec<Edge>> = vec![Vec::new(); l];
    for v in 1..n {
        let u = rng.gen_range(0..v);
        snapshots[rng.gen_range(0..l)].push(Edge::new(u, v));
    }
    let weights = (0..n).map(|_| rng.gen_range(1..=10)).collect();
    let graph = TemporalGraph::new(n, snapshots)?;
    Instance::new(graph, Some(weights), rng.gen_range(0..n), None)
}

fn run_tree_suite(
    trials: u64,
    seed: u64,
    max_n: usize,
    max_l: TimeStep,
) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerifyReport::new(Suite::TreeSolver, trials);
    'trial: for _ in 0..trials {
        let inst = random_tree_instance(&mut rng, max_n, max_l)?;
        let expected = brute_walk_values(&inst)?;
        let tree = TemporalTree::new(inst.graph.clone())?;
        let got = tree_walk_values(&tree, &inst.weights, inst.source)?;
        for y in 0..inst.n() {
            if expected[y] != got[y] {
                report.counterexample = Some(Counterexample {
                    instance: serialize_instance(&inst),
                    expected: format!("walk to {y}: {:?}", expected[y]),
                    got: format!("walk to {y}: {:?}", got[y]),
                });
                break 'trial;
            }
        }
        report.agreements += 1;
    }
    Ok(report)
}

fn random_cnf(rng: &mut ChaCha8Rng, monotone: bool) -> CnfFormula {
    let n = rng.gen_range(1..=3usize);
    let m = rng.gen_range(1..=3usize);
    let clauses = (0..m)
        .map(|_| {
            let width = rng.gen_range(1..=3usize.min(n));
            let sign: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
            let mut vars: Vec<usize> = (1..=n).collect();
            vars.shuffle(rng);
            vars[..width]
                .iter()
                .map(|&v| {
                    let s = if monotone || rng.gen_bool(0.5) { sign } else { -sign };
                    v as i64 * s
                })
                .collect()
        })
        .collect();
    CnfFormula::new(n, clauses).expect("clauses use each variable once")
}

// k equal parts arranged in a cycle of random perfect matchings: every
// vertex gets degree 2 for three or more parts, 1 for two.
fn random_partite(rng: &mut ChaCha8Rng) -> PartiteGraph {
    let k = rng.gen_range(2..=3usize);
    let s = rng.gen_range(1..=2usize);
    let mut edges = Vec::new();
    let pairs = if k == 2 { 1 } else { k };
    for a in 0..pairs {
        let b = (a + 1) % k;
        let mut image: Vec<usize> = (0..s).collect();
        image.shuffle(rng);
        for v in 0..s {
            edges.push((a * s + v, b * s + image[v]));
        }
    }
    PartiteGraph::new(vec![s; k], edges, if k == 2 { 1 } else { 2 })
        .expect("matching cycle is regular")
}

fn run_generator_suite(trials: u64, seed: u64) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerifyReport::new(Suite::Generators, trials);
    for trial in 0..trials {
        let shape = if trial % 2 == 0 { ComponentShape::Clique } else { ComponentShape::Star };
        let (inst, expected, what) = match trial % 4 {
            0 => {
                let f = random_cnf(&mut rng, false);
                (gen_from_sat(&f, shape)?, sat_satisfiable(&f), format!("sat {:?}", f.clauses))
            }
            1 => {
                let f = random_cnf(&mut rng, true);
                (gen_two_stars(&f)?, sat_satisfiable(&f), format!("two-stars {:?}", f.clauses))
            }
            2 => {
                let n = rng.gen_range(1..=3usize);
                let m = rng.gen_range(1..=2usize);
                let k = rng.gen_range(1..=2usize);
                let sets = (0..m)
                    .map(|_| {
                        let mut xs: Vec<usize> = (0..n).collect();
                        xs.shuffle(&mut rng);
                        xs.truncate(rng.gen_range(1..=n));
                        xs
                    })
                    .collect();
                let h = HittingSetInput::new(n, sets, k)?;
                (
                    gen_from_hitting_set(&h, shape)?,
                    has_hitting_set(&h),
                    format!("hitting-set {:?} budget {k}", h.sets),
                )
            }
            _ => {
                let g = random_partite(&mut rng);
                (
                    gen_from_mis(&g, shape)?,
                    has_multicolored_independent_set(&g),
                    format!("independent-set {:?} over parts {:?}", g.edges, g.parts),
                )
            }
        };
        let got = brute_walk_max(&inst)? >= inst.k;
        if got == expected {
            report.agreements += 1;
        } else {
            report.counterexample = Some(Counterexample {
                instance: serialize_instance(&inst),
                expected: format!("{} => {}", what, yes_no(expected)),
                got: yes_no(got),
            });
            break;
        }
    }
    Ok(report)
}

/// Runs `trials` seeded comparisons of one component against the referee.
/// Sizes are bounded by `max_n` vertices and `max_l` snapshots where the
/// suite takes random instances; the generator suite sizes its own inputs.
pub fn run_suite(
    suite: Suite,
    trials: u64,
    seed: u64,
    max_n: usize,
    max_l: TimeStep,
) -> Result<VerifyReport> {
    match suite {
        Suite::KernelP | Suite::KernelQ => run_kernel_suite(suite, trials, seed, max_n, max_l),
        Suite::TreeSolver => run_tree_suite(trials, seed, max_n, max_l),
        Suite::Generators => run_generator_suite(trials, seed),
    }
}
