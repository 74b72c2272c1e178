//! Structural kernelization.
//!
//! `kernelize` repeatedly applies four rewrite rules until none applies, then
//! compacts snapshots and weights:
//!
//! 1. `rule_trees` replaces each attachment-window tree hanging at a cut
//!    vertex by at most two pendant vertices with the same walk maxima.
//! 2. `rule_delete_edge` removes an edge appearance no walk can use
//!    (backbone times t1 > t2 < t3 behind a two-edge cut).
//! 3. `rule_merge_equal_times` re-routes a cut edge past its inner neighbour
//!    when their times coincide, shortening the backbone.
//! 4. `rule_contract_backbone` contracts a strictly increasing five-edge
//!    backbone into a four-edge gadget with the same walk maxima.
//! 5. `rule_drop_empty_snapshots` and `reduce_weights` normalise the result.
//!
//! Applications never increase the parameter `p` (edge appearances minus
//! n plus one); the driver verifies this per application and logs everything
//! in a `KernelTrace`. Above `KernelOptions::fast_threshold` vertices, the
//! driver first runs batched sweeps (see `fast`) that rewrite many disjoint
//! sites per pass; the exact rescan loop always runs afterwards and finishes
//! the job at the reduced size.

mod fast;
mod q;
mod rules;
mod trace;

pub use q::kernelize_q;
pub use rules::weights_within_size_bound;
pub use trace::{KernelTrace, RuleApplication, TraceStats};

use crate::decomposition::{ImportantEdgeCut, ImportantSeparation};
#[cfg(test)]
use crate::decomposition::{important_edge_cuts, important_separations};
use crate::error::{Error, Result};
use crate::graph::{Instance, TimeStep};

/// One attachment-time window at a separation's cut vertex, relative to the
/// sorted distinct appearance times A of the cut vertex's edges into Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleWindow {
    /// Exactly at one time of A.
    Single(TimeStep),
    /// Strictly between two consecutive times of A.
    Open(TimeStep, TimeStep),
    /// Strictly before the first time of A.
    Prefix(TimeStep),
    /// Strictly after the last time of A.
    Suffix(TimeStep),
    /// The whole timeline; used when A is empty, i.e. the graph is one blue
    /// tree and the cut vertex is the source.
    Full,
}

impl RuleWindow {
    pub fn admits(&self, t: TimeStep) -> bool {
        match *self {
            RuleWindow::Single(i) => t == i,
            RuleWindow::Open(i, j) => i < t && t < j,
            RuleWindow::Prefix(i) => t < i,
            RuleWindow::Suffix(j) => t > j,
            RuleWindow::Full => true,
        }
    }
}

/// The windows induced by sorted distinct times, chronologically. They
/// partition the timeline (or all of it, for an empty list).
pub(crate) fn windows_from_times(a: &[TimeStep]) -> Vec<RuleWindow> {
    if a.is_empty() {
        return vec![RuleWindow::Full];
    }
    let mut out = vec![RuleWindow::Prefix(a[0])];
    for (i, &t) in a.iter().enumerate() {
        out.push(RuleWindow::Single(t));
        if let Some(&next) = a.get(i + 1) {
            if next > t + 1 {
                out.push(RuleWindow::Open(t, next));
            }
        }
    }
    out.push(RuleWindow::Suffix(a[a.len() - 1]));
    out
}

/// The rule windows of a separation, in chronological order.
pub fn rule_windows(sep: &ImportantSeparation) -> Vec<RuleWindow> {
    windows_from_times(&sep.windows)
}

// ---- single-rule interface ----

pub fn rule_trees(
    inst: &Instance,
    sep: &ImportantSeparation,
    window: RuleWindow,
) -> Result<Instance> {
    rules::apply_rule_trees(inst, sep, window).map(|(i, _)| i)
}

pub fn rule_delete_edge(inst: &Instance, cut: &ImportantEdgeCut) -> Result<Instance> {
    rules::apply_rule_delete_edge(inst, cut).map(|(i, _)| i)
}

pub fn rule_merge_equal_times(inst: &Instance, cut: &ImportantEdgeCut) -> Result<Instance> {
    rules::apply_rule_merge_equal_times(inst, cut).map(|(i, _)| i)
}

pub fn rule_contract_backbone(inst: &Instance, cut: &ImportantEdgeCut) -> Result<Instance> {
    rules::apply_rule_contract_backbone(inst, cut).map(|(i, _)| i)
}

pub fn rule_drop_empty_snapshots(inst: &Instance) -> Result<Instance> {
    rules::apply_rule_drop_empty_snapshots(inst).map(|(i, _)| i)
}

pub fn reduce_weights(inst: &Instance) -> Result<Instance> {
    rules::apply_reduce_weights(inst).map(|(i, _)| i)
}

// ---- driver ----

#[derive(Debug, Clone)]
pub struct KernelOptions {
    /// Run the final gcd weight reduction (on by default).
    pub reduce_weights: bool,
    /// Vertex count above which batched sweeps run before the exact loop.
    pub fast_threshold: usize,
}

impl Default for KernelOptions {
    fn default() -> Self {
        KernelOptions { reduce_weights: true, fast_threshold: 1500 }
    }
}

pub fn kernelize(inst: &Instance) -> Result<(Instance, KernelTrace)> {
    kernelize_with(inst, &KernelOptions::default())
}

pub fn kernelize_with(inst: &Instance, opts: &KernelOptions) -> Result<(Instance, KernelTrace)> {
    if !inst.graph.underlying().is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let s0 = inst.stats();
    let base = s0.n as u64 + s0.edge_appearances + s0.lifetime as u64;
    let cap = 16u64.saturating_mul(base.saturating_mul(base));
    let mut cur = inst.clone();
    let mut trace = KernelTrace::default();

    if cur.n() > opts.fast_threshold {
        fast::accelerate(&mut cur, &mut trace, cap)?;
    }
    loop {
        check_cap(&trace, cap)?;
        match fast::sited_exact_step(&cur)? {
            Some((next, app)) => {
                check_monotone(&app)?;
                trace.applications.push(app);
                cur = next;
            }
            None => break,
        }
    }
    let (next, app) = rules::apply_rule_drop_empty_snapshots(&cur)?;
    cur = next;
    trace.applications.extend(app);
    if opts.reduce_weights {
        let (next, app) = rules::apply_reduce_weights(&cur)?;
        cur = next;
        trace.applications.extend(app);
    }
    Ok((cur, trace))
}

pub(crate) fn check_cap(trace: &KernelTrace, cap: u64) -> Result<()> {
    if trace.applications.len() as u64 > cap {
        return Err(Error::IterationCapExceeded { applications: trace.applications.len() });
    }
    Ok(())
}

pub(crate) fn check_monotone(app: &RuleApplication) -> Result<()> {
    if app.after.p > app.before.p {
        return Err(Error::InternalError(format!(
            "rule {} increased p from {} to {} at {}",
            app.rule, app.before.p, app.after.p, app.locus
        )));
    }
    Ok(())
}

/// First applicable (rule, site) in rule order, found by enumerating every
/// important separation and every pair of blue edges from scratch. The
/// driver uses the site-directed equivalent in `fast`; this form stays as
/// the reference the tests compare fixpoints against.
#[cfg(test)]
fn exact_step_pairwise(cur: &Instance) -> Result<Option<(Instance, RuleApplication)>> {
    for sep in important_separations(cur)? {
        for window in rule_windows(&sep) {
            match rules::apply_rule_trees(cur, &sep, window) {
                Err(Error::NotApplicable) => continue,
                other => return other.map(Some),
            }
        }
    }
    let cuts = important_edge_cuts(cur)?;
    type EdgeRule = fn(&Instance, &ImportantEdgeCut) -> Result<(Instance, RuleApplication)>;
    let edge_rules: [EdgeRule; 3] = [
        rules::apply_rule_delete_edge,
        rules::apply_rule_merge_equal_times,
        rules::apply_rule_contract_backbone,
    ];
    for rule in edge_rules {
        for cut in &cuts {
            for oriented in [cut.clone(), cut.reversed()] {
                match rule(cur, &oriented) {
                    Err(Error::NotApplicable) => continue,
                    other => return other.map(Some),
                }
            }
        }
    }
    Ok(None)
}
