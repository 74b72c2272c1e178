//! Exploration of temporal graphs under non-strict time.
//!
//! A temporal graph is a sequence of snapshots over a fixed vertex set. A
//! walk is *monotone* when the times of consecutive steps never decrease;
//! under non-strict time any number of edges of one snapshot may be used in
//! a row. This crate decides how much vertex weight such a walk can collect
//! from a given source, and shrinks instances before solving:
//!
//! * [`solvers`] — exact solvers (subset dynamic program, component search
//!   tree, a polynomial algorithm for trees) and a kernel-assisted solver.
//! * [`kernelizer`] — structural reduction rules driven to a fixed point,
//!   with size guarantees in the parameters `p` (edge appearances beyond a
//!   spanning tree) and `q` (missed appearances).
//! * [`generators`] — reductions from SAT, hitting set, and independent set
//!   that produce hard instances with known answers.
//! * [`verify`] — differential test harness pitting every component against
//!   independent brute-force oracles.

pub mod certificate;
pub mod decomposition;
pub mod error;
pub mod format;
pub mod generators;
pub mod graph;
pub mod kernelizer;
pub mod solvers;
pub mod verify;

pub use certificate::{ComponentSequence, MonotoneWalk};
pub use error::{Error, Result};
pub use generators::{
    compose_or, gen_from_hitting_set, gen_from_mis, gen_from_sat, gen_random, gen_two_stars,
    CnfFormula, ComponentShape, HittingSetInput, PartiteGraph,
};
pub use graph::{Edge, Instance, Stats, TemporalGraph, TimeStep, VertexId};
pub use kernelizer::{kernelize, kernelize_q, kernelize_with, KernelOptions, KernelTrace};
pub use solvers::{solve_oracle, solve_search_tree, solve_via_kernel, OptimalExploration};
pub use verify::{brute_walk_max, run_suite, Suite, VerifyReport};
