//! Kernelize a hundred-thousand-vertex instance: the batched sweeps keep
//! the fixed-point computation near-linear.

use std::time::Instant;

use tgx::{kernelize, gen_random};

fn main() {
    let n = 100_000;
    let inst = gen_random(n, 40, 50, 8, 2024).unwrap();
    println!(
        "generated: n={} appearances={} p={}",
        inst.n(),
        inst.graph.edge_appearances(),
        inst.graph.edge_appearances() as i64 - inst.n() as i64 + 1
    );

    let start = Instant::now();
    let (kernel, trace) = kernelize(&inst).unwrap();
    let elapsed = start.elapsed();
    let after = kernel.stats();
    println!(
        "kernel: n={} appearances={} lifetime={} in {:.2?} ({} rule applications)",
        after.n, after.edge_appearances, after.lifetime, elapsed, trace.applications.len()
    );
}
