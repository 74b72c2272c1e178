//! Run a verification suite in-process and inspect the report.

use tgx::{run_suite, Suite};

fn main() {
    for suite in [Suite::KernelP, Suite::KernelQ, Suite::TreeSolver, Suite::Generators] {
        let report = run_suite(suite, 80, 0xd1ff, 8, 6).unwrap();
        println!(
            "{}: {}/{} agreements{}",
            report.suite,
            report.agreements,
            report.trials,
            report
                .max_kernel_ratio
                .map(|r| format!(", kernel at most {r:.1}x the parameter"))
                .unwrap_or_default()
        );
        if let Some(cex) = &report.counterexample {
            println!("counterexample!\n{}", cex.instance);
        }
    }
    let report = run_suite(Suite::KernelP, 120, 1, 8, 6).unwrap();
    println!("rules fired: {:?}", report.rule_applications);
}
