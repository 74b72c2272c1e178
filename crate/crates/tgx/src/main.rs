//! `tgx` — solve, shrink, generate, and differential-test exploration
//! instances from the command line. Exit codes: 0 done (including a `no`
//! answer), 1 a verification counterexample was found, 2 bad input, 3 a
//! solver budget was exceeded, 4 an internal rule error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tgx::certificate::ComponentSequence;
use tgx::error::Error;
use tgx::format::{parse_instance, serialize_instance};
use tgx::generators::{
    compose_or, gen_from_hitting_set, gen_from_mis, gen_from_sat, gen_random, gen_two_stars,
    CnfFormula, ComponentShape, HittingSetInput, PartiteGraph,
};
use tgx::graph::Instance;
use tgx::kernelizer::{kernelize_q, kernelize_with, KernelOptions};
use tgx::solvers::{
    solve_oracle, solve_search_tree_with_budget, solve_via_kernel, DEFAULT_SEARCH_BUDGET,
};
use tgx::verify::{run_suite, Suite};

#[derive(Parser)]
#[command(name = "tgx", version, about = "Non-strict temporal graph exploration")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Subset dynamic program.
    Oracle,
    /// Component search tree (honors TGX_BUDGET).
    SearchTree,
    /// Can every vertex be visited?
    Full,
    /// Kernelize, then guess the visited set (prints a bare yes/no).
    ViaKernel,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Param {
    P,
    Q,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide how much weight a walk from the source can collect.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Oracle)]
        method: Method,
        /// Also print the optimal component sequence.
        #[arg(long)]
        certificate: bool,
        #[arg(long)]
        json: bool,
    },
    /// Shrink an instance to a kernel; `p` bounds the output in the number
    /// of edge appearances beyond a spanning tree, `q` in the missed
    /// appearances.
    Kernelize {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Param::P)]
        param: Param,
        /// Skip the final weight-rescaling step.
        #[arg(long)]
        no_weight_reduction: bool,
        /// Where to write the kernel (stdout if absent).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the rule applications as JSON lines.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Emit a hardness or random instance in the text format.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Differential-test one component against the exhaustive referee.
    Verify {
        #[arg(long, default_value = "kernel-p")]
        suite: String,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 6)]
        max_l: usize,
    },
    /// Print instance statistics.
    Stats {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum Family {
    /// From a CNF formula in DIMACS format; at most five components per
    /// snapshot, explorable iff satisfiable.
    Sat {
        cnf: PathBuf,
        /// Realize components as stars instead of cliques.
        #[arg(long)]
        sparse: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// From a monotone 3-CNF in DIMACS format; the underlying graph is two
    /// stars joined by a bridge.
    TwoStars {
        cnf: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// From a hitting-set input; lifetime budget*(universe+1)+1.
    HittingSet {
        #[arg(long)]
        universe: usize,
        #[arg(long)]
        budget: usize,
        /// One set per flag, elements comma-separated: --set 0,2 --set 1
        #[arg(long = "set", required = true)]
        sets: Vec<String>,
        #[arg(long)]
        sparse: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// From a d-regular k-partite graph; yes iff a multicolored
    /// independent set exists.
    IndependentSet {
        /// Part sizes, comma-separated; vertices are numbered part by part.
        #[arg(long)]
        parts: String,
        /// One edge per flag: --edge 0,2
        #[arg(long = "edge", required = true)]
        edges: Vec<String>,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        sparse: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// OR-composition of a power of two of instance files.
    Or {
        files: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Seeded random connected instance; `extra` appearances beyond the
    /// spanning tree set the parameter p exactly.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lifetime: usize,
        #[arg(long, default_value_t = 0)]
        extra: u64,
        #[arg(long, default_value_t = 1)]
        max_weight: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::BudgetExceeded { .. } | Error::InstanceTooLargeForOracle { .. } => 3,
        Error::InternalError(_)
        | Error::IterationCapExceeded { .. }
        | Error::ArithmeticOverflow => 4,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Solve { file, method, certificate, json } => {
            cmd_solve(&load(&file)?, method, certificate, json)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Kernelize { file, param, no_weight_reduction, output, trace, json } => {
            cmd_kernelize(&load(&file)?, param, no_weight_reduction, output, trace, json)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Generate { family } => {
            cmd_generate(family)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { suite, trials, seed, max_n, max_l } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite, trials, seed, max_n, max_l)?;
            println!("{}", serde_json::to_string_pretty(&report).map_err(|e| Error::InternalError(e.to_string()))?);
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Stats { file, json } => {
            let stats = load(&file)?.stats();
            if json {
                println!("{}", serde_json::to_string(&stats).map_err(|e| Error::InternalError(e.to_string()))?);
            } else {
                println!("{}", human_stats(&stats));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load(path: &PathBuf) -> Result<Instance, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Syntax { line: 0, msg: format!("{}: {e}", path.display()) })?;
    parse_instance(&text)
}

fn emit(output: Option<PathBuf>, text: &str) -> Result<(), Error> {
    match output {
        Some(path) => fs::write(&path, text)
            .map_err(|e| Error::Syntax { line: 0, msg: format!("{}: {e}", path.display()) }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_certificate(cert: &ComponentSequence) {
    for (i, step) in cert.0.iter().enumerate() {
        let verts: Vec<String> = step.iter().map(|v| v.to_string()).collect();
        println!("step {}: {}", i + 1, verts.join(" "));
    }
}

fn budget_from_env() -> u128 {
    std::env::var("TGX_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEARCH_BUDGET)
}

fn cmd_solve(inst: &Instance, method: Method, certificate: bool, json: bool) -> Result<(), Error> {
    let (answer, weight, cert) = match method {
        Method::Oracle => {
            let opt = solve_oracle(inst)?;
            (opt.max_weight >= inst.k, Some(opt.max_weight), Some(opt.certificate))
        }
        Method::SearchTree => {
            let opt = solve_search_tree_with_budget(inst, budget_from_env())?;
            (opt.max_weight >= inst.k, Some(opt.max_weight), Some(opt.certificate))
        }
        Method::Full => {
            // Unit weights make the optimum a visit count.
            let unit = Instance::new(inst.graph.clone(), None, inst.source, None)?;
            let opt = solve_oracle(&unit)?;
            (opt.max_weight == inst.n() as u64, Some(opt.max_weight), Some(opt.certificate))
        }
        Method::ViaKernel => (solve_via_kernel(inst)?, None, None),
    };
    let verdict = if answer { "yes" } else { "no" };
    let threshold = match method {
        Method::Full => inst.n() as u64,
        _ => inst.k,
    };
    if json {
        let mut obj = serde_json::json!({ "answer": verdict });
        if let Some(w) = weight {
            obj["max_weight"] = w.into();
            obj["threshold"] = threshold.into();
        }
        if certificate {
            if let Some(c) = &cert {
                obj["certificate"] = serde_json::json!(c.0);
            }
        }
        println!("{obj}");
    } else {
        match weight {
            Some(w) => println!("{verdict} {w}"),
            None => println!("{verdict}"),
        }
        if certificate {
            if let Some(c) = &cert {
                print_certificate(c);
            }
        }
    }
    Ok(())
}

fn human_stats(s: &tgx::graph::Stats) -> String {
    format!(
        "n={} lifetime={} appearances={} edges={} p={} q={} gamma={}",
        s.n, s.lifetime, s.edge_appearances, s.underlying_edges, s.p, s.q, s.gamma
    )
}

fn cmd_kernelize(
    inst: &Instance,
    param: Param,
    no_weight_reduction: bool,
    output: Option<PathBuf>,
    trace_path: Option<PathBuf>,
    json: bool,
) -> Result<(), Error> {
    let before = inst.stats();
    let (kernel, trace) = match param {
        Param::P => {
            let opts = KernelOptions { reduce_weights: !no_weight_reduction, ..Default::default() };
            kernelize_with(inst, &opts)?
        }
        Param::Q => (kernelize_q(inst)?, Default::default()),
    };
    let after = kernel.stats();
    if let Some(path) = trace_path {
        fs::write(&path, trace.to_json_lines()?)
            .map_err(|e| Error::Syntax { line: 0, msg: format!("{}: {e}", path.display()) })?;
    }
    let to_stdout = output.is_none();
    emit(output, &serialize_instance(&kernel))?;
    let summary = if json {
        serde_json::json!({
            "before": before,
            "after": after,
            "rules_applied": trace.applications.len(),
        })
        .to_string()
    } else {
        format!(
            "before: {}\nafter:  {}\nrules applied: {}",
            human_stats(&before),
            human_stats(&after),
            trace.applications.len()
        )
    };
    // Keep the kernel the only thing on stdout when it goes there.
    if to_stdout {
        eprintln!("{summary}");
    } else {
        println!("{summary}");
    }
    Ok(())
}

fn parse_list(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse()
                .map_err(|_| Error::BadGeneratorInput(format!("bad number `{tok}`")))
        })
        .collect()
}

fn shape(sparse: bool) -> ComponentShape {
    if sparse { ComponentShape::Star } else { ComponentShape::Clique }
}

fn cmd_generate(family: Family) -> Result<(), Error> {
    let (inst, output) = match family {
        Family::Sat { cnf, sparse, output } => {
            let text = fs::read_to_string(&cnf)
                .map_err(|e| Error::Syntax { line: 0, msg: format!("{}: {e}", cnf.display()) })?;
            (gen_from_sat(&CnfFormula::from_dimacs(&text)?, shape(sparse))?, output)
        }
        Family::TwoStars { cnf, output } => {
            let text = fs::read_to_string(&cnf)
                .map_err(|e| Error::Syntax { line: 0, msg: format!("{}: {e}", cnf.display()) })?;
            (gen_two_stars(&CnfFormula::from_dimacs(&text)?)?, output)
        }
        Family::HittingSet { universe, budget, sets, sparse, output } => {
            let sets = sets.iter().map(|s| parse_list(s)).collect::<Result<_, _>>()?;
            let input = HittingSetInput::new(universe, sets, budget)?;
            (gen_from_hitting_set(&input, shape(sparse))?, output)
        }
        Family::IndependentSet { parts, edges, degree, sparse, output } => {
            let parts = parse_list(&parts)?;
            let edges = edges
                .iter()
                .map(|e| {
                    let pair = parse_list(e)?;
                    if pair.len() != 2 {
                        return Err(Error::BadGeneratorInput(format!(
                            "edge `{e}` needs exactly two endpoints"
                        )));
                    }
                    Ok((pair[0], pair[1]))
                })
                .collect::<Result<_, _>>()?;
            let g = PartiteGraph::new(parts, edges, degree)?;
            (gen_from_mis(&g, shape(sparse))?, output)
        }
        Family::Or { files, output } => {
            let instances =
                files.iter().map(load).collect::<Result<Vec<_>, _>>()?;
            (compose_or(&instances)?, output)
        }
        Family::Random { n, lifetime, extra, max_weight, seed, output } => {
            (gen_random(n, lifetime, extra, max_weight, seed)?, output)
        }
    };
    emit(output, &serialize_instance(&inst))
}
