//! Plain-text instance format.
//!
//! ```text
//! tg 1
//! n <int>          # vertex count
//! L <int>          # lifetime
//! source <vid>
//! k <int>          # optional; default = sum of weights
//! w <vid> <int>    # optional; default weight 1
//! t <step>         # opens a snapshot block; omitted steps are empty
//! e <u> <v>        # edge in the open snapshot block
//! ```
//!
//! `#` starts a comment, blank lines are ignored, `t` blocks must be strictly
//! increasing, and all directives precede the first `t` block. `n` and `L`
//! may be omitted and are then inferred from the largest referenced vertex /
//! step. `serialize` ∘ `parse` is the identity on its own output.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Edge, Instance, TemporalGraph};

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let stripped = raw.split('#').next().unwrap_or("").trim();
        if stripped.is_empty() {
            None
        } else {
            Some((i + 1, stripped))
        }
    });

    let (line, header) = lines.next().ok_or(Error::Syntax {
        line: 1,
        msg: "empty file; expected `tg 1` header".into(),
    })?;
    if header != "tg 1" {
        return Err(Error::Syntax { line, msg: format!("expected `tg 1` header, got `{header}`") });
    }

    let mut n: Option<usize> = None;
    let mut l: Option<usize> = None;
    let mut source: Option<usize> = None;
    let mut k: Option<u64> = None;
    let mut weights: std::collections::BTreeMap<usize, u64> = Default::default();
    // (step, edges) per declared block.
    let mut blocks: Vec<(usize, Vec<Edge>)> = Vec::new();
    let mut last_line = line;

    for (line, text) in lines {
        last_line = line;
        let mut tokens = text.split_whitespace();
        let word = tokens.next().unwrap();
        let mut rest: Vec<&str> = tokens.collect();
        let syntax = |msg: String| Error::Syntax { line, msg };
        let mut int = |what: &str| -> Result<u64> {
            if rest.is_empty() {
                return Err(Error::Syntax { line, msg: format!("missing {what}") });
            }
            let tok = rest.remove(0);
            tok.parse::<u64>()
                .map_err(|_| Error::Syntax { line, msg: format!("bad {what} `{tok}`") })
        };
        let in_blocks = !blocks.is_empty();
        match word {
            "n" | "L" | "source" | "k" | "w" if in_blocks => {
                return Err(syntax(format!("`{word}` must precede the first `t` block")));
            }
            "n" => set_once(&mut n, int("vertex count")? as usize, "n", line)?,
            "L" => set_once(&mut l, int("lifetime")? as usize, "L", line)?,
            "source" => set_once(&mut source, int("source vertex")? as usize, "source", line)?,
            "k" => set_once(&mut k, int("target k")?, "k", line)?,
            "w" => {
                let v = int("vertex id")? as usize;
                let weight = int("weight")?;
                if weights.insert(v, weight).is_some() {
                    return Err(syntax(format!("duplicate weight for vertex {v}")));
                }
            }
            "t" => {
                let t = int("time step")? as usize;
                if t == 0 {
                    return Err(syntax("time steps are 1-based".into()));
                }
                if let Some(&(prev, _)) = blocks.last() {
                    if t <= prev {
                        return Err(syntax(format!(
                            "`t` blocks must be strictly increasing ({prev} then {t})"
                        )));
                    }
                }
                blocks.push((t, Vec::new()));
            }
            "e" => {
                let u = int("endpoint")? as usize;
                let v = int("endpoint")? as usize;
                match blocks.last_mut() {
                    Some((_, edges)) => edges.push(Edge::new(u, v)),
                    None => return Err(syntax("`e` before any `t` block".into())),
                }
            }
            other => return Err(syntax(format!("unknown directive `{other}`"))),
        }
        if !rest.is_empty() {
            return Err(Error::Syntax {
                line,
                msg: format!("trailing tokens after `{word}` directive"),
            });
        }
    }

    let source = source.ok_or(Error::Syntax {
        line: last_line,
        msg: "missing `source` directive".into(),
    })?;
    let max_step = blocks.last().map(|&(t, _)| t).unwrap_or(0);
    let l = l.unwrap_or_else(|| max_step.max(1));
    if max_step > l {
        return Err(Error::TimeStepOutOfRange { t: max_step, l });
    }
    let max_ref = blocks
        .iter()
        .flat_map(|(_, es)| es.iter().map(|e| e.v))
        .chain(weights.keys().copied())
        .chain([source])
        .max()
        .unwrap_or(0);
    let n = n.unwrap_or(max_ref + 1);

    let mut snapshots = vec![Vec::new(); l];
    for (t, edges) in blocks {
        snapshots[t - 1] = edges;
    }
    let graph = TemporalGraph::new(n, snapshots)?;
    let mut w = vec![1u64; n];
    for (v, weight) in weights {
        if v >= n {
            return Err(Error::OutOfRangeVertex { vertex: v, n });
        }
        w[v] = weight;
        if weight == 0 {
            return Err(Error::NonPositiveWeight { vertex: v });
        }
    }
    Instance::new(graph, Some(w), source, k)
}

fn set_once<T>(slot: &mut Option<T>, value: T, what: &str, line: usize) -> Result<()> {
    if slot.is_some() {
        return Err(Error::Syntax { line, msg: format!("duplicate `{what}` directive") });
    }
    *slot = Some(value);
    Ok(())
}

pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    out.push_str("tg 1\n");
    let _ = writeln!(out, "n {}", inst.n());
    let _ = writeln!(out, "L {}", inst.graph.lifetime());
    let _ = writeln!(out, "source {}", inst.source);
    let _ = writeln!(out, "k {}", inst.k);
    for (v, &w) in inst.weights.iter().enumerate() {
        if w != 1 {
            let _ = writeln!(out, "w {v} {w}");
        }
    }
    for t in 1..=inst.graph.lifetime() {
        let snap = inst.graph.snapshot(t);
        if snap.is_empty() {
            continue;
        }
        let _ = writeln!(out, "t {t}");
        for e in snap {
            let _ = writeln!(out, "e {} {}", e.u, e.v);
        }
    }
    out
}
