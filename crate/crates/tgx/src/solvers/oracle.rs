//! Subset dynamic program over component sequences.
//!
//! For every (time step, component) pair we compute the family of
//! inclusion-maximal vertex sets collectable by sequences starting there
//! ("future unions"). Weight positivity makes subset-dominated unions
//! irrelevant, so each family is kept as an antichain. The optimum is read
//! off the source's component at step 1, and the canonical certificate is
//! rebuilt greedily: stop as soon as the running union is optimal, otherwise
//! take the least viable component — which yields the lexicographically
//! least optimal sequence.

use super::OptimalExploration;
use crate::certificate::ComponentSequence;
use crate::error::{Error, Result};
use crate::graph::{Instance, VertexId};

/// Default cap on the vertex count; bitmask state also hard-caps at 31.
pub const ORACLE_VERTEX_LIMIT: usize = 24;

type Mask = u32;

pub fn solve_oracle(inst: &Instance) -> Result<OptimalExploration> {
    solve_oracle_with_limit(inst, ORACLE_VERTEX_LIMIT)
}

pub fn solve_oracle_with_limit(inst: &Instance, limit: usize) -> Result<OptimalExploration> {
    let limit = limit.min(31);
    let n = inst.n();
    if n > limit {
        return Err(Error::InstanceTooLargeForOracle { n, limit });
    }
    let l = inst.graph.lifetime();
    let weight = |m: Mask| -> u64 {
        let mut acc = 0;
        let mut rest = m;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            acc += inst.weights[v];
            rest &= rest - 1;
        }
        acc
    };

    // comps[t][i]: i-th component of snapshot t+1 as a bitmask, ordered by
    // smallest member (= lexicographic order of the sorted vertex lists,
    // since components of one snapshot are disjoint).
    let comps: Vec<Vec<Mask>> = (1..=l)
        .map(|t| inst.graph.connected_components(t).iter().map(|c| mask_of(c)).collect())
        .collect();

    // ext[t][i]: antichain of maximal unions over sequences whose first
    // entry is component i of snapshot t+1 (stopping anywhere is allowed).
    let mut ext: Vec<Vec<Vec<Mask>>> = vec![Vec::new(); l];
    for t in (0..l).rev() {
        let level: Vec<Vec<Mask>> = comps[t]
            .iter()
            .map(|&cm| {
                let mut family = vec![cm];
                if t + 1 < l {
                    for (j, &dm) in comps[t + 1].iter().enumerate() {
                        if dm & cm != 0 {
                            for &u in &ext[t + 1][j] {
                                insert_maximal(&mut family, cm | u);
                            }
                        }
                    }
                }
                family
            })
            .collect();
        ext[t] = level;
    }

    let start = comps[0]
        .iter()
        .position(|&c| c & (1 << inst.source) != 0)
        .expect("components partition V");
    let opt = ext[0][start].iter().map(|&u| weight(u)).max().expect("family is nonempty");

    // Greedy canonical reconstruction.
    let mut entries: Vec<Vec<VertexId>> = vec![unmask(comps[0][start])];
    let mut visited = comps[0][start];
    let mut cur = start;
    for t in 1..l {
        if weight(visited) == opt {
            break;
        }
        let next = comps[t]
            .iter()
            .enumerate()
            .position(|(j, &dm)| {
                dm & comps[t - 1][cur] != 0
                    && ext[t][j].iter().any(|&u| weight(visited | u) == opt)
            })
            .ok_or_else(|| Error::InternalError("optimal continuation vanished".into()))?;
        visited |= comps[t][next];
        entries.push(unmask(comps[t][next]));
        cur = next;
    }
    if weight(visited) != opt {
        return Err(Error::InternalError("reconstruction missed the optimum".into()));
    }
    Ok(OptimalExploration { max_weight: opt, certificate: ComponentSequence(entries) })
}

fn mask_of(vertices: &[VertexId]) -> Mask {
    vertices.iter().fold(0, |m, &v| m | (1 << v))
}

fn unmask(mut m: Mask) -> Vec<VertexId> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Inserts `m` into an antichain under ⊆, dropping anything it covers.
fn insert_maximal(family: &mut Vec<Mask>, m: Mask) {
    if family.iter().any(|&s| s & m == m) {
        return;
    }
    family.retain(|&s| s & m != s);
    family.push(m);
}
