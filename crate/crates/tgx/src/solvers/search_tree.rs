//! Exhaustive search over component choices, one snapshot at a time.
//!
//! The walk's certificate picks one component per step, consecutive picks
//! intersecting; with at most γ components per snapshot the tree has at most
//! γ^L leaves, which is the admission estimate checked against the budget.
//! Depth-first traversal in component order visits candidate sequences in
//! lexicographic order, so keeping the first maximum seen yields the same
//! canonical certificate as the subset oracle.

use super::OptimalExploration;
use crate::certificate::ComponentSequence;
use crate::error::{Error, Result};
use crate::graph::{Instance, VertexId};

pub const DEFAULT_SEARCH_BUDGET: u128 = 100_000_000;

/// γ^L, saturating; the admission estimate for [`solve_search_tree`].
pub fn search_space_estimate(inst: &Instance) -> u128 {
    let stats = inst.stats();
    let gamma = stats.gamma.max(1) as u128;
    let mut est: u128 = 1;
    for _ in 0..stats.lifetime {
        est = est.saturating_mul(gamma);
    }
    est
}

pub fn solve_search_tree(inst: &Instance) -> Result<OptimalExploration> {
    solve_search_tree_with_budget(inst, DEFAULT_SEARCH_BUDGET)
}

pub fn solve_search_tree_with_budget(inst: &Instance, budget: u128) -> Result<OptimalExploration> {
    let estimate = search_space_estimate(inst);
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    let n = inst.n();
    let l = inst.graph.lifetime();
    let comps: Vec<Vec<Vec<VertexId>>> =
        (1..=l).map(|t| inst.graph.connected_components(t)).collect();
    // comp_of[t][v] = index of v's component in comps[t].
    let comp_of: Vec<Vec<usize>> = comps
        .iter()
        .map(|cs| {
            let mut idx = vec![0; n];
            for (i, c) in cs.iter().enumerate() {
                for &v in c {
                    idx[v] = i;
                }
            }
            idx
        })
        .collect();

    struct Frame {
        comp: usize,
        /// Intersecting components of the next snapshot not yet tried.
        pending: Vec<usize>,
        /// Vertices first visited by this frame's component (for undo).
        added: Vec<VertexId>,
    }

    let mut visited = vec![false; n];
    let mut weight: u64 = 0;
    let mut best_weight: u64 = 0;
    let mut best_seq: Option<Vec<usize>> = None;
    let mut stack: Vec<Frame> = Vec::new();

    let start = comp_of[0][inst.source];
    push_frame(&mut stack, 0, start, &comps, &comp_of, &mut visited, &mut weight, inst, l);
    // The root is a candidate; so is every node, recorded on push.
    record(&stack, weight, &mut best_weight, &mut best_seq);

    while let Some(top) = stack.last_mut() {
        if let Some(next) = top.pending.pop() {
            let depth = stack.len();
            push_frame(&mut stack, depth, next, &comps, &comp_of, &mut visited, &mut weight, inst, l);
            record(&stack, weight, &mut best_weight, &mut best_seq);
        } else {
            let frame = stack.pop().expect("nonempty");
            for v in frame.added {
                visited[v] = false;
                weight -= inst.weights[v];
            }
        }
    }

    let seq = best_seq.expect("root candidate always recorded");
    let entries = seq.iter().enumerate().map(|(t, &c)| comps[t][c].clone()).collect();
    return Ok(OptimalExploration {
        max_weight: best_weight,
        certificate: ComponentSequence(entries),
    });

    fn push_frame(
        stack: &mut Vec<Frame>,
        depth: usize,
        comp: usize,
        comps: &[Vec<Vec<VertexId>>],
        comp_of: &[Vec<usize>],
        visited: &mut [bool],
        weight: &mut u64,
        inst: &Instance,
        l: usize,
    ) {
        let mut added = Vec::new();
        for &v in &comps[depth][comp] {
            if !visited[v] {
                visited[v] = true;
                *weight += inst.weights[v];
                added.push(v);
            }
        }
        let mut pending: Vec<usize> = if depth + 1 < l {
            let mut seen: Vec<usize> =
                comps[depth][comp].iter().map(|&v| comp_of[depth + 1][v]).collect();
            seen.sort_unstable();
            seen.dedup();
            seen
        } else {
            Vec::new()
        };
        // Popped from the back, so descending order means ascending visits.
        pending.reverse();
        stack.push(Frame { comp, pending, added });
    }

    fn record(
        stack: &[Frame],
        weight: u64,
        best_weight: &mut u64,
        best_seq: &mut Option<Vec<usize>>,
    ) {
        // Strict improvement only: at equal weight the first candidate in
        // DFS preorder is the lexicographically least one.
        if best_seq.is_none() || weight > *best_weight {
            *best_weight = weight;
            *best_seq = Some(stack.iter().map(|f| f.comp).collect());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, TemporalGraph};
    use crate::solvers::solve_oracle;

    fn unit(n: usize, snaps: Vec<Vec<Edge>>, source: usize) -> Instance {
        Instance::new(TemporalGraph::new(n, snaps).unwrap(), None, source, None).unwrap()
    }

    #[test]
    fn matches_oracle_on_fixed_examples() {
        let cases = vec![
            unit(1, vec![vec![]], 0),
            unit(3, vec![vec![Edge::new(0, 1)], vec![Edge::new(1, 2)]], 0),
            unit(3, vec![vec![Edge::new(1, 2)], vec![Edge::new(0, 1)]], 0),
            unit(
                4,
                vec![
                    vec![Edge::new(0, 1), Edge::new(2, 3)],
                    vec![Edge::new(1, 2)],
                    vec![Edge::new(0, 3)],
                ],
                1,
            ),
        ];
        for inst in cases {
            let a = solve_oracle(&inst).unwrap();
            let b = solve_search_tree(&inst).unwrap();
            assert_eq!(a.max_weight, b.max_weight);
            assert_eq!(a.certificate, b.certificate);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let inst = unit(3, vec![vec![], vec![], vec![]], 0);
        // gamma = 3 singletons, L = 3 → estimate 27.
        assert_eq!(search_space_estimate(&inst), 27);
        assert_eq!(
            solve_search_tree_with_budget(&inst, 26).unwrap_err(),
            Error::BudgetExceeded { estimate: 27, budget: 26 }
        );
        assert!(solve_search_tree_with_budget(&inst, 27).is_ok());
    }

    #[test]
    fn weighted_detour_beats_greedy_cover() {
        // Staying with 0's side first then jumping late collects less than
        // committing to the heavy branch immediately.
        let g = TemporalGraph::new(
            4,
            vec![
                vec![Edge::new(0, 1)],
                vec![Edge::new(0, 2), Edge::new(1, 3)],
                vec![],
            ],
        )
        .unwrap();
        let inst = Instance::new(g, Some(vec![1, 1, 1, 9]), 0, None).unwrap();
        let opt = solve_search_tree(&inst).unwrap();
        assert_eq!(opt.max_weight, 11);
        assert_eq!(
            opt.certificate.0,
            vec![vec![0, 1], vec![1, 3]]
        );
    }
}
