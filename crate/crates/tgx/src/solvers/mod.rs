//! Exact solvers.
//!
//! Two independent exact algorithms — a subset dynamic program
//! ([`solve_oracle`]) and an exhaustive component search tree
//! ([`solve_search_tree`]) — plus a polynomial algorithm for temporal trees
//! and a kernel-assisted decision procedure. The two exact solvers share
//! nothing but the certificate type, which makes them useful as mutual
//! cross-checks.

mod oracle;
mod search_tree;
mod tree;
mod via_kernel;

pub use oracle::{solve_oracle, solve_oracle_with_limit, ORACLE_VERTEX_LIMIT};
pub use search_tree::{
    search_space_estimate, solve_search_tree, solve_search_tree_with_budget,
    DEFAULT_SEARCH_BUDGET,
};
pub use tree::{best_tree_walk_from, solve_tree, tree_walk_values, TemporalTree};
pub use via_kernel::solve_via_kernel;

use crate::certificate::ComponentSequence;
use crate::error::Result;
use crate::graph::Instance;

/// Maximum collectable weight together with a component sequence achieving
/// it. Both exact solvers return the same canonical certificate: the
/// lexicographically least optimum (sequences compared entry-wise, so a
/// shorter prefix precedes its extensions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalExploration {
    pub max_weight: u64,
    pub certificate: ComponentSequence,
}

/// Decides whether every vertex can be visited, ignoring weights. On yes,
/// returns a certificate covering all of `V`.
pub fn solve_full_exploration(inst: &Instance) -> Result<(bool, Option<ComponentSequence>)> {
    let unit = Instance::new(inst.graph.clone(), None, inst.source, Some(inst.n() as u64))?;
    let opt = solve_oracle(&unit)?;
    if opt.max_weight == inst.n() as u64 {
        Ok((true, Some(opt.certificate)))
    } else {
        Ok((false, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, TemporalGraph};

    fn forward_path() -> Instance {
        let g = TemporalGraph::new(
            3,
            vec![vec![Edge::new(0, 1)], vec![Edge::new(1, 2)]],
        )
        .unwrap();
        Instance::new(g, None, 0, None).unwrap()
    }

    fn reversed_path() -> Instance {
        let g = TemporalGraph::new(
            3,
            vec![vec![Edge::new(1, 2)], vec![Edge::new(0, 1)]],
        )
        .unwrap();
        Instance::new(g, None, 0, None).unwrap()
    }

    #[test]
    fn full_exploration_of_forward_path() {
        let (yes, cert) = solve_full_exploration(&forward_path()).unwrap();
        assert!(yes);
        let cert = cert.unwrap();
        assert_eq!(cert.visited(), vec![0, 1, 2]);
        assert_eq!(cert.validate(&forward_path()).unwrap(), 3);
    }

    #[test]
    fn reversed_path_is_not_fully_explorable() {
        let (yes, cert) = solve_full_exploration(&reversed_path()).unwrap();
        assert!(!yes);
        assert!(cert.is_none());
    }

    #[test]
    fn disconnected_underlying_graph_is_not_fully_explorable() {
        let g = TemporalGraph::new(
            4,
            vec![vec![Edge::new(0, 1)], vec![Edge::new(2, 3)]],
        )
        .unwrap();
        let inst = Instance::new(g, None, 0, None).unwrap();
        assert!(!solve_full_exploration(&inst).unwrap().0);
    }
}
