//! Kernel-assisted decision: shrink first, then guess the visited set.

use crate::error::{Error, Result};
use crate::graph::{restrict_to_source_component, Instance, VertexId};
use crate::kernelizer::kernelize;
use crate::solvers::solve_full_exploration;

// Subset enumeration is only sane on a genuinely shrunken instance.
const SUBSET_LIMIT: usize = 20;

/// Decides whether a walk from the source collects weight at least `k`, by
/// restricting to the source component, kernelizing, and enumerating
/// candidate visited sets `U` of the kernel: the answer is yes iff some `U`
/// weighs at least the kernel threshold and the kernel restricted to `U` is
/// fully explorable. Any walk visits exactly the vertex set it touches, so
/// the guess loses nothing.
pub fn solve_via_kernel(inst: &Instance) -> Result<bool> {
    let restricted = restrict_to_source_component(inst).instance;
    let (kernel, _) = kernelize(&restricted)?;
    let n = kernel.n();
    if n > SUBSET_LIMIT {
        return Err(Error::InstanceTooLargeForOracle { n, limit: SUBSET_LIMIT });
    }
    for mask in 0u32..1 << n {
        if mask & 1 << kernel.source == 0 {
            continue;
        }
        let subset: Vec<VertexId> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        if kernel.weight_of(subset.iter().copied())? < kernel.k {
            continue;
        }
        let (sub, _) = kernel.induced(&subset)?;
        if solve_full_exploration(&sub)?.0 {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, TemporalGraph};
    use crate::solvers::solve_oracle;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn path(times_forward: bool, k: u64) -> Instance {
        let snaps = if times_forward {
            vec![vec![Edge::new(0, 1)], vec![Edge::new(1, 2)]]
        } else {
            vec![vec![Edge::new(1, 2)], vec![Edge::new(0, 1)]]
        };
        let g = TemporalGraph::new(3, snaps).unwrap();
        Instance::new(g, None, 0, Some(k)).unwrap()
    }

    #[test]
    fn decides_the_two_orientations_of_a_path() {
        assert!(solve_via_kernel(&path(true, 3)).unwrap());
        assert!(!solve_via_kernel(&path(false, 3)).unwrap());
        assert!(solve_via_kernel(&path(false, 2)).unwrap());
    }

    #[test]
    fn agrees_with_the_oracle_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6b65726e);
        for round in 0..500 {
            let n = rng.gen_range(2..=12usize);
            let l = rng.gen_range(1..=8usize);
            let slots = (n as u64 * (n as u64 - 1) / 2) * l as u64 - (n as u64 - 1);
            let extra = rng.gen_range(0..=(2 * n as u64).min(slots));
            let base = crate::generators::gen_random(n, l, extra, 10, rng.gen()).unwrap();
            let opt = solve_oracle(&base).unwrap().max_weight;
            let k = opt.saturating_add_signed(rng.gen_range(-3..=3)).max(1);
            let inst =
                Instance::new(base.graph, Some(base.weights), base.source, Some(k)).unwrap();
            assert_eq!(
                solve_via_kernel(&inst).unwrap(),
                opt >= k,
                "round {round}: {}",
                crate::format::serialize_instance(&inst)
            );
        }
    }
}
