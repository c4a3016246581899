//! Upper bounds on τ for graphs too large for the exact solvers.
//!
//! [`optimize_vat`] runs a bitstring genetic search ([`ga_run`]), then hill
//! climbs ([`hill_climb`]) from its result and from many random contraction
//! cuts ([`karger_seed`]), returning the best set found. Every returned value
//! is τ of its own witness, so it is always a valid upper bound.

mod climb;
mod eval;
mod ga;
mod karger;
mod mutation;

use std::cmp::Ordering;

use rayon::prelude::*;

pub use climb::{hill_climb, hill_climb_trace, ClimbOutcome};
pub use ga::{fitness, ga_run, Chromosome, GaConfig};
pub use karger::{karger_seed, DEFAULT_MAX_DRAWS};
pub use mutation::{mv_increment, MutationVector};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measures::{check_solvable, MeasureResult, Solver, Value};
use crate::rng::derive_seed;
use climb::Climber;

/// Which start produced the final answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Genetic,
    /// Hill climb from the contraction cut with this 0-based index.
    Karger(usize),
}

#[derive(Clone, Debug)]
pub struct VatOutcome {
    pub result: MeasureResult,
    pub branch: Branch,
    /// τ after climbing from the genetic result.
    pub genetic_value: Value,
    /// Best τ over the contraction-seeded climbs, if any seed succeeded.
    pub karger_value: Option<Value>,
    pub seed_failures: usize,
}

/// Genetic search plus contraction-seeded climbing; see the module docs.
pub fn optimize_vat(g: &Graph, cfg: &GaConfig, cuts: usize, max_j: usize) -> Result<VatOutcome> {
    check_solvable(g)?;
    if max_j == 0 {
        return Err(Error::InvalidParameter("max_j must be at least 1".into()));
    }
    let n = g.node_count();
    let ga = ga_run(g, cfg)?;
    let genetic = Climber::new(n).run(g, ga.witness, max_j)?.result;

    let climbs: Vec<Option<MeasureResult>> = (0..cuts)
        .into_par_iter()
        .map_init(
            || Climber::new(n),
            |climber, i| {
                let seed = derive_seed(cfg.seed, i as u64 + 1);
                let start = karger_seed(g, seed, DEFAULT_MAX_DRAWS).ok()?;
                climber.run(g, start, max_j).ok().map(|o| o.result)
            },
        )
        .collect();

    let seed_failures = climbs.iter().filter(|c| c.is_none()).count();
    if seed_failures > 0 {
        log::warn!("{seed_failures} of {cuts} contraction seeds failed to disconnect");
    }
    let best_cut = climbs
        .into_iter()
        .enumerate()
        .filter_map(|(i, c)| c.map(|c| (i, c)))
        .min_by(|(_, a), (_, b)| order(a, b));

    let genetic_value = genetic.value;
    let karger_value = best_cut.as_ref().map(|(_, c)| c.value);
    let (branch, mut result) = match best_cut {
        Some((i, c)) if order(&c, &genetic) == Ordering::Less => (Branch::Karger(i), c),
        _ => (Branch::Genetic, genetic),
    };
    result.solver = Solver::GeneticHillClimb;
    Ok(VatOutcome {
        result,
        branch,
        genetic_value,
        karger_value,
        seed_failures,
    })
}

fn order(a: &MeasureResult, b: &MeasureResult) -> Ordering {
    a.value
        .cmp(&b.value)
        .then_with(|| a.witness.witness_cmp(&b.witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::measures::{tau, BruteForce, MeasureKind};

    fn cfg(seed: u64) -> GaConfig {
        GaConfig {
            generations: 300,
            seed,
            log_every: 0,
            ..GaConfig::default()
        }
    }

    #[test]
    fn big_barbell_bridge() {
        let g = generators::gen_big_barbell(12).unwrap();
        let out = optimize_vat(&g, &cfg(1), 20, 2).unwrap();
        assert_eq!(out.result.value, Value::new(1, 12));
        assert_eq!(out.result.witness.len(), 1);
        assert_eq!(out.result.solver, Solver::GeneticHillClimb);
    }

    #[test]
    fn matches_exact_on_small_graphs() {
        for seed in 0..6 {
            let g = generators::gen_random_connected(14, 0.15, seed).unwrap();
            let exact = BruteForce::default().optimize(&g, MeasureKind::Vat).unwrap();
            let out = optimize_vat(&g, &cfg(seed), 30, 2).unwrap();
            assert!(out.result.value >= exact.value);
            assert_eq!(tau(&g, &out.result.witness).unwrap(), out.result.value);
            assert!(out.result.value >= Value::new(1, 13));
        }
    }

    #[test]
    fn complete_graph_falls_back_to_genetic() {
        let g = generators::gen_complete(6);
        let out = optimize_vat(&g, &cfg(0), 5, 2).unwrap();
        assert_eq!(out.branch, Branch::Genetic);
        assert_eq!(out.seed_failures, 5);
        assert_eq!(out.karger_value, None);
    }
}
