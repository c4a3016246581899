use std::cmp::Ordering;

use rand::Rng as _;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measures::{check_solvable, MeasureKind, MeasureResult, Solver, Value};
use crate::rng::{self, Rng};
use crate::vertex_set::VertexSet;

use super::eval::{rank, Score, Scorer};

/// Genetic search parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct GaConfig {
    /// Chromosomes per generation; must be even.
    pub population: usize,
    pub generations: usize,
    pub crossover_prob: f64,
    /// Per-bit flip probability; `None` means `1/n`.
    pub mutation_prob: Option<f64>,
    pub tournament_size: usize,
    /// Best chromosomes copied unchanged into the next generation.
    pub elitism: usize,
    pub seed: u64,
    /// Emit a progress line every this many generations (0 disables).
    pub log_every: usize,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population: 64,
            generations: 100_000,
            crossover_prob: 0.9,
            mutation_prob: None,
            tournament_size: 3,
            elitism: 1,
            seed: 0,
            log_every: 1000,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.population < 2 || self.population % 2 == 1 {
            return bad(format!("population must be even and >= 2, got {}", self.population));
        }
        if !(0.0..=1.0).contains(&self.crossover_prob) {
            return bad(format!("crossover probability {} outside [0,1]", self.crossover_prob));
        }
        if let Some(p) = self.mutation_prob {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("mutation probability {p} outside [0,1]"));
            }
        }
        if self.tournament_size == 0 || self.tournament_size > self.population {
            return bad(format!("tournament size {} for population {}", self.tournament_size, self.population));
        }
        if self.elitism >= self.population {
            return bad(format!("elitism {} for population {}", self.elitism, self.population));
        }
        Ok(())
    }

    pub fn mutation_rate(&self, n: usize) -> f64 {
        self.mutation_prob.unwrap_or(1.0 / n as f64)
    }
}

/// A candidate attack set with its fitness `max(0, 1 − τ)`.
#[derive(Clone, Debug)]
pub struct Chromosome {
    pub bits: VertexSet,
    pub fitness: f64,
    score: Score,
}

impl Chromosome {
    fn unscored(bits: VertexSet) -> Self {
        Chromosome {
            bits,
            fitness: 0.0,
            score: None,
        }
    }

    fn evaluate(&mut self, g: &Graph, scorer: &mut Scorer) {
        self.score = scorer.score(g, &self.bits);
        self.fitness = fitness_of(self.score);
    }

    /// τ of the encoded set, `None` for ∅ and V.
    pub fn tau(&self) -> Option<Value> {
        self.score.map(|f| f.value())
    }

    fn rank(&self, other: &Self) -> Ordering {
        rank((self.score, &self.bits), (other.score, &other.bits))
    }
}

fn fitness_of(score: Score) -> f64 {
    score.map_or(0.0, |f| (1.0 - f.num as f64 / f.den as f64).max(0.0))
}

/// `max(0, 1 − τ_S)`, or 0 for the degenerate sets ∅ and V.
pub fn fitness(g: &Graph, s: &VertexSet) -> f64 {
    fitness_of(Scorer::new(g.node_count()).score(g, s))
}

/// Bitstring genetic search for a small-τ attack set.
///
/// Selection compares τ directly rather than the clamped fitness, so sets with
/// τ ≥ 1 (all of fitness 0) are still ordered. Deterministic for a given seed.
pub fn ga_run(g: &Graph, cfg: &GaConfig) -> Result<MeasureResult> {
    check_solvable(g)?;
    cfg.validate()?;
    let n = g.node_count();
    let mut rng = rng::seeded(cfg.seed);
    let p_mut = cfg.mutation_rate(n);

    let mut population: Vec<Chromosome> = (0..cfg.population)
        .map(|_| {
            let density = rng.gen_range(0.0..0.5);
            let bits = VertexSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(density)));
            Chromosome::unscored(bits)
        })
        .collect();
    evaluate_all(g, &mut population);
    let mut best = population.iter().min_by(|a, b| a.rank(b)).unwrap().clone();

    let mut next = Vec::with_capacity(cfg.population);
    for generation in 1..=cfg.generations {
        population.sort_by(|a, b| a.rank(b));
        next.clear();
        next.extend(population[..cfg.elitism].iter().cloned());
        let fresh_from = next.len();
        while next.len() < cfg.population {
            let a = tournament(&population, cfg.tournament_size, &mut rng);
            let b = tournament(&population, cfg.tournament_size, &mut rng);
            let (mut x, mut y) = if rng.gen_bool(cfg.crossover_prob) {
                a.crossover(b, rng.gen_range(1..n))
            } else {
                (a.clone(), b.clone())
            };
            mutate(&mut x, p_mut, &mut rng);
            mutate(&mut y, p_mut, &mut rng);
            next.push(Chromosome::unscored(x));
            if next.len() < cfg.population {
                next.push(Chromosome::unscored(y));
            }
        }
        evaluate_all(g, &mut next[fresh_from..]);
        std::mem::swap(&mut population, &mut next);

        let champion = population.iter().min_by(|a, b| a.rank(b)).unwrap();
        if champion.rank(&best) == Ordering::Less {
            best = champion.clone();
        }
        if cfg.log_every > 0 && generation % cfg.log_every == 0 {
            log::info!(
                "generation {generation}: best tau {}, fitness {:.6}",
                best.tau().map_or_else(|| "-".to_string(), |t| t.to_string()),
                best.fitness
            );
        }
    }

    let value = best
        .tau()
        .ok_or_else(|| Error::NoValidSet("vat".into()))?;
    Ok(MeasureResult {
        kind: MeasureKind::Vat,
        value,
        witness: best.bits,
        exact: false,
        solver: Solver::Genetic,
    })
}

fn evaluate_all(g: &Graph, chromosomes: &mut [Chromosome]) {
    let n = g.node_count();
    chromosomes
        .par_iter_mut()
        .for_each_init(|| Scorer::new(n), |scorer, c| c.evaluate(g, scorer));
}

fn tournament<'a>(population: &'a [Chromosome], size: usize, rng: &mut Rng) -> &'a VertexSet {
    let mut winner = &population[rng.gen_range(0..population.len())];
    for _ in 1..size {
        let rival = &population[rng.gen_range(0..population.len())];
        if rival.rank(winner) == Ordering::Less {
            winner = rival;
        }
    }
    &winner.bits
}

/// Flips each bit independently with probability `p`, jumping between flips
/// with geometric gaps.
fn mutate(bits: &mut VertexSet, p: f64, rng: &mut Rng) {
    let n = bits.universe();
    if p <= 0.0 {
        return;
    }
    if p >= 1.0 {
        (0..n).for_each(|i| bits.toggle(i));
        return;
    }
    let log_q = (1.0 - p).ln();
    let mut i = 0usize;
    loop {
        let u: f64 = 1.0 - rng.gen::<f64>();
        let gap = (u.ln() / log_q).floor();
        if gap >= (n - i) as f64 {
            return;
        }
        i += gap as usize;
        bits.toggle(i);
        i += 1;
    }
}
