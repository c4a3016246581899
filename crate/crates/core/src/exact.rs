//! Exact τ by branch-and-bound, and checks of the regular-graph conductance
//! results against exact values.
//!
//! The search fixes nodes in descending-degree order, trying "attack" before
//! "spare". With `k` nodes attacked and spared set `X`, every completion `S'`
//! keeps `X` among its survivors, so its largest component is at least
//! `c = max(1, c_max(G[X]))` and
//!
//! ```text
//! τ_S' ≥ k / (n − k − c + 1).
//! ```
//!
//! A subtree is cut when this bound exceeds the incumbent, or equals it with
//! more nodes than the incumbent witness. Ties are therefore never lost, and
//! the witness is the same one brute-force enumeration picks (smallest set,
//! then lexicographically least).

use std::cmp::Ordering;
use std::sync::Mutex;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::heuristic;
use crate::mask::{MaskGraph, MAX_MASK_NODES};
use crate::measures::{check_solvable, BruteForce, Frac, MeasureKind, MeasureResult, Solver, Value};
use crate::vertex_set::{mask_witness_cmp, VertexSet};

pub const DEFAULT_NODE_CAP: usize = 40;

/// Exact τ with the default options and the given node cap.
pub fn bnb_vat(g: &Graph, node_cap: usize) -> Result<MeasureResult> {
    BranchAndBound {
        cap: node_cap,
        ..BranchAndBound::default()
    }
    .solve(g)
    .map(|r| r.result)
}

#[derive(Clone, Debug)]
pub struct BranchAndBound {
    pub cap: usize,
    /// Worker threads; 1 runs the search sequentially.
    pub threads: usize,
    /// Disable to enumerate every set (for soundness checks).
    pub prune: bool,
    /// Start from a hill-climbed incumbent instead of none.
    pub warm_start: bool,
}

impl Default for BranchAndBound {
    fn default() -> Self {
        BranchAndBound {
            cap: DEFAULT_NODE_CAP,
            threads: 1,
            prune: true,
            warm_start: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BnbReport {
    pub result: MeasureResult,
    /// Incumbent τ after every improvement, warm start first.
    pub trace: Vec<Value>,
    /// Candidate sets scored.
    pub evaluated: u64,
}

#[derive(Clone, Copy)]
struct Incumbent {
    tau: Frac,
    mask: u64,
}

impl Incumbent {
    fn beats(&self, other: &Incumbent) -> bool {
        match self.tau.cmp(other.tau) {
            Ordering::Less => true,
            Ordering::Equal => mask_witness_cmp(self.mask, other.mask) == Ordering::Less,
            Ordering::Greater => false,
        }
    }
}

struct Shared {
    best: Mutex<(Option<Incumbent>, Vec<Value>)>,
}

impl Shared {
    fn offer(&self, cand: Incumbent) -> Option<Incumbent> {
        let mut guard = self.best.lock().unwrap();
        let (best, trace) = &mut *guard;
        if best.is_none_or(|b| cand.beats(&b)) {
            *best = Some(cand);
            trace.push(cand.tau.value());
        }
        *best
    }

    fn get(&self) -> Option<Incumbent> {
        self.best.lock().unwrap().0
    }
}

const SYNC_EVERY: u64 = 1 << 12;

struct Search<'a> {
    mg: &'a MaskGraph,
    order: &'a [usize],
    n: u32,
    prune: bool,
    best: Option<Incumbent>,
    shared: &'a Shared,
    evaluated: u64,
}

impl Search<'_> {
    /// `true` when nothing in the subtree with `k` attacked and spared set
    /// `spared` can displace the incumbent.
    #[inline]
    fn hopeless(&self, k: u32, spared: u64) -> bool {
        if !self.prune {
            return false;
        }
        let Some(best) = self.best else { return false };
        let c = self.mg.largest(spared).max(1);
        let bound = Frac::new(k as i64, (self.n - k - c + 1) as i64);
        match bound.cmp(best.tau) {
            Ordering::Greater => true,
            Ordering::Equal => k > best.mask.count_ones(),
            Ordering::Less => false,
        }
    }

    fn score(&mut self, s: u64, k: u32) {
        self.evaluated += 1;
        let c = self.mg.largest(self.mg.all() & !s);
        let cand = Incumbent {
            tau: Frac::new(k as i64, (self.n - k - c + 1) as i64),
            mask: s,
        };
        if self.best.is_none_or(|b| cand.beats(&b)) {
            self.best = self.shared.offer(cand);
        }
        if self.evaluated.is_multiple_of(SYNC_EVERY) {
            self.best = self.shared.get();
        }
    }

    /// Explores every set that extends `s` by nodes from `order[depth..]`,
    /// with `spared` already fixed outside.
    fn descend(&mut self, depth: usize, s: u64, k: u32, mut spared: u64) {
        for idx in depth..self.order.len() {
            let v = self.order[idx];
            let k2 = k + 1;
            if k2 == self.n {
                break;
            }
            // Later siblings only spare more nodes, so their bound is no lower.
            if self.hopeless(k2, spared) {
                break;
            }
            let s2 = s | 1 << v;
            self.score(s2, k2);
            self.descend(idx + 1, s2, k2, spared);
            spared |= 1 << v;
        }
    }
}

impl BranchAndBound {
    pub fn solve(&self, g: &Graph) -> Result<BnbReport> {
        check_solvable(g)?;
        let n = g.node_count();
        let cap = self.cap.min(MAX_MASK_NODES);
        if self.cap > DEFAULT_NODE_CAP {
            log::warn!("branch-and-bound cap raised to {}; runtime grows exponentially", self.cap);
        }
        if n > cap {
            return Err(Error::TooLarge { n, cap });
        }
        let mg = MaskGraph::new(g).expect("size checked");

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));

        let shared = Shared {
            best: Mutex::new((None, Vec::new())),
        };
        if self.warm_start {
            let start = VertexSet::from_indices(n, [order[0]]);
            let warm = heuristic::hill_climb(g, &start, 2)?;
            let mask = warm.witness.to_mask().expect("n <= 64");
            shared.offer(Incumbent {
                tau: Frac::new(*warm.value.numer(), *warm.value.denom()),
                mask,
            });
        }

        let evaluated = if self.threads <= 1 {
            let mut search = Search {
                mg: &mg,
                order: &order,
                n: n as u32,
                prune: self.prune,
                best: shared.get(),
                shared: &shared,
                evaluated: 0,
            };
            search.descend(0, 0, 0, 0);
            search.evaluated
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(self.threads)
                .build()
                .map_err(|e| Error::InvalidParameter(e.to_string()))?;
            // One task per first attacked node; spared nodes are the ones before it.
            pool.install(|| {
                (0..n)
                    .into_par_iter()
                    .map(|idx| {
                        let spared = order[..idx].iter().fold(0u64, |m, &v| m | 1 << v);
                        let mut search = Search {
                            mg: &mg,
                            order: &order,
                            n: n as u32,
                            prune: self.prune,
                            best: shared.get(),
                            shared: &shared,
                            evaluated: 0,
                        };
                        if n > 1 && !search.hopeless(1, spared) {
                            let s = 1u64 << order[idx];
                            search.score(s, 1);
                            search.descend(idx + 1, s, 1, spared);
                        }
                        search.evaluated
                    })
                    .sum()
            })
        };

        let (best, trace) = shared.best.into_inner().unwrap();
        let best = best.ok_or_else(|| Error::NoValidSet("vat".into()))?;
        Ok(BnbReport {
            result: MeasureResult {
                kind: MeasureKind::Vat,
                value: best.tau.value(),
                witness: VertexSet::from_mask(n, best.mask),
                exact: true,
                solver: Solver::BranchAndBound,
            },
            trace,
            evaluated,
        })
    }
}

fn require_regular(g: &Graph) -> Result<usize> {
    check_solvable(g)?;
    g.regular_degree().ok_or(Error::NotRegular)
}

/// Outcome of testing "Φ(G) ≤ 1/d² ⇒ τ(G) < dΦ(G)" on one d-regular graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConductanceBoundReport {
    pub d: usize,
    pub phi: Value,
    pub tau: Value,
    /// Φ ≤ 1/d².
    pub hypothesis_holds: bool,
    /// τ < dΦ.
    pub conclusion_holds: bool,
    /// τ ≤ dΦ.
    pub weak_conclusion_holds: bool,
}

impl ConductanceBoundReport {
    /// The hypothesis fails, so the graph says nothing about the claim.
    pub fn vacuous(&self) -> bool {
        !self.hypothesis_holds
    }
}

/// Node cap for the conductance enumeration in the regular-graph checks.
pub const CHECK_NODE_CAP: usize = 24;

pub fn check_theorem_3_1(g: &Graph) -> Result<ConductanceBoundReport> {
    let d = require_regular(g)?;
    let phi = BruteForce::with_cap(CHECK_NODE_CAP)
        .optimize(g, MeasureKind::Conductance)?
        .value;
    let tau = bnb_vat(g, DEFAULT_NODE_CAP)?.value;
    let d_phi = phi * Value::from_integer(d as i64);
    Ok(ConductanceBoundReport {
        d,
        phi,
        tau,
        hypothesis_holds: phi <= Value::new(1, (d * d) as i64),
        conclusion_holds: tau < d_phi,
        weak_conclusion_holds: tau <= d_phi,
    })
}

/// Every conductance-optimal set of a regular graph, and which of them induce
/// connected subgraphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectedMinimizerReport {
    pub d: usize,
    pub phi: Value,
    pub optimal_sets: Vec<VertexSet>,
    pub connected_sets: Vec<VertexSet>,
}

impl ConnectedMinimizerReport {
    pub fn holds(&self) -> bool {
        !self.connected_sets.is_empty()
    }
}

pub fn check_lemma_3_2(g: &Graph) -> Result<ConnectedMinimizerReport> {
    let d = require_regular(g)?;
    let (phi, optimal_sets) = BruteForce::with_cap(CHECK_NODE_CAP).conductance_optima(g)?;
    let connected_sets = optimal_sets
        .iter()
        .filter(|s| g.induces_connected(s))
        .cloned()
        .collect();
    Ok(ConnectedMinimizerReport {
        d,
        phi,
        optimal_sets,
        connected_sets,
    })
}
