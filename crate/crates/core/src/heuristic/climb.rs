use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measures::{check_solvable, MeasureKind, MeasureResult, Solver, Value};
use crate::vertex_set::VertexSet;

use super::eval::{better, FlipTable, Score, Scorer};
use super::mutation::MutationVector;

/// A finished climb and the τ of every accepted state, starting set first
/// when it is not degenerate.
#[derive(Clone, Debug)]
pub struct ClimbOutcome {
    pub result: MeasureResult,
    pub accepted: Vec<Value>,
    pub evaluations: u64,
}

/// Lexicographic hill climbing over Hamming neighbourhoods.
///
/// From `start`, every distance-`j` neighbour is tried in [`MutationVector`]
/// order, beginning with `j = 1`. The first neighbour with strictly smaller τ
/// is accepted and the scan restarts at `j = 1`; a fruitless scan moves to
/// `j + 1`, and the climb ends after a fruitless scan at `max_j`.
pub fn hill_climb(g: &Graph, start: &VertexSet, max_j: usize) -> Result<MeasureResult> {
    hill_climb_trace(g, start, max_j).map(|o| o.result)
}

pub fn hill_climb_trace(g: &Graph, start: &VertexSet, max_j: usize) -> Result<ClimbOutcome> {
    check_solvable(g)?;
    if start.universe() != g.node_count() {
        return Err(Error::InvalidParameter(format!(
            "start set over {} nodes for a graph of {}",
            start.universe(),
            g.node_count()
        )));
    }
    if max_j == 0 {
        return Err(Error::InvalidParameter("max_j must be at least 1".into()));
    }
    Climber::new(g.node_count()).run(g, start.clone(), max_j)
}

/// Reusable buffers for repeated climbs on one graph.
pub(crate) struct Climber {
    table: FlipTable,
    scorer: Scorer,
    base: VertexSet,
}

impl Climber {
    pub(crate) fn new(n: usize) -> Self {
        Climber {
            table: FlipTable::new(n),
            scorer: Scorer::new(n),
            base: VertexSet::empty(n),
        }
    }

    pub(crate) fn run(&mut self, g: &Graph, mut s: VertexSet, max_j: usize) -> Result<ClimbOutcome> {
        let n = g.node_count();
        let mut current: Score = self.scorer.score(g, &s);
        let mut accepted: Vec<Value> = current.iter().map(|f| f.value()).collect();
        let mut evaluations = 1u64;
        let mut j = 1;

        'scan: while j <= max_j.min(n) {
            let mut m = MutationVector::first(j, n)?;
            let mut cached: Option<Vec<usize>> = None;
            loop {
                let (prefix, last) = m.indices().split_at(j - 1);
                if cached.as_deref() != Some(prefix) {
                    self.base.clone_from(&s);
                    for &i in prefix {
                        self.base.toggle(i - 1);
                    }
                    self.table.rebuild(g, &self.base);
                    cached = Some(prefix.to_vec());
                }
                let v = last[0] - 1;
                let candidate = self.table.flip(g, &self.base, v);
                evaluations += 1;
                if better(candidate, current) {
                    s.clone_from(&self.base);
                    s.toggle(v);
                    current = candidate;
                    accepted.push(candidate.expect("better is never degenerate").value());
                    j = 1;
                    continue 'scan;
                }
                if !m.advance(n) {
                    break;
                }
            }
            j += 1;
        }

        let value = current
            .ok_or_else(|| Error::NoValidSet("vat".into()))?
            .value();
        Ok(ClimbOutcome {
            result: MeasureResult {
                kind: MeasureKind::Vat,
                value,
                witness: s,
                exact: false,
                solver: Solver::HillClimb,
            },
            accepted,
            evaluations,
        })
    }
}
