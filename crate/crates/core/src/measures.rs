//! Set-conditional resilience measures and exhaustive optimisation.
//!
//! Every measure is a function of a target set `S`: vertex attack tolerance
//! (VAT) and its unsmoothed form, conductance, vertex expansion, integrity,
//! toughness, tenacity and the scattering number. The graph-level value is the
//! optimum over all admissible `S`, which [`BruteForce`] finds by enumeration
//! for small graphs. Values are exact rationals.
//!
//! Admissible sets:
//!
//! * all measures except integrity range over nonempty proper subsets;
//!   integrity also admits `S = ∅`;
//! * conductance requires `Vol(S) ≤ Vol(V)/2` (ties admitted);
//! * toughness, tenacity and scattering require `S` to be a cut set,
//!   `ω(V−S) ≥ 2`.
//!
//! The scattering number is `max ω(V−S) − |S|`, and its smoothed inverse is
//! `h = 1/(sn+1)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mask::{MaskGraph, MAX_MASK_NODES};
use crate::vertex_set::{mask_witness_cmp, VertexSet};

/// Exact measure value.
pub type Value = Rational64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureKind {
    Vat,
    VatUnsmoothed,
    Conductance,
    VertexExpansion,
    Integrity,
    Toughness,
    Tenacity,
    Scattering,
    InvScattering,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 9] = [
        MeasureKind::Vat,
        MeasureKind::VatUnsmoothed,
        MeasureKind::Conductance,
        MeasureKind::VertexExpansion,
        MeasureKind::Integrity,
        MeasureKind::Toughness,
        MeasureKind::Tenacity,
        MeasureKind::Scattering,
        MeasureKind::InvScattering,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::Vat => "vat",
            MeasureKind::VatUnsmoothed => "vat-unsmoothed",
            MeasureKind::Conductance => "conductance",
            MeasureKind::VertexExpansion => "vertex-expansion",
            MeasureKind::Integrity => "integrity",
            MeasureKind::Toughness => "toughness",
            MeasureKind::Tenacity => "tenacity",
            MeasureKind::Scattering => "scattering",
            MeasureKind::InvScattering => "inv-scattering",
        }
    }

    /// Only the scattering number is maximised.
    pub fn is_maximization(self) -> bool {
        self == MeasureKind::Scattering
    }

    fn needs_cut_set(self) -> bool {
        matches!(
            self,
            MeasureKind::Toughness
                | MeasureKind::Tenacity
                | MeasureKind::Scattering
                | MeasureKind::InvScattering
        )
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase().replace('_', "-");
        MeasureKind::ALL
            .into_iter()
            .find(|k| k.name() == lower)
            .or(match lower.as_str() {
                "tau" => Some(MeasureKind::Vat),
                "tau-hat" => Some(MeasureKind::VatUnsmoothed),
                "h" => Some(MeasureKind::InvScattering),
                _ => None,
            })
            .ok_or_else(|| Error::InvalidParameter(format!("unknown measure `{s}`")))
    }
}

/// Which procedure produced a [`MeasureResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Solver {
    SetEvaluation,
    BruteForce,
    BranchAndBound,
    Genetic,
    HillClimb,
    GeneticHillClimb,
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Solver::SetEvaluation => "set-evaluation",
            Solver::BruteForce => "brute-force",
            Solver::BranchAndBound => "branch-and-bound",
            Solver::Genetic => "genetic",
            Solver::HillClimb => "hill-climb",
            Solver::GeneticHillClimb => "genetic+hill-climb",
        })
    }
}

/// An optimum (or best bound) together with the set that attains it.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureResult {
    pub kind: MeasureKind,
    pub value: Value,
    pub witness: VertexSet,
    /// `true` for a proven optimum, `false` for a heuristic bound.
    pub exact: bool,
    pub solver: Solver,
}

impl MeasureResult {
    pub fn value_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }
}

fn require_proper(s: &VertexSet) -> Result<()> {
    if s.is_proper() {
        Ok(())
    } else {
        Err(Error::DegenerateSet)
    }
}

fn ratio(num: usize, den: usize) -> Value {
    Value::new(num as i64, den as i64)
}

/// τ_S = |S| / (|V−S−C_max(V−S)| + 1).
pub fn tau(g: &Graph, s: &VertexSet) -> Result<Value> {
    require_proper(s)?;
    let stats = g.connected_components(s);
    Ok(ratio(s.len(), stats.remainder + 1))
}

/// Unsmoothed τ̂_S = |S| / |V−S−C_max(V−S)|; undefined when nothing is split off.
pub fn tau_hat(g: &Graph, s: &VertexSet) -> Result<Value> {
    require_proper(s)?;
    let stats = g.connected_components(s);
    if stats.remainder == 0 {
        return Err(Error::UndefinedUnsmoothed);
    }
    Ok(ratio(s.len(), stats.remainder))
}

/// Φ_S = |Cut(S, V−S)| / Vol(S), for `Vol(S) ≤ Vol(V)/2`.
pub fn conductance(g: &Graph, s: &VertexSet) -> Result<Value> {
    require_proper(s)?;
    let volume = g.volume(s);
    let total = 2 * g.edge_count();
    if 2 * volume > total {
        return Err(Error::VolumeExceeded { volume, total });
    }
    if volume == 0 {
        return Err(Error::DegenerateSet);
    }
    Ok(ratio(g.cut_size(s)?, volume))
}

/// ε^V_S = n·|N(S)| / (|S|·|V−S|).
pub fn vertex_expansion(g: &Graph, s: &VertexSet) -> Result<Value> {
    require_proper(s)?;
    let n = g.node_count();
    let boundary = g.outer_boundary(s).len();
    Ok(ratio(n * boundary, s.len() * (n - s.len())))
}

/// I_S = |S| + C_max(V−S). The empty set is admissible.
pub fn integrity(g: &Graph, s: &VertexSet) -> Result<usize> {
    if s.is_full() {
        return Err(Error::DegenerateSet);
    }
    Ok(s.len() + g.connected_components(s).c_max)
}

fn cut_set_stats(g: &Graph, s: &VertexSet) -> Result<crate::graph::PartitionStats> {
    require_proper(s)?;
    let stats = g.connected_components(s);
    if stats.omega < 2 {
        return Err(Error::NotACutSet);
    }
    Ok(stats)
}

/// t_S = |S| / ω(V−S), over cut sets.
pub fn toughness(g: &Graph, s: &VertexSet) -> Result<Value> {
    let stats = cut_set_stats(g, s)?;
    Ok(ratio(s.len(), stats.omega))
}

/// T_S = (|S| + C_max(V−S)) / ω(V−S), over cut sets.
pub fn tenacity(g: &Graph, s: &VertexSet) -> Result<Value> {
    let stats = cut_set_stats(g, s)?;
    Ok(ratio(s.len() + stats.c_max, stats.omega))
}

/// ω(V−S) − |S|, over cut sets. May be zero or negative.
pub fn scattering(g: &Graph, s: &VertexSet) -> Result<i64> {
    let stats = cut_set_stats(g, s)?;
    Ok(stats.omega as i64 - s.len() as i64)
}

fn smoothed_inverse(sn: i64) -> Result<Value> {
    if sn == -1 {
        return Err(Error::UndefinedH);
    }
    Ok(Value::new(1, sn + 1))
}

/// Evaluates `kind` on a single set. For [`MeasureKind::InvScattering`] this is
/// `1/(ω(V−S) − |S| + 1)`.
pub fn evaluate(g: &Graph, kind: MeasureKind, s: &VertexSet) -> Result<Value> {
    match kind {
        MeasureKind::Vat => tau(g, s),
        MeasureKind::VatUnsmoothed => tau_hat(g, s),
        MeasureKind::Conductance => conductance(g, s),
        MeasureKind::VertexExpansion => vertex_expansion(g, s),
        MeasureKind::Integrity => integrity(g, s).map(|v| Value::from_integer(v as i64)),
        MeasureKind::Toughness => toughness(g, s),
        MeasureKind::Tenacity => tenacity(g, s),
        MeasureKind::Scattering => scattering(g, s).map(Value::from_integer),
        MeasureKind::InvScattering => smoothed_inverse(scattering(g, s)?),
    }
}

/// h(G) = 1/(sn(G)+1), with the maximising set as witness.
pub fn inv_scattering(g: &Graph) -> Result<MeasureResult> {
    BruteForce::default().optimize(g, MeasureKind::InvScattering)
}

/// Exhaustive optimisation with the default node cap.
pub fn brute_force_optimize(g: &Graph, kind: MeasureKind) -> Result<MeasureResult> {
    BruteForce::default().optimize(g, kind)
}

pub(crate) fn check_solvable(g: &Graph) -> Result<()> {
    if g.node_count() < 3 {
        return Err(Error::TooSmall(g.node_count()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Unreduced fraction with positive denominator, compared exactly.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Frac {
    pub num: i64,
    pub den: i64,
}

impl Frac {
    #[inline]
    pub(crate) fn new(num: i64, den: i64) -> Self {
        debug_assert!(den > 0);
        Frac { num, den }
    }

    #[inline]
    pub(crate) fn cmp(self, other: Frac) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }

    pub(crate) fn value(self) -> Value {
        Value::new(self.num, self.den)
    }
}

/// Running optimum with the deterministic witness tie-break: smallest set,
/// then lexicographically least.
#[derive(Clone, Copy)]
struct Best {
    entry: Option<(Frac, u64)>,
}

impl Best {
    #[inline]
    fn offer(&mut self, f: Frac, mask: u64) {
        let better = match self.entry {
            None => true,
            Some((cur, cur_mask)) => match f.cmp(cur) {
                Ordering::Less => true,
                Ordering::Equal => mask_witness_cmp(mask, cur_mask) == Ordering::Less,
                Ordering::Greater => false,
            },
        };
        if better {
            self.entry = Some((f, mask));
        }
    }
}

/// Exhaustive enumeration of all `2^n` target sets.
#[derive(Clone, Copy, Debug)]
pub struct BruteForce {
    pub cap: usize,
}

impl Default for BruteForce {
    fn default() -> Self {
        BruteForce { cap: 26 }
    }
}

impl BruteForce {
    pub fn with_cap(cap: usize) -> Self {
        BruteForce { cap }
    }

    fn prepare(&self, g: &Graph) -> Result<MaskGraph> {
        check_solvable(g)?;
        let n = g.node_count();
        if n > self.cap || n > MAX_MASK_NODES {
            return Err(Error::TooLarge {
                n,
                cap: self.cap.min(MAX_MASK_NODES),
            });
        }
        Ok(MaskGraph::new(g).expect("size checked"))
    }

    pub fn optimize(&self, g: &Graph, kind: MeasureKind) -> Result<MeasureResult> {
        self.optimize_many(g, &[kind])?
            .pop()
            .expect("one result per kind")
    }

    /// Optimises several measures in a single enumeration pass.
    pub fn optimize_many(
        &self,
        g: &Graph,
        kinds: &[MeasureKind],
    ) -> Result<Vec<Result<MeasureResult>>> {
        let mg = self.prepare(g)?;
        let n = mg.n();
        let all = mg.all();
        let total_volume = mg.total_volume();
        let need_omega = kinds.iter().any(|k| {
            k.needs_cut_set() || matches!(k, MeasureKind::Vat | MeasureKind::VatUnsmoothed | MeasureKind::Integrity)
        });
        let mut bests = vec![Best { entry: None }; kinds.len()];

        for mask in 0..all {
            let size = mask.count_ones() as i64;
            let (omega, c_max) = if need_omega {
                mg.components(all & !mask)
            } else {
                (0, 0)
            };
            let (omega, c_max) = (omega as i64, c_max as i64);
            let survivors = n as i64 - size;
            let remainder = survivors - c_max;
            for (kind, best) in kinds.iter().zip(bests.iter_mut()) {
                if mask == 0 && *kind != MeasureKind::Integrity {
                    continue;
                }
                let candidate = match kind {
                    MeasureKind::Vat => Some(Frac::new(size, remainder + 1)),
                    MeasureKind::VatUnsmoothed => {
                        (remainder > 0).then(|| Frac::new(size, remainder))
                    }
                    MeasureKind::Conductance => {
                        let vol = mg.volume(mask);
                        (2 * vol <= total_volume && vol > 0)
                            .then(|| Frac::new(mg.cut(mask) as i64, vol as i64))
                    }
                    MeasureKind::VertexExpansion => {
                        let boundary = mg.boundary(mask).count_ones() as i64;
                        Some(Frac::new(n as i64 * boundary, size * survivors))
                    }
                    MeasureKind::Integrity => Some(Frac::new(size + c_max, 1)),
                    _ if omega < 2 => None,
                    MeasureKind::Toughness => Some(Frac::new(size, omega)),
                    MeasureKind::Tenacity => Some(Frac::new(size + c_max, omega)),
                    // Maximise ω − |S| by minimising its negation.
                    MeasureKind::Scattering | MeasureKind::InvScattering => {
                        Some(Frac::new(size - omega, 1))
                    }
                };
                if let Some(f) = candidate {
                    best.offer(f, mask);
                }
            }
        }

        Ok(kinds
            .iter()
            .zip(bests)
            .map(|(&kind, best)| {
                let (frac, mask) = best.entry.ok_or(if kind.needs_cut_set() {
                    Error::NoCutSet
                } else {
                    Error::NoValidSet(kind.name().to_string())
                })?;
                let value = match kind {
                    MeasureKind::Scattering => Value::from_integer(-frac.num),
                    MeasureKind::InvScattering => smoothed_inverse(-frac.num)?,
                    _ => frac.value(),
                };
                Ok(MeasureResult {
                    kind,
                    value,
                    witness: VertexSet::from_mask(n, mask),
                    exact: true,
                    solver: Solver::BruteForce,
                })
            })
            .collect())
    }

    /// Conductance and every set attaining it.
    pub fn conductance_optima(&self, g: &Graph) -> Result<(Value, Vec<VertexSet>)> {
        let mg = self.prepare(g)?;
        let all = mg.all();
        let total = mg.total_volume();
        let mut best: Option<Frac> = None;
        let mut sets = Vec::new();
        for mask in 1..all {
            let vol = mg.volume(mask);
            if 2 * vol > total || vol == 0 {
                continue;
            }
            let f = Frac::new(mg.cut(mask) as i64, vol as i64);
            match best.map(|b| f.cmp(b)) {
                None | Some(Ordering::Less) => {
                    best = Some(f);
                    sets.clear();
                    sets.push(mask);
                }
                Some(Ordering::Equal) => sets.push(mask),
                Some(Ordering::Greater) => {}
            }
        }
        let best = best.ok_or_else(|| Error::NoValidSet("conductance".into()))?;
        Ok((
            best.value(),
            sets.into_iter()
                .map(|m| VertexSet::from_mask(mg.n(), m))
                .collect(),
        ))
    }
}
