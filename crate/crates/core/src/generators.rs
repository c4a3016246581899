//! Graph families: the fixed comparison graphs (star, barbell, big barbell,
//! 3-regular wheel) and seeded random models (preferential attachment and
//! random graphs with a prescribed degree sequence).
//!
//! Random generators draw from [`crate::rng`], so the same parameters and seed
//! give the same graph everywhere.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{self, Rng as ChaRng};

/// `Star(n)`: node 1 (index 0) joined to every other node.
pub fn gen_star(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("star needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (1..n).map(|v| (0, v)))
}

/// The 10-node 3-regular barbell: two 5-node sides joined by one bridge.
///
/// Each side is K5 minus the edges `e–a`, `e–b` and `c–d`, where `e` is the
/// bridge endpoint (nodes 1 and 6 in 1-based labels).
pub fn gen_barbell10() -> Graph {
    let side = [(0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4)];
    let edges = side
        .iter()
        .copied()
        .chain(side.iter().map(|&(u, v)| (u + 5, v + 5)))
        .chain([(0, 5)]);
    Graph::from_edges(10, edges).expect("static topology")
}

/// Two `k`-cliques joined by a single edge between node 1 and node `k+1`.
pub fn gen_big_barbell(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("big barbell needs k >= 3, got {k}")));
    }
    let clique = |off: usize| (0..k).flat_map(move |u| (u + 1..k).map(move |v| (u + off, v + off)));
    Graph::from_edges(2 * k, clique(0).chain(clique(k)).chain([(0, k)]))
}

/// Realisations of the 10-node, 15-edge 3-regular "wheel".
///
/// The Möbius ladder is the default: it reproduces the comparison table's
/// wheel row (τ = 1, I/n = .6, t = 1, T = 1.2, h = 1). The prism has
/// scattering number −1, which leaves h undefined.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WheelTopology {
    /// Two 5-cycles joined by five spokes.
    Prism,
    /// A 10-cycle with the five diameters as spokes.
    #[default]
    MobiusLadder,
}

impl FromStr for WheelTopology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prism" => Ok(WheelTopology::Prism),
            "mobius" | "mobius-ladder" => Ok(WheelTopology::MobiusLadder),
            _ => Err(Error::InvalidParameter(format!("unknown wheel topology `{s}`"))),
        }
    }
}

pub fn gen_wheel10(topology: WheelTopology) -> Graph {
    match topology {
        WheelTopology::Prism => gen_ladder_ring(5).expect("static topology"),
        WheelTopology::MobiusLadder => Graph::from_edges(
            10,
            (0..10).map(|v| (v, (v + 1) % 10)).chain((0..5).map(|v| (v, v + 5))),
        )
        .expect("static topology"),
    }
}

pub fn gen_path(n: usize) -> Result<Graph> {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
}

pub fn gen_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
}

pub fn gen_complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("complete graph")
}

/// Circular ladder `C_k × K2`: a ring of `k` edges (2-cliques), 3-regular.
pub fn gen_ladder_ring(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("ladder ring needs k >= 3, got {k}")));
    }
    let edges = (0..k).flat_map(|i| {
        let j = (i + 1) % k;
        [(i, j), (i + k, j + k), (i, i + k)]
    });
    Graph::from_edges(2 * k, edges)
}

/// Ring of `k` diamonds (K4 minus an edge): the two degree-2 corners of each
/// diamond link to the neighbouring diamonds, so the result is 3-regular.
pub fn gen_diamond_ring(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("diamond ring needs k >= 2, got {k}")));
    }
    let n = 4 * k;
    let edges = (0..k).flat_map(|b| {
        let o = 4 * b;
        let next = 4 * ((b + 1) % k);
        // Corners o and o+3; the missing diamond edge is o–(o+3).
        [(o, o + 1), (o, o + 2), (o + 1, o + 2), (o + 1, o + 3), (o + 2, o + 3), (o + 3, next)]
    });
    Graph::from_edges(n, edges)
}

/// Preferential attachment: a clique on `m + 1` nodes, then every new node
/// links to `m` distinct existing nodes drawn with probability proportional
/// to their current degree.
pub fn gen_ba(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if m < 1 || n <= m {
        return Err(Error::InvalidParameter(format!(
            "preferential attachment needs n > m >= 1, got n={n}, m={m}"
        )));
    }
    let mut rng = rng::seeded(seed);
    let mut edges = Vec::with_capacity(m * (m + 1) / 2 + m * (n - m - 1));
    // Every edge endpoint once, so a uniform draw is degree-proportional.
    let mut endpoints = Vec::with_capacity(2 * edges.capacity());
    for u in 0..=m {
        for v in u + 1..=m {
            edges.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    let mut chosen = Vec::with_capacity(m);
    for v in m + 1..n {
        chosen.clear();
        while chosen.len() < m {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            edges.push((t, v));
            endpoints.extend([t, v]);
        }
    }
    Graph::from_edges(n, edges)
}

/// A validated graphical degree sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    pub fn new(degrees: Vec<usize>) -> Result<Self> {
        let n = degrees.len();
        if let Some(v) = degrees.iter().position(|&d| d == 0) {
            return Err(Error::NonGraphical(format!("node {} has degree 0", v + 1)));
        }
        if let Some(v) = degrees.iter().position(|&d| d >= n) {
            return Err(Error::NonGraphical(format!(
                "node {} has degree {} in a graph of {n} nodes",
                v + 1,
                degrees[v]
            )));
        }
        if degrees.iter().sum::<usize>() % 2 == 1 {
            return Err(Error::NonGraphical("odd degree sum".into()));
        }
        if !erdos_gallai(&degrees) {
            return Err(Error::NonGraphical("fails the Erdős–Gallai test".into()));
        }
        Ok(DegreeSequence(degrees))
    }

    pub fn of(g: &Graph) -> Result<Self> {
        Self::new(g.degree_sequence())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn erdos_gallai(degrees: &[usize]) -> bool {
    let mut d = degrees.to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    let n = d.len();
    let mut lhs = 0;
    for k in 1..=n {
        lhs += d[k - 1];
        let rhs = k * (k - 1) + d[k..].iter().map(|&x| x.min(k)).sum::<usize>();
        if lhs > rhs {
            return false;
        }
    }
    true
}

/// Output of [`gen_plod_from_degrees`].
#[derive(Clone, Debug)]
pub struct PlodGraph {
    pub graph: Graph,
    /// `false` when every attempt produced a disconnected realisation.
    pub connected: bool,
    pub attempts: usize,
}

/// Random graph with exactly the given degrees, by stub matching.
///
/// Each node gets `deg(v)` stubs and the shuffled stubs are paired. A pair that
/// would form a self-loop or a parallel edge is re-drawn by swapping endpoints
/// with a random accepted edge, which keeps all degrees. A fresh matching is
/// drawn while the result is disconnected, up to `max_retries` matchings; the
/// last simple realisation is then returned with `connected == false`.
pub fn gen_plod_from_degrees(
    degrees: &DegreeSequence,
    seed: u64,
    max_retries: usize,
) -> Result<PlodGraph> {
    let mut rng = rng::seeded(seed);
    let n = degrees.len();
    let attempts = max_retries.max(1);
    let mut last = None;
    for attempt in 1..=attempts {
        let Some(edges) = match_stubs(degrees.as_slice(), &mut rng) else {
            continue;
        };
        let graph = Graph::from_edges(n, edges)?;
        if graph.is_connected() {
            return Ok(PlodGraph {
                graph,
                connected: true,
                attempts: attempt,
            });
        }
        last = Some(graph);
    }
    match last {
        Some(graph) => {
            log::warn!("no connected realisation in {attempts} attempts");
            Ok(PlodGraph {
                graph,
                connected: false,
                attempts,
            })
        }
        None => Err(Error::Unrealizable(attempts)),
    }
}

fn match_stubs(degrees: &[usize], rng: &mut ChaRng) -> Option<Vec<(usize, usize)>> {
    let mut stubs: Vec<usize> = degrees
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| std::iter::repeat_n(v, d))
        .collect();
    stubs.shuffle(rng);

    let key = |u: usize, v: usize| (u.min(v), u.max(v));
    let mut present = HashSet::with_capacity(stubs.len() / 2);
    let mut edges = Vec::with_capacity(stubs.len() / 2);
    let mut rejected = Vec::new();
    for pair in stubs.chunks_exact(2) {
        let (u, v) = (pair[0], pair[1]);
        if u != v && present.insert(key(u, v)) {
            edges.push((u, v));
        } else {
            rejected.push((u, v));
        }
    }

    const SWAP_TRIES: usize = 200;
    for (a, b) in rejected {
        let mut fixed = false;
        for _ in 0..SWAP_TRIES {
            if edges.is_empty() {
                break;
            }
            let i = rng.gen_range(0..edges.len());
            let (c, d) = if rng.gen_bool(0.5) { edges[i] } else { (edges[i].1, edges[i].0) };
            // Replace {a,b} + {c,d} with {a,c} + {b,d}.
            if a == c || b == d || key(a, c) == key(b, d) {
                continue;
            }
            if present.contains(&key(a, c)) || present.contains(&key(b, d)) {
                continue;
            }
            present.remove(&key(c, d));
            edges.swap_remove(i);
            present.insert(key(a, c));
            present.insert(key(b, d));
            edges.push((a, c));
            edges.push((b, d));
            fixed = true;
            break;
        }
        if !fixed {
            return None;
        }
    }
    Some(edges)
}

/// Connected random graph: a random recursive tree plus each remaining pair
/// independently with probability `p`.
pub fn gen_random_connected(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n == 0 || !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("need n >= 1 and p in [0,1], got n={n}, p={p}")));
    }
    let mut rng = rng::seeded(seed);
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(&mut rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((labels[i], labels[j]));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Connected random `d`-regular graph by stub matching with rejection.
pub fn gen_random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    let degrees = DegreeSequence::new(vec![d; n])?;
    let out = gen_plod_from_degrees(&degrees, seed, 1000)?;
    if !out.connected {
        return Err(Error::Unrealizable(out.attempts));
    }
    Ok(out.graph)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Star,
    Barbell10,
    BigBarbell,
    Wheel10,
    Ba,
    Plod,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "star" => Ok(Family::Star),
            "barbell" | "barbell10" => Ok(Family::Barbell10),
            "big-barbell" | "big_barbell" => Ok(Family::BigBarbell),
            "wheel" | "wheel10" => Ok(Family::Wheel10),
            "ba" => Ok(Family::Ba),
            "plod" => Ok(Family::Plod),
            _ => Err(Error::InvalidParameter(format!("unknown family `{s}`"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Star => "star",
            Family::Barbell10 => "barbell10",
            Family::BigBarbell => "big-barbell",
            Family::Wheel10 => "wheel10",
            Family::Ba => "ba",
            Family::Plod => "plod",
        })
    }
}

/// A fully parameterised generator call.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenSpec {
    Star { n: usize },
    Barbell10,
    BigBarbell { k: usize },
    Wheel10(WheelTopology),
    Ba { n: usize, m: usize, seed: u64 },
    Plod { degrees: DegreeSequence, seed: u64, max_retries: usize },
}

impl GenSpec {
    pub fn family(&self) -> Family {
        match self {
            GenSpec::Star { .. } => Family::Star,
            GenSpec::Barbell10 => Family::Barbell10,
            GenSpec::BigBarbell { .. } => Family::BigBarbell,
            GenSpec::Wheel10(_) => Family::Wheel10,
            GenSpec::Ba { .. } => Family::Ba,
            GenSpec::Plod { .. } => Family::Plod,
        }
    }

    /// Generates the graph. A PLOD draw that never connected is still returned.
    pub fn generate(&self) -> Result<Graph> {
        match self {
            GenSpec::Star { n } => gen_star(*n),
            GenSpec::Barbell10 => Ok(gen_barbell10()),
            GenSpec::BigBarbell { k } => gen_big_barbell(*k),
            GenSpec::Wheel10(t) => Ok(gen_wheel10(*t)),
            GenSpec::Ba { n, m, seed } => gen_ba(*n, *m, *seed),
            GenSpec::Plod {
                degrees,
                seed,
                max_retries,
            } => gen_plod_from_degrees(degrees, *seed, *max_retries).map(|p| p.graph),
        }
    }
}
