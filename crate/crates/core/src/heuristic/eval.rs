//! τ scoring for the local searches.
//!
//! [`Scorer`] evaluates one set from scratch. [`FlipTable`] is built once for a
//! base set `T` and then scores `T` with any single node flipped in O(deg):
//!
//! * flipping a removed node back in merges it with the distinct surviving
//!   components around it;
//! * removing a survivor `v` splits its component into the pieces left by
//!   deleting `v`, whose largest size comes from one articulation-point pass.

use std::cmp::Ordering;

use crate::graph::{ComponentScanner, Graph};
use crate::measures::Frac;
use crate::vertex_set::VertexSet;

/// τ as an exact fraction; `None` for the degenerate sets ∅ and V.
pub(crate) type Score = Option<Frac>;

#[inline]
pub(crate) fn score_from(n: usize, k: usize, survivors: usize, c_max: usize) -> Score {
    (k != 0 && k != n).then(|| Frac::new(k as i64, (survivors - c_max + 1) as i64))
}

/// Whether `a` is a strictly smaller τ than `b`. Degenerate sets rank last.
#[inline]
pub(crate) fn better(a: Score, b: Score) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => x.cmp(y) == Ordering::Less,
        (Some(_), None) => true,
        (None, _) => false,
    }
}

/// Total order: τ, then witness order on the sets.
pub(crate) fn rank(a: (Score, &VertexSet), b: (Score, &VertexSet)) -> Ordering {
    let by_score = match (a.0, b.0) {
        (Some(x), Some(y)) => x.cmp(y),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    };
    by_score.then_with(|| a.1.witness_cmp(b.1))
}

pub(crate) struct Scorer {
    scanner: ComponentScanner,
}

impl Scorer {
    pub(crate) fn new(n: usize) -> Self {
        Scorer {
            scanner: ComponentScanner::new(n),
        }
    }

    pub(crate) fn score(&mut self, g: &Graph, s: &VertexSet) -> Score {
        let n = g.node_count();
        if s.is_empty() || s.len() == n {
            return None;
        }
        let (c_max, survivors) = self.scanner.largest_component(g, s);
        score_from(n, s.len(), survivors, c_max)
    }
}

const NONE: u32 = u32::MAX;

pub(crate) struct FlipTable {
    n: usize,
    k: usize,
    survivors: usize,
    comp: Vec<u32>,
    comp_size: Vec<u32>,
    top1: u32,
    top1_id: u32,
    top2: u32,
    max_piece: Vec<u32>,
    // Articulation pass scratch.
    disc: Vec<u32>,
    low: Vec<u32>,
    sub: Vec<u32>,
    sep_sum: Vec<u32>,
    sep_max: Vec<u32>,
    parent: Vec<u32>,
    order: Vec<u32>,
    stack: Vec<(u32, u32)>,
    // Distinct-component stamps for flip-outs.
    stamp: Vec<u32>,
    epoch: u32,
}

impl FlipTable {
    pub(crate) fn new(n: usize) -> Self {
        FlipTable {
            n,
            k: 0,
            survivors: 0,
            comp: vec![NONE; n],
            comp_size: Vec::new(),
            top1: 0,
            top1_id: NONE,
            top2: 0,
            max_piece: vec![0; n],
            disc: vec![NONE; n],
            low: vec![0; n],
            sub: vec![0; n],
            sep_sum: vec![0; n],
            sep_max: vec![0; n],
            parent: vec![NONE; n],
            order: Vec::with_capacity(n),
            stack: Vec::with_capacity(n),
            stamp: Vec::new(),
            epoch: 0,
        }
    }

    /// Recomputes components and split sizes for base set `t`.
    pub(crate) fn rebuild(&mut self, g: &Graph, t: &VertexSet) {
        let n = self.n;
        debug_assert_eq!(g.node_count(), n);
        self.k = t.len();
        self.survivors = n - self.k;
        self.comp.fill(NONE);
        self.disc.fill(NONE);
        self.comp_size.clear();
        self.order.clear();
        let mut timer = 0u32;

        for root in 0..n {
            if t.contains(root) || self.disc[root] != NONE {
                continue;
            }
            let id = self.comp_size.len() as u32;
            let start = self.order.len();
            self.enter(root as u32, NONE, id, &mut timer);
            while let Some(top) = self.stack.last_mut() {
                let v = top.0 as usize;
                let nbrs = g.neighbors(v);
                if (top.1 as usize) < nbrs.len() {
                    let w = nbrs[top.1 as usize];
                    top.1 += 1;
                    if t.contains(w) {
                        continue;
                    }
                    if self.disc[w] == NONE {
                        self.enter(w as u32, v as u32, id, &mut timer);
                    } else if w as u32 != self.parent[v] {
                        self.low[v] = self.low[v].min(self.disc[w]);
                    }
                } else {
                    self.stack.pop();
                    let p = self.parent[v];
                    if p != NONE {
                        let p = p as usize;
                        self.low[p] = self.low[p].min(self.low[v]);
                        self.sub[p] += self.sub[v];
                        if self.low[v] >= self.disc[p] {
                            self.sep_sum[p] += self.sub[v];
                            self.sep_max[p] = self.sep_max[p].max(self.sub[v]);
                        }
                    }
                }
            }
            let size = (self.order.len() - start) as u32;
            for &u in &self.order[start..] {
                let u = u as usize;
                self.max_piece[u] = self.sep_max[u].max(size - 1 - self.sep_sum[u]);
            }
            self.comp_size.push(size);
        }

        self.top1 = 0;
        self.top1_id = NONE;
        self.top2 = 0;
        for (id, &size) in self.comp_size.iter().enumerate() {
            if size > self.top1 {
                self.top2 = self.top1;
                self.top1 = size;
                self.top1_id = id as u32;
            } else if size > self.top2 {
                self.top2 = size;
            }
        }
        if self.stamp.len() < self.comp_size.len() {
            self.stamp.resize(self.comp_size.len(), 0);
        }
    }

    #[inline]
    fn enter(&mut self, v: u32, parent: u32, id: u32, timer: &mut u32) {
        let u = v as usize;
        self.disc[u] = *timer;
        self.low[u] = *timer;
        *timer += 1;
        self.sub[u] = 1;
        self.sep_sum[u] = 0;
        self.sep_max[u] = 0;
        self.parent[u] = parent;
        self.comp[u] = id;
        self.order.push(v);
        self.stack.push((v, 0));
    }

    /// τ of the base set with `v` flipped.
    pub(crate) fn flip(&mut self, g: &Graph, t: &VertexSet, v: usize) -> Score {
        if t.contains(v) {
            self.epoch = self.epoch.wrapping_add(1);
            if self.epoch == 0 {
                self.stamp.fill(0);
                self.epoch = 1;
            }
            let mut merged = 1;
            for &w in g.neighbors(v) {
                let c = self.comp[w];
                if c != NONE && self.stamp[c as usize] != self.epoch {
                    self.stamp[c as usize] = self.epoch;
                    merged += self.comp_size[c as usize];
                }
            }
            let c_max = self.top1.max(merged) as usize;
            score_from(self.n, self.k - 1, self.survivors + 1, c_max)
        } else {
            let c = self.comp[v];
            let others = if c == self.top1_id { self.top2 } else { self.top1 };
            let c_max = others.max(self.max_piece[v]) as usize;
            score_from(self.n, self.k + 1, self.survivors - 1, c_max)
        }
    }
}
