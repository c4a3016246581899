use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measures::check_solvable;
use crate::rng::{self, Rng};
use crate::vertex_set::VertexSet;

pub const DEFAULT_MAX_DRAWS: usize = 100;

/// A disconnecting attack set from one random contraction cut.
///
/// Edges are contracted in random order until two super-nodes remain; one
/// endpoint of every crossing edge, chosen uniformly, joins the set. A draw
/// whose set leaves fewer than two surviving components is discarded and a
/// new contraction is drawn, up to `max_draws` times.
pub fn karger_seed(g: &Graph, seed: u64, max_draws: usize) -> Result<VertexSet> {
    check_solvable(g)?;
    let mut rng = rng::seeded(seed);
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    let mut uf = UnionFind::new(g.node_count());
    for _ in 0..max_draws {
        let s = draw(g, &mut edges, &mut uf, &mut rng);
        if s.is_proper() && g.connected_components(&s).omega >= 2 {
            return Ok(s);
        }
    }
    Err(Error::SeedFailure(max_draws))
}

fn draw(g: &Graph, edges: &mut [(usize, usize)], uf: &mut UnionFind, rng: &mut Rng) -> VertexSet {
    let n = g.node_count();
    edges.shuffle(rng);
    uf.reset();
    let mut groups = n;
    for &(u, v) in edges.iter() {
        if groups == 2 {
            break;
        }
        if uf.union(u, v) {
            groups -= 1;
        }
    }
    let mut s = VertexSet::empty(n);
    for &(u, v) in edges.iter() {
        if uf.find(u) != uf.find(v) {
            s.insert(if rng.gen_bool(0.5) { u } else { v });
        }
    }
    s
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i;
        }
        self.size.fill(1);
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}
