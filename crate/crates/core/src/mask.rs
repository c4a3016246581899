//! Word-sized adjacency for graphs of at most 64 nodes.

use crate::graph::Graph;

pub(crate) const MAX_MASK_NODES: usize = 64;

pub(crate) struct MaskGraph {
    adj: Vec<u64>,
    degree: Vec<u32>,
    n: usize,
}

impl MaskGraph {
    pub(crate) fn new(g: &Graph) -> Option<Self> {
        let n = g.node_count();
        if n > MAX_MASK_NODES {
            return None;
        }
        let adj = (0..n)
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
            .collect();
        let degree = (0..n).map(|v| g.degree(v) as u32).collect();
        Some(MaskGraph { adj, degree, n })
    }

    pub(crate) fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn all(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// `(ω, c_max)` of the subgraph induced on `alive`.
    #[inline]
    pub(crate) fn components(&self, alive: u64) -> (u32, u32) {
        let mut rest = alive;
        let mut omega = 0;
        let mut c_max = 0;
        while rest != 0 {
            let comp = self.component_of(rest, rest & rest.wrapping_neg());
            rest &= !comp;
            omega += 1;
            c_max = c_max.max(comp.count_ones());
        }
        (omega, c_max)
    }

    /// Largest component of `alive`, stopping early once it cannot change.
    #[inline]
    pub(crate) fn largest(&self, alive: u64) -> u32 {
        let mut rest = alive;
        let mut c_max = 0;
        while rest.count_ones() > c_max {
            let comp = self.component_of(rest, rest & rest.wrapping_neg());
            rest &= !comp;
            c_max = c_max.max(comp.count_ones());
        }
        c_max
    }

    #[inline]
    fn component_of(&self, alive: u64, seed: u64) -> u64 {
        let mut comp = seed;
        let mut frontier = seed;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & alive & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        comp
    }

    #[inline]
    pub(crate) fn cut(&self, s: u64) -> u32 {
        let mut rest = s;
        let mut cut = 0;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            cut += (self.adj[v] & !s).count_ones();
        }
        cut
    }

    #[inline]
    pub(crate) fn volume(&self, s: u64) -> u32 {
        let mut rest = s;
        let mut vol = 0;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            vol += self.degree[v];
        }
        vol
    }

    #[inline]
    pub(crate) fn boundary(&self, s: u64) -> u64 {
        let mut rest = s;
        let mut out = 0;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= self.adj[v];
        }
        out & !s
    }

    pub(crate) fn total_volume(&self) -> u32 {
        self.degree.iter().sum()
    }
}
