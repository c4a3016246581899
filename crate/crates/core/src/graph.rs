//! Undirected simple graphs and the set-relative primitives the measures are
//! built from: surviving components, cuts, volumes and outer boundaries.
//!
//! Nodes are 0-based inside the crate. The edge-list text format is 1-based:
//! one `u v` pair per line, `#` starts a comment line.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// An immutable undirected simple graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: usize,
}

/// Shape of the subgraph induced on `V - S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionStats {
    /// Number of components ω(V−S).
    pub omega: usize,
    /// Size of the largest component, 0 when nothing survives.
    pub c_max: usize,
    /// Survivors outside the largest component.
    pub remainder: usize,
    /// Component sizes, largest first.
    pub component_sizes: Vec<usize>,
}

impl PartitionStats {
    pub fn survivors(&self) -> usize {
        self.c_max + self.remainder
    }
}

impl Graph {
    /// Builds a graph on `n` nodes from 0-based edges. Duplicate edges collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::NodeOutOfRange(u, v));
            }
            if u == v {
                return Err(Error::SelfLoop { line: 0, node: u + 1 });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edges = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            edges += list.len();
        }
        Ok(Graph {
            adj,
            edges: edges / 2,
        })
    }

    /// Parses the 1-based edge-list format. The node count is the largest label seen.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut n = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let label = |tok: Option<&str>| -> Result<usize> {
                let tok = tok.ok_or_else(|| Error::Parse {
                    line: line_no,
                    message: "expected two node labels".into(),
                })?;
                match tok.parse::<usize>() {
                    Ok(0) => Err(Error::Parse {
                        line: line_no,
                        message: "node labels start at 1".into(),
                    }),
                    Ok(v) => Ok(v),
                    Err(_) => Err(Error::Parse {
                        line: line_no,
                        message: format!("`{tok}` is not a positive integer"),
                    }),
                }
            };
            let u = label(tokens.next())?;
            let v = label(tokens.next())?;
            if tokens.next().is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "trailing tokens after the edge".into(),
                });
            }
            if u == v {
                return Err(Error::SelfLoop {
                    line: line_no,
                    node: u,
                });
            }
            n = n.max(u).max(v);
            edges.push((u - 1, v - 1));
        }
        Graph::from_edges(n, edges)
    }

    /// Serialises as sorted `u v` lines with `u < v`, 1-based.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(self.edges * 8);
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// `Some(d)` when every node has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first()?.len();
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    /// Components of the subgraph induced on the nodes not in `removed`.
    pub fn connected_components(&self, removed: &VertexSet) -> PartitionStats {
        debug_assert_eq!(removed.universe(), self.node_count());
        let n = self.node_count();
        let mut seen = removed.clone();
        let mut stack = Vec::new();
        let mut sizes = Vec::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            seen.insert(start);
            stack.push(start);
            let mut size = 0;
            while let Some(v) = stack.pop() {
                size += 1;
                for &w in &self.adj[v] {
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            sizes.push(size);
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let c_max = sizes.first().copied().unwrap_or(0);
        PartitionStats {
            omega: sizes.len(),
            c_max,
            remainder: (n - removed.len()) - c_max,
            component_sizes: sizes,
        }
    }

    /// Number of edges with exactly one endpoint in `s`.
    pub fn cut_size(&self, s: &VertexSet) -> Result<usize> {
        if !s.is_proper() {
            return Err(Error::DegenerateCut);
        }
        Ok(s.iter()
            .map(|u| self.adj[u].iter().filter(|&&v| !s.contains(v)).count())
            .sum())
    }

    /// Sum of degrees over `s`.
    pub fn volume(&self, s: &VertexSet) -> usize {
        s.iter().map(|v| self.adj[v].len()).sum()
    }

    /// Nodes outside `s` with a neighbour inside it.
    pub fn outer_boundary(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.node_count());
        for u in s.iter() {
            for &v in &self.adj[u] {
                if !s.contains(v) {
                    out.insert(v);
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components(&VertexSet::empty(self.node_count()))
            .omega
            == 1
    }

    /// Whether the subgraph induced on `s` is connected (and nonempty).
    pub fn induces_connected(&self, s: &VertexSet) -> bool {
        !s.is_empty() && self.connected_components(&s.complement()).omega == 1
    }

    /// The same graph with node `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.node_count() {
            return Err(Error::InvalidParameter(format!(
                "permutation of length {} for {} nodes",
                perm.len(),
                self.node_count()
            )));
        }
        Graph::from_edges(self.node_count(), self.edges().map(|(u, v)| (perm[u], perm[v])))
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Graph::parse_edge_list(s)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.node_count(), self.edges)
    }
}

/// Reusable scratch space for repeated survivor scans on one graph.
///
/// Returns `(c_max, survivors)` without allocating; the solvers only ever need
/// those two numbers to score τ.
pub(crate) struct ComponentScanner {
    mark: Vec<u32>,
    epoch: u32,
    stack: Vec<usize>,
}

impl ComponentScanner {
    pub(crate) fn new(n: usize) -> Self {
        ComponentScanner {
            mark: vec![0; n],
            epoch: 0,
            stack: Vec::with_capacity(n),
        }
    }

    pub(crate) fn largest_component(&mut self, g: &Graph, removed: &VertexSet) -> (usize, usize) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.epoch = 1;
        }
        let epoch = self.epoch;
        let n = g.node_count();
        let survivors = n - removed.len();
        let mut c_max = 0;
        let mut covered = 0;
        for start in 0..n {
            // Once the unexplored survivors cannot beat c_max, stop.
            if survivors - covered <= c_max {
                break;
            }
            if removed.contains(start) || self.mark[start] == epoch {
                continue;
            }
            self.mark[start] = epoch;
            self.stack.push(start);
            let mut size = 0;
            while let Some(v) = self.stack.pop() {
                size += 1;
                for &w in g.neighbors(v) {
                    if self.mark[w] != epoch && !removed.contains(w) {
                        self.mark[w] = epoch;
                        self.stack.push(w);
                    }
                }
            }
            covered += size;
            c_max = c_max.max(size);
        }
        (c_max, survivors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn star(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (0, v))).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    #[test]
    fn parses_star() {
        let g: Graph = "1 2\n1 3\n1 4".parse().unwrap();
        assert_eq!(g, star(4));
        assert_eq!(g.degree_sequence(), vec![3, 1, 1, 1]);
    }

    #[test]
    fn rejects_self_loop_with_line() {
        let err = Graph::parse_edge_list("# header\n1 2\n3 3\n").unwrap_err();
        assert_eq!(err, Error::SelfLoop { line: 3, node: 3 });
        assert!(matches!(
            Graph::parse_edge_list("1 x"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(Graph::parse_edge_list("1 2 3").is_err());
        assert!(Graph::parse_edge_list("0 2").is_err());
    }

    #[test]
    fn duplicate_lines_collapse() {
        let g = Graph::parse_edge_list("1 2\n2 1\n2 3").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn serialisation_is_sorted_and_round_trips() {
        let g = Graph::parse_edge_list("3 1\n# c\n2 1\n\n3 2\n").unwrap();
        assert_eq!(g.to_edge_list(), "1 2\n1 3\n2 3\n");
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn components_of_star_without_center() {
        let g = star(10);
        let stats = g.connected_components(&VertexSet::from_indices(10, [0]));
        assert_eq!((stats.omega, stats.c_max, stats.remainder), (9, 1, 8));
        let whole = g.connected_components(&VertexSet::empty(10));
        assert_eq!((whole.omega, whole.c_max, whole.remainder), (1, 10, 0));
    }

    #[test]
    fn components_of_path_split() {
        let stats = path(5).connected_components(&VertexSet::from_indices(5, [2]));
        assert_eq!((stats.omega, stats.c_max, stats.remainder), (2, 2, 2));
        assert_eq!(stats.component_sizes, vec![2, 2]);
    }

    #[test]
    fn removing_everything_gives_zero_stats() {
        let stats = path(4).connected_components(&VertexSet::full(4));
        assert_eq!((stats.omega, stats.c_max, stats.remainder), (0, 0, 0));
        assert!(stats.component_sizes.is_empty());
    }

    #[test]
    fn cut_sizes() {
        let g = star(10);
        assert_eq!(g.cut_size(&VertexSet::from_indices(10, [0])).unwrap(), 9);
        assert_eq!(g.cut_size(&VertexSet::from_indices(10, [4])).unwrap(), 1);
        let c8 = cycle(8);
        assert_eq!(c8.cut_size(&VertexSet::from_indices(8, 0..4)).unwrap(), 2);
        assert_eq!(g.cut_size(&VertexSet::empty(10)), Err(Error::DegenerateCut));
        assert_eq!(g.cut_size(&VertexSet::full(10)), Err(Error::DegenerateCut));
    }

    #[test]
    fn volumes() {
        let g = star(10);
        assert_eq!(g.volume(&VertexSet::from_indices(10, [0])), 9);
        assert_eq!(g.volume(&VertexSet::from_indices(10, 1..10)), 9);
        assert_eq!(g.volume(&VertexSet::full(10)), 2 * g.edge_count());
        assert_eq!(g.volume(&VertexSet::empty(10)), 0);
    }

    #[test]
    fn outer_boundaries() {
        let g = star(10);
        let b = g.outer_boundary(&VertexSet::from_indices(10, 1..6));
        assert_eq!(b.labels(), vec![1]);
        assert!(g.outer_boundary(&VertexSet::full(10)).is_empty());
        assert!(g.outer_boundary(&VertexSet::empty(10)).is_empty());
        let p = path(5).outer_boundary(&VertexSet::from_indices(5, [2]));
        assert_eq!(p.labels(), vec![2, 4]);
    }

    #[test]
    fn connectivity() {
        assert!(star(10).is_connected());
        let two_triangles =
            Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!two_triangles.is_connected());
        assert!(Graph::from_edges(1, []).unwrap().is_connected());
    }

    #[test]
    fn cycle_degrees() {
        assert_eq!(cycle(8).degree_sequence(), vec![2; 8]);
        assert_eq!(cycle(8).regular_degree(), Some(2));
        assert_eq!(star(4).regular_degree(), None);
    }

    #[test]
    fn scanner_agrees_with_full_scan() {
        let g = path(7);
        let mut scan = ComponentScanner::new(7);
        for mask in 0u64..(1 << 7) {
            let s = VertexSet::from_mask(7, mask);
            let stats = g.connected_components(&s);
            assert_eq!(scan.largest_component(&g, &s), (stats.c_max, stats.survivors()));
        }
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..14).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..3 * n).prop_map(move |pairs| {
                Graph::from_edges(n, pairs.into_iter().filter(|(u, v)| u != v)).unwrap()
            })
        })
    }

    fn arb_graph_and_set() -> impl Strategy<Value = (Graph, VertexSet)> {
        arb_graph().prop_flat_map(|g| {
            let n = g.node_count();
            (Just(g), any::<u64>().prop_map(move |m| VertexSet::from_mask(n, m)))
        })
    }

    proptest! {
        #[test]
        fn undirected_and_handshake(g in arb_graph()) {
            for u in 0..g.node_count() {
                for &v in g.neighbors(u) {
                    prop_assert!(g.has_edge(v, u));
                    prop_assert_ne!(u, v);
                }
            }
            prop_assert_eq!(g.degree_sequence().iter().sum::<usize>(), 2 * g.edge_count());
        }

        #[test]
        fn cut_is_symmetric((g, s) in arb_graph_and_set()) {
            prop_assume!(s.is_proper());
            prop_assert_eq!(g.cut_size(&s).unwrap(), g.cut_size(&s.complement()).unwrap());
        }

        #[test]
        fn volumes_add_up((g, s) in arb_graph_and_set()) {
            prop_assert_eq!(g.volume(&s) + g.volume(&s.complement()), 2 * g.edge_count());
        }

        #[test]
        fn boundary_bounded_by_cut((g, s) in arb_graph_and_set()) {
            prop_assume!(s.is_proper());
            let boundary = g.outer_boundary(&s).len();
            let cut = g.cut_size(&s).unwrap();
            prop_assert!(boundary <= cut);
            if let Some(d) = g.regular_degree() {
                prop_assert!(cut <= d * boundary);
            }
        }

        #[test]
        fn partition_stats_are_consistent((g, s) in arb_graph_and_set()) {
            let stats = g.connected_components(&s);
            let survivors = g.node_count() - s.len();
            prop_assert_eq!(stats.component_sizes.iter().sum::<usize>(), survivors);
            prop_assert_eq!(stats.component_sizes.len(), stats.omega);
            prop_assert_eq!(stats.component_sizes.first().copied().unwrap_or(0), stats.c_max);
            if survivors > 0 {
                prop_assert!(stats.omega >= 1);
            }
            let induced_connected = survivors > 0 && g.induces_connected(&s.complement());
            prop_assert_eq!(stats.omega == 1 && stats.remainder == 0, induced_connected);
        }

        #[test]
        fn edge_list_round_trip(g in arb_graph()) {
            // Trailing isolated nodes are not representable in an edge list.
            let text = g.to_edge_list();
            let back = Graph::parse_edge_list(&text).unwrap();
            prop_assert_eq!(back.to_edge_list(), text);
        }
    }
}
