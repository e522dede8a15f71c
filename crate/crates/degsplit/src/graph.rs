//! Simple undirected graphs over integer vertex ids, edge-list I/O, induced
//! subgraphs, and the worklist peeling that extracts k-cores.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

/// A set of vertex ids. Ordered so that every iteration (and therefore every
/// downstream artifact) is deterministic.
pub type VertexSet = BTreeSet<usize>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: self-loop {v} {v} is not allowed")]
    SelfLoop { line: usize, v: usize },
    #[error("line {line}: malformed edge line {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: vertex id {id} exceeds declared vertex count {n}")]
    IdOutOfRange { line: usize, id: usize, n: usize },
    #[error("vertex id {id} out of range for graph on {n} vertices")]
    VertexOutOfRange { id: usize, n: usize },
}

/// Simple undirected graph: symmetric adjacency sets, no self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from `(u, v)` pairs, collapsing duplicates.
    ///
    /// Panics on self-loops or out-of-range ids; intended for programmatic
    /// construction where inputs are known-good. Use [`parse_edge_list`] for
    /// untrusted input.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Inserts edge `uv`. Returns false if the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        let n = self.n();
        assert!(u < n && v < n, "edge ({u},{v}) out of range for n={n}");
        assert_ne!(u, v, "self-loop {u}");
        let inserted = self.adj[u].insert(v);
        self.adj[v].insert(u);
        if inserted {
            self.m += 1;
        }
        inserted
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.n()
    }

    /// All edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Minimum degree; 0 for the empty graph.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|s| s.len()).min().unwrap_or(0)
    }

    /// Number of edges with one endpoint in `x` and the other in `y`
    /// (each qualifying edge counted once; `x` and `y` may overlap).
    pub fn e_between(&self, x: &VertexSet, y: &VertexSet) -> usize {
        self.edges()
            .filter(|&(u, v)| {
                (x.contains(&u) && y.contains(&v)) || (x.contains(&v) && y.contains(&u))
            })
            .count()
    }

    /// Edges from a single vertex into `x`, i.e. `|N(v) ∩ x|`.
    pub fn e_vertex(&self, v: usize, x: &VertexSet) -> usize {
        if self.adj[v].len() <= x.len() {
            self.adj[v].iter().filter(|u| x.contains(u)).count()
        } else {
            x.iter().filter(|u| self.adj[v].contains(u)).count()
        }
    }

    /// Subgraph induced on `s`, re-indexed `0..s.len()`, with the id map.
    pub fn induced(&self, s: &VertexSet) -> Result<(Graph, IdMap), GraphError> {
        for &v in s {
            if v >= self.n() {
                return Err(GraphError::VertexOutOfRange { id: v, n: self.n() });
            }
        }
        let to_orig: Vec<usize> = s.iter().copied().collect();
        let to_sub: BTreeMap<usize, usize> =
            to_orig.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = Graph::new(to_orig.len());
        for (&u, &iu) in &to_sub {
            for &v in self.adj[u].iter().filter(|&&v| v > u) {
                if let Some(&iv) = to_sub.get(&v) {
                    g.add_edge(iu, iv);
                }
            }
        }
        Ok((g, IdMap { to_sub, to_orig }))
    }

    /// Serializes to the shared edge-list text format, including the
    /// `n <count>` header so isolated vertices survive a round trip.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n {}", self.n()).unwrap();
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }
}

/// Bidirectional vertex-id map produced by [`Graph::induced`].
#[derive(Debug, Clone)]
pub struct IdMap {
    pub to_sub: BTreeMap<usize, usize>,
    pub to_orig: Vec<usize>,
}

/// Result of parsing an edge list: the graph plus the number of duplicate
/// edge lines that were collapsed.
#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub duplicates: usize,
}

/// Parses the shared edge-list format.
///
/// Lines hold two whitespace-separated decimal ids. Blank lines and lines
/// starting with `#` are ignored. An optional first non-comment line
/// `n <count>` declares the vertex count (otherwise max id + 1 is used).
/// Duplicate edges are collapsed and counted; self-loops are rejected.
pub fn parse_edge_list(text: &str) -> Result<ParsedGraph, GraphError> {
    let mut edges: Vec<(usize, usize, usize)> = Vec::new(); // (u, v, line)
    let mut declared_n: Option<usize> = None;
    let mut saw_content = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let first = tokens.next().unwrap();
        if !saw_content && first == "n" {
            saw_content = true;
            let count = tokens
                .next()
                .and_then(|tok| tok.parse::<usize>().ok())
                .ok_or_else(|| GraphError::Malformed {
                    line: line_no,
                    text: line.to_string(),
                })?;
            if tokens.next().is_some() {
                return Err(GraphError::Malformed {
                    line: line_no,
                    text: line.to_string(),
                });
            }
            declared_n = Some(count);
            continue;
        }
        saw_content = true;
        let u = first.parse::<usize>().map_err(|_| GraphError::Malformed {
            line: line_no,
            text: line.to_string(),
        })?;
        let v = tokens
            .next()
            .and_then(|tok| tok.parse::<usize>().ok())
            .ok_or_else(|| GraphError::Malformed {
                line: line_no,
                text: line.to_string(),
            })?;
        if tokens.next().is_some() {
            return Err(GraphError::Malformed {
                line: line_no,
                text: line.to_string(),
            });
        }
        if u == v {
            return Err(GraphError::SelfLoop { line: line_no, v: u });
        }
        edges.push((u, v, line_no));
    }

    let max_id = edges.iter().map(|&(u, v, _)| u.max(v)).max();
    let n = match declared_n {
        Some(count) => {
            if let Some(max) = max_id {
                if max >= count {
                    let &(u, v, line) = edges.iter().find(|&&(u, v, _)| u.max(v) >= count).unwrap();
                    return Err(GraphError::IdOutOfRange {
                        line,
                        id: u.max(v),
                        n: count,
                    });
                }
            }
            count
        }
        None => max_id.map_or(0, |max| max + 1),
    };

    let mut graph = Graph::new(n);
    let mut duplicates = 0;
    for (u, v, _) in edges {
        if !graph.add_edge(u, v) {
            duplicates += 1;
        }
    }
    Ok(ParsedGraph { graph, duplicates })
}

/// Maximal `s ⊆ b` in which every vertex keeps at least `k` neighbors inside
/// `s` (the k-core of `G[b]`), computed by worklist removal of low-degree
/// vertices. The k-core is unique, so removal order does not matter.
pub fn peel_to_min_degree(g: &Graph, b: &VertexSet, k: usize) -> VertexSet {
    let mut alive: BTreeSet<usize> = b.clone();
    let mut deg: BTreeMap<usize, usize> = b
        .iter()
        .map(|&v| (v, g.e_vertex(v, b)))
        .collect();
    let mut queue: Vec<usize> = deg
        .iter()
        .filter(|&(_, &d)| d < k)
        .map(|(&v, _)| v)
        .collect();
    while let Some(v) = queue.pop() {
        if !alive.remove(&v) {
            continue;
        }
        for &u in g.neighbors(v) {
            if alive.contains(&u) {
                let d = deg.get_mut(&u).unwrap();
                *d -= 1;
                if *d == k - 1 {
                    queue.push(u);
                }
            }
        }
    }
    alive
}

/// A vertex partition `V = S ∪ T` where both sides induce minimum degree ≥ k
/// and every S-vertex keeps k neighbors in T.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionST {
    pub s: VertexSet,
    pub t: VertexSet,
}

/// A vertex partition `V = A ∪ B` where A is k-dominating and `G[B]` is dense.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionAB {
    pub a: VertexSet,
    pub b: VertexSet,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{clique, gnp};
    use proptest::prelude::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn path3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)])
    }

    fn c5() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    }

    fn set(ids: &[usize]) -> VertexSet {
        ids.iter().copied().collect()
    }

    #[test]
    fn parse_two_edge_path() {
        let parsed = parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!(parsed.graph.n(), 3);
        assert_eq!(parsed.graph.m(), 2);
        assert_eq!(parsed.duplicates, 0);
    }

    #[test]
    fn parse_rejects_self_loop() {
        let err = parse_edge_list("0 0").unwrap_err();
        assert_eq!(err, GraphError::SelfLoop { line: 1, v: 0 });
    }

    #[test]
    fn parse_collapses_duplicates_with_warning() {
        let parsed = parse_edge_list("0 1\n0 1\n1 2").unwrap();
        assert_eq!(parsed.graph.m(), 2);
        assert_eq!(parsed.duplicates, 1);
        // reversed duplicates collapse too
        let parsed = parse_edge_list("0 1\n1 0").unwrap();
        assert_eq!(parsed.graph.m(), 1);
        assert_eq!(parsed.duplicates, 1);
    }

    #[test]
    fn parse_header_declares_isolated_vertices() {
        let parsed = parse_edge_list("# comment\nn 5\n0 1\n").unwrap();
        assert_eq!(parsed.graph.n(), 5);
        assert_eq!(parsed.graph.m(), 1);
        let err = parse_edge_list("n 2\n0 5").unwrap_err();
        assert!(matches!(err, GraphError::IdOutOfRange { id: 5, n: 2, .. }));
    }

    #[test]
    fn parse_rejects_malformed_tokens() {
        assert!(matches!(
            parse_edge_list("0 x").unwrap_err(),
            GraphError::Malformed { line: 1, .. }
        ));
        assert!(matches!(
            parse_edge_list("7").unwrap_err(),
            GraphError::Malformed { line: 1, .. }
        ));
        assert!(matches!(
            parse_edge_list("1 2 3").unwrap_err(),
            GraphError::Malformed { line: 1, .. }
        ));
    }

    #[test]
    fn edge_list_round_trip_keeps_isolated_vertices() {
        let mut g = Graph::new(4);
        g.add_edge(0, 2);
        let text = g.to_edge_list();
        let back = parse_edge_list(&text).unwrap().graph;
        assert_eq!(back, g);
    }

    #[test]
    fn min_degree_fixtures() {
        assert_eq!(clique(4).min_degree(), 3);
        assert_eq!(path3().min_degree(), 1);
        assert_eq!(Graph::new(0).min_degree(), 0);
        assert_eq!(Graph::new(3).min_degree(), 0);
    }

    #[test]
    fn e_between_fixtures() {
        let k3 = clique(3);
        let all = set(&[0, 1, 2]);
        assert_eq!(k3.e_between(&all, &all), k3.m());
        assert_eq!(k3.e_between(&set(&[0]), &set(&[1, 2])), 2);
        // overlapping sides: edges 01, 02, 12 all qualify
        assert_eq!(k3.e_between(&set(&[0, 1]), &set(&[1, 2])), 3);
    }

    #[test]
    fn induced_fixtures() {
        let (sub, map) = clique(4).induced(&set(&[0, 1, 2])).unwrap();
        assert_eq!(sub, clique(3));
        assert_eq!(map.to_orig, vec![0, 1, 2]);

        let (sub, _) = clique(4).induced(&VertexSet::new()).unwrap();
        assert_eq!(sub.n(), 0);

        // C5 on {0,1,3}: the single edge 01 plus isolated vertex 3
        let (sub, map) = c5().induced(&set(&[0, 1, 3])).unwrap();
        assert_eq!(sub.n(), 3);
        assert_eq!(sub.m(), 1);
        assert!(sub.has_edge(0, 1));
        assert_eq!(sub.degree(map.to_sub[&3]), 0);

        assert!(c5().induced(&set(&[9])).is_err());
    }

    #[test]
    fn peel_fixtures() {
        // C5 already has minimum degree 2 >= 1
        let g = c5();
        let all: VertexSet = g.vertices().collect();
        assert_eq!(peel_to_min_degree(&g, &all, 1), all);

        // K4 plus a pendant on vertex 0: the pendant goes, the clique stays
        let mut g = clique(4);
        let mut adj = Graph::new(5);
        for (u, v) in g.edges() {
            adj.add_edge(u, v);
        }
        adj.add_edge(0, 4);
        g = adj;
        let all: VertexSet = g.vertices().collect();
        assert_eq!(peel_to_min_degree(&g, &all, 2), set(&[0, 1, 2, 3]));

        // every tree empties at k=2 (leaf removal cascades)
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let all: VertexSet = star.vertices().collect();
        assert!(peel_to_min_degree(&star, &all, 2).is_empty());
        let path = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        let all: VertexSet = path.vertices().collect();
        assert!(peel_to_min_degree(&path, &all, 2).is_empty());
    }

    #[test]
    fn peel_guarantee_on_random_dense_subgraphs() {
        // average degree >= 2k forces a non-empty k-core
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut tested = 0;
        while tested < 200 {
            let n = rng.random_range(4..40);
            let p = rng.random_range(0.2..0.9);
            let k = rng.random_range(1..4usize);
            let g = gnp(n, p, rng.random());
            let b: VertexSet = g.vertices().filter(|_| rng.random::<f64>() < 0.8).collect();
            let (sub, _) = g.induced(&b).unwrap();
            if b.is_empty() || 2 * sub.m() < 2 * k * b.len() {
                continue;
            }
            tested += 1;
            let core = peel_to_min_degree(&g, &b, k);
            assert!(!core.is_empty(), "n={n} p={p} k={k}");
            for &v in &core {
                assert!(g.e_vertex(v, &core) >= k);
            }
        }
    }

    /// Peeling with an explicitly different removal discipline; used to check
    /// that the k-core is order-independent.
    fn peel_fifo_shuffled(g: &Graph, b: &VertexSet, k: usize, seed: u64) -> VertexSet {
        use std::collections::VecDeque;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut alive = b.clone();
        let mut order: Vec<usize> = b.iter().copied().collect();
        order.shuffle(&mut rng);
        let mut queue: VecDeque<usize> = order.into_iter().collect();
        while let Some(v) = queue.pop_front() {
            if alive.contains(&v) && g.e_vertex(v, &alive) < k {
                alive.remove(&v);
                for &u in g.neighbors(v) {
                    if alive.contains(&u) {
                        queue.push_back(u);
                    }
                }
            }
        }
        alive
    }

    proptest! {
        #[test]
        fn peel_is_order_independent(seed in 0u64..500) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.random_range(1..25);
            let g = gnp(n, rng.random_range(0.05..0.9), rng.random());
            let b: VertexSet = g.vertices().filter(|_| rng.random::<f64>() < 0.9).collect();
            let k = rng.random_range(1..4usize);
            let core = peel_to_min_degree(&g, &b, k);
            let other = peel_fifo_shuffled(&g, &b, k, seed ^ 0xdead);
            prop_assert_eq!(&core, &other);
            // soundness: every survivor keeps k neighbors inside
            for &v in &core {
                prop_assert!(g.e_vertex(v, &core) >= k);
            }
            // maximality: no removed vertex could rejoin
            for &v in b.difference(&core) {
                prop_assert!(g.e_vertex(v, &core) < k);
            }
        }

        #[test]
        fn e_between_is_symmetric(seed in 0u64..200) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.random_range(1..20);
            let g = gnp(n, rng.random_range(0.0..1.0), rng.random());
            let x: VertexSet = g.vertices().filter(|_| rng.random::<f64>() < 0.5).collect();
            let y: VertexSet = g.vertices().filter(|_| rng.random::<f64>() < 0.5).collect();
            prop_assert_eq!(g.e_between(&x, &y), g.e_between(&y, &x));
        }
    }
}
