//! Undirected and oriented graphs, plus orientation codes.
//!
//! Vertices are `0..n` internally. The text format (see [`crate::graph_file`])
//! uses 1-based indices and converts at the boundary.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Default cap on the edge count accepted by [`enumerate_orientations`].
pub const DEFAULT_ORIENTATION_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge or arc between {0} and {1}")]
    Duplicate(usize, usize),
    #[error("arcs {0}->{1} and {1}->{0} both present")]
    TwoCycle(usize, usize),
    #[error("orientation code has {code} bits but the graph has {edges} edges")]
    CodeLength { code: usize, edges: usize },
    #[error("{edges} edges exceed the orientation enumeration limit of {limit}")]
    TooManyEdges { edges: usize, limit: usize },
    #[error("invalid orientation code character {0:?}")]
    BadCodeChar(char),
}

fn check_pair(n: usize, u: usize, v: usize) -> Result<(), GraphError> {
    for w in [u, v] {
        if w >= n {
            return Err(GraphError::VertexOutOfRange { vertex: w, n });
        }
    }
    if u == v {
        return Err(GraphError::SelfLoop(u));
    }
    Ok(())
}

/// A finite simple graph. Edge order is significant: orientation codes index it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl UndirectedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v) in &edges {
            check_pair(n, u, v)?;
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::Duplicate(u, v));
            }
        }
        Ok(UndirectedGraph { n, edges })
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|v| (v - 1, v)).collect();
        UndirectedGraph { n, edges }
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`, `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        UndirectedGraph { n, edges }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        UndirectedGraph { n, edges }
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency().iter().map(Vec::len).max().unwrap_or(0)
    }

    /// 2-coloring by breadth-first search, if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let adj = self.adjacency();
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        let mut queue = std::collections::VecDeque::new();
        for root in 0..self.n {
            if side[root].is_some() {
                continue;
            }
            side[root] = Some(false);
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &w in &adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap_or(false)).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }
}

/// An orientation of a simple graph: no loops, no duplicate arcs, no 2-cycles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrientedGraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl OrientedGraph {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        validate_oriented(n, &arcs)?;
        Ok(OrientedGraph { n, arcs })
    }

    pub fn empty(n: usize) -> Self {
        OrientedGraph {
            n,
            arcs: Vec::new(),
        }
    }

    /// Directed cycle `0 -> 1 -> ... -> (n-1) -> 0`.
    pub fn directed_cycle(n: usize) -> Self {
        orient(&UndirectedGraph::cycle(n), &OrientationCode::all_forward(n))
            .expect("code length matches")
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn n_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|&&(a, _)| a == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|&&(_, b)| b == v).count()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    /// The underlying simple graph, with edges in arc order.
    pub fn underlying(&self) -> UndirectedGraph {
        UndirectedGraph {
            n: self.n,
            edges: self.arcs.clone(),
        }
    }

    /// Renames vertex `v` to `perm[v]`. Arc order is kept.
    pub fn relabel(&self, perm: &[usize]) -> OrientedGraph {
        assert_eq!(perm.len(), self.n);
        let arcs = self.arcs.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        OrientedGraph::new(self.n, arcs).expect("relabeling by a permutation")
    }

    /// Keeps only the arcs for which `keep` holds.
    pub fn filter_arcs(
        &self,
        mut keep: impl FnMut(usize, (usize, usize)) -> bool,
    ) -> OrientedGraph {
        let arcs = self
            .arcs
            .iter()
            .enumerate()
            .filter(|&(i, &a)| keep(i, a))
            .map(|(_, &a)| a)
            .collect();
        OrientedGraph { n: self.n, arcs }
    }

    /// Subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> OrientedGraph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let arcs = self
            .arcs
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]))
            .collect();
        OrientedGraph {
            n: vertices.len(),
            arcs,
        }
    }
}

/// Checks every [`OrientedGraph`] invariant on a raw arc list.
pub fn validate_oriented(n: usize, arcs: &[(usize, usize)]) -> Result<(), GraphError> {
    let mut seen = HashSet::with_capacity(arcs.len());
    for &(u, v) in arcs {
        check_pair(n, u, v)?;
        if seen.contains(&(v, u)) {
            return Err(GraphError::TwoCycle(u, v));
        }
        if !seen.insert((u, v)) {
            return Err(GraphError::Duplicate(u, v));
        }
    }
    Ok(())
}

/// One bit per edge; `true` means the edge's first endpoint dominates the second.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientationCode(pub Vec<bool>);

impl OrientationCode {
    pub fn all_forward(len: usize) -> Self {
        OrientationCode(vec![true; len])
    }

    /// The code whose bits spell `value` in binary, most significant bit first.
    pub fn from_index(value: u64, len: usize) -> Self {
        OrientationCode(
            (0..len)
                .map(|i| (value >> (len - 1 - i)) & 1 == 1)
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for OrientationCode {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(GraphError::BadCodeChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(OrientationCode)
    }
}

impl fmt::Display for OrientationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Directs edge `i` of `g` according to bit `i` of `code`.
pub fn orient(g: &UndirectedGraph, code: &OrientationCode) -> Result<OrientedGraph, GraphError> {
    if code.len() != g.n_edges() {
        return Err(GraphError::CodeLength {
            code: code.len(),
            edges: g.n_edges(),
        });
    }
    let arcs = g
        .edges
        .iter()
        .zip(&code.0)
        .map(|(&(u, v), &fwd)| if fwd { (u, v) } else { (v, u) })
        .collect();
    Ok(OrientedGraph { n: g.n, arcs })
}

/// Iterator over all `2^|E|` orientations in lexicographic code order.
#[derive(Debug, Clone)]
pub struct Orientations<'a> {
    graph: &'a UndirectedGraph,
    next: u64,
    end: u64,
}

impl Iterator for Orientations<'_> {
    type Item = OrientedGraph;

    fn next(&mut self) -> Option<OrientedGraph> {
        if self.next >= self.end {
            return None;
        }
        let code = OrientationCode::from_index(self.next, self.graph.n_edges());
        self.next += 1;
        Some(orient(self.graph, &code).expect("code length matches"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Orientations<'_> {}

pub fn enumerate_orientations(g: &UndirectedGraph) -> Result<Orientations<'_>, GraphError> {
    enumerate_orientations_with_limit(g, DEFAULT_ORIENTATION_LIMIT)
}

pub fn enumerate_orientations_with_limit(
    g: &UndirectedGraph,
    limit: usize,
) -> Result<Orientations<'_>, GraphError> {
    let edges = g.n_edges();
    if edges > limit || edges >= 64 {
        return Err(GraphError::TooManyEdges { edges, limit });
    }
    Ok(Orientations {
        graph: g,
        next: 0,
        end: 1u64 << edges,
    })
}

/// Uniformly random orientation code, reproducible from `seed`.
pub fn random_code(n_edges: usize, seed: u64) -> OrientationCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    OrientationCode((0..n_edges).map(|_| rng.gen::<bool>()).collect())
}

pub fn random_orientation(g: &UndirectedGraph, seed: u64) -> OrientedGraph {
    orient(g, &random_code(g.n_edges(), seed)).expect("code length matches")
}
