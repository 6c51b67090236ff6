//! Hexagonal grids `H(m,n)`, square grids `G(m,n)`, and the lattice-placed
//! counterexample fixtures.
//!
//! `H(m,n)` is the subgraph of `G(m+1, 2n+m)` on the vertices `v(i,j)` with
//! `i-1 <= j <= i+2n`, keeping every horizontal edge and the vertical edges
//! `v(i,j) - v(i+1,j)` with `i+j` even.
//!
//! Fixtures carry lattice coordinates `(a, b)` on a triangular lattice. Sites
//! with `(a - b) mod 3 == 0` are hexagon centres and are never vertices. A
//! site with `(a - b) mod 3 == 2` is adjacent to its `(0,1)`, `(1,-1)` and
//! `(-1,0)` offsets; a site with `(a - b) mod 3 == 1` to the negations.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::digraph::{OrientedGraph, UndirectedGraph};
use crate::graph_file::{parse_graph_file, ParseError};

pub const H4_FIXTURE: &str = include_str!("../fixtures/h4.graph");
pub const H49_FIXTURE: &str = include_str!("../fixtures/h49.graph");

/// SHA-256 of the fixture files as shipped.
pub const H4_FIXTURE_SHA256: &str =
    "97e1c71ba3e8e8ae3f8ada4cc0a7fc7b37e4b2895bd2b66b5d56aedaaf88537e";
pub const H49_FIXTURE_SHA256: &str =
    "bb98122b9d56f430b181fad61af6ba3c96014da5df1a1f25c27b05cb115699ba";

/// Vertex and arc tallies of the H49 drawing.
pub const H49_VERTICES: usize = 126;
pub const H49_ARCS: usize = 174;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("grid dimensions must be positive, got {0}x{1}")]
    NonPositive(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("vertex {0} has no coord line")]
    MissingCoord(usize),
}

/// `v(i,j)`, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GridVertex {
    pub i: i64,
    pub j: i64,
}

impl GridVertex {
    pub fn new(i: i64, j: i64) -> Self {
        GridVertex { i, j }
    }

    /// Lattice site of `v(i,j)` in the fixture coordinate system.
    pub fn lattice_position(self) -> (i64, i64) {
        let odd = (self.i + self.j).rem_euclid(2);
        let diff = 3 * self.i - 4 - odd;
        let sum = self.j + 6;
        ((sum + diff) / 2, (sum - diff) / 2)
    }

    /// Inverse of [`GridVertex::lattice_position`]; `None` on hexagon centres.
    pub fn from_lattice((a, b): (i64, i64)) -> Option<GridVertex> {
        let diff = a - b;
        let i = match site_class((a, b)) {
            2 => (diff + 4) / 3,
            1 => (diff + 5) / 3,
            _ => return None,
        };
        Some(GridVertex { i, j: a + b - 6 })
    }
}

impl fmt::Display for GridVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v({},{})", self.i, self.j)
    }
}

fn site_class((a, b): (i64, i64)) -> i64 {
    (a - b).rem_euclid(3)
}

/// Offsets to the three neighbours of a lattice site, or `None` for a hexagon centre.
pub fn lattice_offsets(site: (i64, i64)) -> Option<[(i64, i64); 3]> {
    match site_class(site) {
        2 => Some([(0, 1), (1, -1), (-1, 0)]),
        1 => Some([(0, -1), (-1, 1), (1, 0)]),
        _ => None,
    }
}

pub fn lattice_adjacent(p: (i64, i64), q: (i64, i64)) -> bool {
    lattice_offsets(p).is_some_and(|offs| offs.contains(&(q.0 - p.0, q.1 - p.1)))
}

#[derive(Debug, Clone)]
pub struct HexGrid {
    m: usize,
    n: usize,
    graph: UndirectedGraph,
    vertices: Vec<GridVertex>,
    index: HashMap<GridVertex, usize>,
}

impl HexGrid {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> &UndirectedGraph {
        &self.graph
    }

    pub fn vertices(&self) -> &[GridVertex] {
        &self.vertices
    }

    pub fn vertex(&self, idx: usize) -> GridVertex {
        self.vertices[idx]
    }

    pub fn index_of(&self, i: i64, j: i64) -> Option<usize> {
        self.index.get(&GridVertex { i, j }).copied()
    }

    /// Column range of row `i`, inclusive.
    pub fn row_range(&self, i: i64) -> (i64, i64) {
        hex_row_range(self.m as i64, self.n as i64, i)
    }

    pub fn rows(&self) -> i64 {
        self.m as i64 + 1
    }

    pub fn lattice_coords(&self) -> Vec<(i64, i64)> {
        self.vertices.iter().map(|v| v.lattice_position()).collect()
    }
}

fn hex_row_range(m: i64, n: i64, i: i64) -> (i64, i64) {
    ((i - 1).max(1), (i + 2 * n).min(2 * n + m))
}

/// `H(m,n)` with vertices numbered row-major; for each vertex its edge to the
/// right comes before its edge downward.
pub fn build_hex_grid(m: usize, n: usize) -> Result<HexGrid, GridError> {
    if m == 0 || n == 0 {
        return Err(GridError::NonPositive(m, n));
    }
    let (mi, ni) = (m as i64, n as i64);
    let mut vertices = Vec::new();
    for i in 1..=mi + 1 {
        let (lo, hi) = hex_row_range(mi, ni, i);
        vertices.extend((lo..=hi).map(|j| GridVertex { i, j }));
    }
    let index: HashMap<_, _> = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut edges = Vec::new();
    for (k, v) in vertices.iter().enumerate() {
        if let Some(&r) = index.get(&GridVertex { i: v.i, j: v.j + 1 }) {
            edges.push((k, r));
        }
        if (v.i + v.j) % 2 == 0 {
            if let Some(&d) = index.get(&GridVertex { i: v.i + 1, j: v.j }) {
                edges.push((k, d));
            }
        }
    }
    let graph = UndirectedGraph::new(vertices.len(), edges).expect("grid edges are simple");
    Ok(HexGrid {
        m,
        n,
        graph,
        vertices,
        index,
    })
}

/// `G(m,n) = P_m x P_n`, vertex `v(i,j)` at index `(i-1)*n + (j-1)`.
pub fn build_square_grid(m: usize, n: usize) -> Result<UndirectedGraph, GridError> {
    if m == 0 || n == 0 {
        return Err(GridError::NonPositive(m, n));
    }
    let idx = |i: usize, j: usize| i * n + j;
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..n {
            if j + 1 < n {
                edges.push((idx(i, j), idx(i, j + 1)));
            }
            if i + 1 < m {
                edges.push((idx(i, j), idx(i + 1, j)));
            }
        }
    }
    Ok(UndirectedGraph::new(m * n, edges).expect("grid edges are simple"))
}

/// An oriented graph placed on the hexagonal lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxialFixture {
    pub name: String,
    pub graph: OrientedGraph,
    pub coords: Vec<(i64, i64)>,
}

impl AxialFixture {
    pub fn parse(name: &str, text: &str) -> Result<AxialFixture, FixtureError> {
        let file = parse_graph_file(text)?;
        let coords = file
            .coords
            .iter()
            .enumerate()
            .map(|(v, c)| c.ok_or(FixtureError::MissingCoord(v + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AxialFixture {
            name: name.to_string(),
            graph: file.graph,
            coords,
        })
    }

    /// The fixture's vertices as `H(m,n)` vertices, translated into the
    /// smallest grid of the form `H(m,n)` that holds them.
    pub fn embed_in_hex_grid(&self) -> Option<HexEmbedding> {
        let cells = self
            .coords
            .iter()
            .map(|&c| GridVertex::from_lattice(c))
            .collect::<Option<Vec<_>>>()?;
        if cells.is_empty() {
            return None;
        }
        // shifts with di + dj even preserve the lattice structure
        let di = 1 - cells.iter().map(|c| c.i).min()?;
        let mut dj = cells.iter().map(|c| (c.i + di - 1).max(1) - c.j).max()?;
        if (di + dj).rem_euclid(2) == 1 {
            dj += 1;
        }
        let shifted: Vec<GridVertex> = cells
            .iter()
            .map(|c| GridVertex::new(c.i + di, c.j + dj))
            .collect();
        let m = (shifted.iter().map(|c| c.i).max()? - 1).max(1);
        let n = shifted
            .iter()
            .map(|c| {
                let need_a = (c.j - c.i + 1).div_euclid(2);
                let need_b = (c.j - m + 1).div_euclid(2);
                need_a.max(need_b)
            })
            .max()?
            .max(1);
        let grid = build_hex_grid(m as usize, n as usize).ok()?;
        let map = shifted
            .iter()
            .map(|c| grid.index_of(c.i, c.j))
            .collect::<Option<Vec<_>>>()?;
        let edges: HashSet<(usize, usize)> = grid
            .graph()
            .edges()
            .iter()
            .flat_map(|&(u, v)| [(u, v), (v, u)])
            .collect();
        if !self
            .graph
            .arcs()
            .iter()
            .all(|&(u, v)| edges.contains(&(map[u], map[v])))
        {
            return None;
        }
        Some(HexEmbedding { grid, map })
    }
}

/// A placement of a digraph's vertices into `H(m,n)` along grid edges.
#[derive(Debug, Clone)]
pub struct HexEmbedding {
    pub grid: HexGrid,
    /// `map[v]` is the grid vertex index hosting fixture vertex `v`.
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FixtureViolation {
    CoordinateClash { u: usize, v: usize },
    HexagonCentre { v: usize },
    NotLatticeNeighbours { u: usize, v: usize },
    DegreeTooHigh { v: usize, degree: usize },
    CoordCount { coords: usize, vertices: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub violations: Vec<FixtureViolation>,
}

impl FixtureReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every arc joins lattice neighbours, that no two vertices
/// share a site, and that no vertex has degree above 3. Vertices are
/// reported 1-based.
pub fn validate_axial_fixture(f: &AxialFixture) -> FixtureReport {
    let mut violations = Vec::new();
    let n = f.graph.n_vertices();
    if f.coords.len() != n {
        violations.push(FixtureViolation::CoordCount {
            coords: f.coords.len(),
            vertices: n,
        });
        return FixtureReport { violations };
    }
    let mut owner: HashMap<(i64, i64), usize> = HashMap::new();
    for (v, &c) in f.coords.iter().enumerate() {
        if let Some(&u) = owner.get(&c) {
            violations.push(FixtureViolation::CoordinateClash { u: u + 1, v: v + 1 });
        } else {
            owner.insert(c, v);
        }
        if lattice_offsets(c).is_none() {
            violations.push(FixtureViolation::HexagonCentre { v: v + 1 });
        }
    }
    let mut degree = vec![0usize; n];
    for &(u, v) in f.graph.arcs() {
        degree[u] += 1;
        degree[v] += 1;
        if !lattice_adjacent(f.coords[u], f.coords[v])
            || !lattice_adjacent(f.coords[v], f.coords[u])
        {
            violations.push(FixtureViolation::NotLatticeNeighbours { u: u + 1, v: v + 1 });
        }
    }
    for (v, &d) in degree.iter().enumerate() {
        if d > 3 {
            violations.push(FixtureViolation::DegreeTooHigh {
                v: v + 1,
                degree: d,
            });
        }
    }
    FixtureReport { violations }
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn fixture_h4() -> AxialFixture {
    AxialFixture::parse("H4", H4_FIXTURE).expect("shipped fixture parses")
}

pub fn fixture_h49() -> AxialFixture {
    AxialFixture::parse("H49", H49_FIXTURE).expect("shipped fixture parses")
}
