//! Coloring orientations of `H(m,n)` into a 6-tournament.
//!
//! The first row is an oriented path and is colored greedily. Every later
//! row starts with a greedy choice against its upper neighbour, then
//! advances two vertices at a time: the grid path
//! `v(k,j), v(k,j+1), v(k,j+2), v(k-1,j+2)` has both end colors fixed, and a
//! [`PathTable`] supplies the two middle colors for whatever orientation the
//! three edges carry. Vertices past the last upper anchor only touch their
//! left neighbour and are colored greedily again.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::digraph::{orient, OrientationCode, OrientedGraph};
use crate::hexgrid::{HexEmbedding, HexGrid};
use crate::hom::Homomorphism;
use crate::tournament::Tournament;

pub type GridColoring = Homomorphism;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HexColorError {
    #[error("target needs minimum in- and out-degree 1 (got in {min_in}, out {min_out})")]
    TargetDegree { min_in: usize, min_out: usize },
    #[error("oriented graph is not an orientation of the grid")]
    NotAnOrientation,
    #[error("no path-table entry for {u} -> {v} with pattern {pattern}")]
    MissingTableEntry {
        u: usize,
        v: usize,
        pattern: OrientationPattern,
    },
    #[error("no color for grid vertex {0} is compatible with its colored neighbours")]
    Stuck(usize),
    #[error("arc {0}->{1} of the subgraph is not an arc of the host orientation")]
    HostMismatch(usize, usize),
    #[error("embedding maps {got} vertices, subgraph has {want}")]
    EmbeddingSize { got: usize, want: usize },
}

/// Directions along a 3-edge path `u, x, y, v`. Bit `r` is set when edge `r`
/// points from the `u` side toward the `v` side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrientationPattern(u8);

impl OrientationPattern {
    pub fn new(bits: u8) -> Self {
        assert!(bits < 8, "a pattern has three bits");
        OrientationPattern(bits)
    }

    pub fn from_directions(d: [bool; 3]) -> Self {
        OrientationPattern(d[0] as u8 | (d[1] as u8) << 1 | (d[2] as u8) << 2)
    }

    pub fn forward(self, r: usize) -> bool {
        self.0 >> r & 1 == 1
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = OrientationPattern> {
        (0..8).map(OrientationPattern)
    }
}

impl fmt::Display for OrientationPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..3 {
            f.write_str(if self.forward(r) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// `(u, v, pattern) -> (x, y)` with `u, x, y, v` realizing the pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathTable {
    order: usize,
    entries: Vec<Option<(u8, u8)>>,
}

impl PathTable {
    fn slot(&self, u: usize, v: usize, p: OrientationPattern) -> usize {
        (u * self.order + v) * 8 + p.0 as usize
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, u: usize, v: usize, p: OrientationPattern) -> Option<(usize, usize)> {
        self.entries[self.slot(u, v, p)].map(|(x, y)| (x as usize, y as usize))
    }

    pub fn len(&self) -> usize {
        self.entries.iter().filter(|e| e.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(
        &self,
    ) -> impl Iterator<Item = (usize, usize, OrientationPattern, (usize, usize))> + '_ {
        let k = self.order;
        (0..k).flat_map(move |u| {
            (0..k).flat_map(move |v| {
                OrientationPattern::all()
                    .filter_map(move |p| self.get(u, v, p).map(|xy| (u, v, p, xy)))
            })
        })
    }
}

/// Does the walk `u, x, y, v` realize `p` in `t`?
pub fn walk_matches(t: &Tournament, walk: [usize; 4], p: OrientationPattern) -> bool {
    (0..3).all(|r| {
        let (a, b) = (walk[r], walk[r + 1]);
        a != b && t.dominates(a, b) == p.forward(r)
    })
}

#[derive(Debug, Clone)]
pub struct Property1Check {
    pub include_equal_endpoints: bool,
    pub table: PathTable,
    pub missing: Vec<(usize, usize, OrientationPattern)>,
}

impl Property1Check {
    pub fn holds(&self) -> bool {
        self.missing.is_empty()
    }

    /// Number of `(u, v, pattern)` cases examined.
    pub fn cases(&self) -> usize {
        self.table.len() + self.missing.len()
    }
}

/// For every ordered pair `u != v` (and `u == v` when asked) and each of
/// the 8 patterns, looks for the lexicographically first `(x, y)`.
pub fn check_property1(t: &Tournament, include_equal_endpoints: bool) -> Property1Check {
    let k = t.order();
    let mut table = PathTable {
        order: k,
        entries: vec![None; k * k * 8],
    };
    let mut missing = Vec::new();
    for u in 0..k {
        for v in 0..k {
            if u == v && !include_equal_endpoints {
                continue;
            }
            for p in OrientationPattern::all() {
                let found = (0..k)
                    .flat_map(|x| (0..k).map(move |y| (x, y)))
                    .find(|&(x, y)| walk_matches(t, [u, x, y, v], p));
                let slot = table.slot(u, v, p);
                match found {
                    Some((x, y)) => table.entries[slot] = Some((x as u8, y as u8)),
                    None => missing.push((u, v, p)),
                }
            }
        }
    }
    Property1Check {
        include_equal_endpoints,
        table,
        missing,
    }
}

fn check_degrees(t: &Tournament) -> Result<(), HexColorError> {
    let min_in = (0..t.order()).map(|u| t.in_degree(u)).min().unwrap_or(0);
    let min_out = (0..t.order()).map(|u| t.out_degree(u)).min().unwrap_or(0);
    if min_in < 1 || min_out < 1 {
        return Err(HexColorError::TargetDegree { min_in, min_out });
    }
    Ok(())
}

/// Colors an oriented path. `forward[r]` says whether the `r`-th edge points
/// from vertex `r` to vertex `r + 1`.
pub fn color_first_row(forward: &[bool], target: &Tournament) -> Result<Vec<usize>, HexColorError> {
    check_degrees(target)?;
    let mut colors = Vec::with_capacity(forward.len() + 1);
    colors.push(0);
    for &fwd in forward {
        let prev = *colors.last().expect("nonempty");
        let next = (0..target.order())
            .find(|&c| {
                if fwd {
                    target.dominates(prev, c)
                } else {
                    target.dominates(c, prev)
                }
            })
            .expect("degree precondition guarantees a neighbour");
        colors.push(next);
    }
    Ok(colors)
}

struct GridArcs<'a> {
    grid: &'a HexGrid,
    arcs: HashSet<(usize, usize)>,
}

impl GridArcs<'_> {
    fn at(&self, i: i64, j: i64) -> usize {
        self.grid.index_of(i, j).expect("vertex inside the grid")
    }

    /// Whether the grid edge `a - b` is oriented `a -> b`.
    fn forward(&self, a: usize, b: usize) -> bool {
        self.arcs.contains(&(a, b))
    }
}

fn greedy(
    v: usize,
    colored: &[(usize, bool)],
    colors: &[Option<usize>],
    target: &Tournament,
) -> Result<usize, HexColorError> {
    // colored: (neighbour, neighbour -> v)
    (0..target.order())
        .find(|&c| {
            colored.iter().all(|&(w, into_v)| {
                let cw = colors[w].expect("neighbour colored");
                if into_v {
                    target.dominates(cw, c)
                } else {
                    target.dominates(c, cw)
                }
            })
        })
        .ok_or(HexColorError::Stuck(v))
}

/// Colors an orientation of `grid` into `target` using `table`, which must
/// come from [`check_property1`] with equal endpoints included.
pub fn color_hex(
    grid: &HexGrid,
    oriented: &OrientedGraph,
    target: &Tournament,
    table: &PathTable,
) -> Result<GridColoring, HexColorError> {
    check_degrees(target)?;
    let g = grid.graph();
    if oriented.n_vertices() != g.n_vertices() || oriented.n_arcs() != g.n_edges() {
        return Err(HexColorError::NotAnOrientation);
    }
    let edges: HashSet<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    if !oriented
        .arcs()
        .iter()
        .all(|&(u, v)| edges.contains(&(u.min(v), u.max(v))))
    {
        return Err(HexColorError::NotAnOrientation);
    }
    let ga = GridArcs {
        grid,
        arcs: oriented.arcs().iter().copied().collect(),
    };
    let mut colors: Vec<Option<usize>> = vec![None; g.n_vertices()];

    let (lo, hi) = grid.row_range(1);
    let forward: Vec<bool> = (lo..hi)
        .map(|j| ga.forward(ga.at(1, j), ga.at(1, j + 1)))
        .collect();
    for (j, c) in (lo..=hi).zip(color_first_row(&forward, target)?) {
        colors[ga.at(1, j)] = Some(c);
    }

    for i in 2..=grid.rows() {
        let (lo, hi) = grid.row_range(i);
        let (_, upper_hi) = grid.row_range(i - 1);

        let first = ga.at(i, lo);
        let up = ga.at(i - 1, lo);
        colors[first] = Some(greedy(
            first,
            &[(up, ga.forward(up, first))],
            &colors,
            target,
        )?);

        let mut j = lo;
        while j + 2 <= upper_hi {
            let (a, x, y, b) = (
                ga.at(i, j),
                ga.at(i, j + 1),
                ga.at(i, j + 2),
                ga.at(i - 1, j + 2),
            );
            let p = OrientationPattern::from_directions([
                ga.forward(a, x),
                ga.forward(x, y),
                ga.forward(y, b),
            ]);
            let (cu, cv) = (
                colors[a].expect("anchor colored"),
                colors[b].expect("upper row colored"),
            );
            let (cx, cy) = table
                .get(cu, cv, p)
                .ok_or(HexColorError::MissingTableEntry {
                    u: cu,
                    v: cv,
                    pattern: p,
                })?;
            colors[x] = Some(cx);
            colors[y] = Some(cy);
            j += 2;
        }

        for jj in j + 1..=hi {
            let v = ga.at(i, jj);
            let left = ga.at(i, jj - 1);
            let mut constraints = vec![(left, ga.forward(left, v))];
            if let Some(up) = grid.index_of(i - 1, jj) {
                if colors[up].is_some() && edges.contains(&(up.min(v), up.max(v))) {
                    constraints.push((up, ga.forward(up, v)));
                }
            }
            colors[v] = Some(greedy(v, &constraints, &colors, target)?);
        }
    }

    Ok(Homomorphism(
        colors
            .into_iter()
            .map(|c| c.expect("every row colored"))
            .collect(),
    ))
}

/// Orients the grid of `embedding` so that it agrees with `g` on the edges
/// `g` occupies; every other edge follows `fill`.
pub fn host_orientation(
    embedding: &HexEmbedding,
    g: &OrientedGraph,
    fill: &OrientationCode,
) -> OrientedGraph {
    let grid = embedding.grid.graph();
    let placed: HashSet<(usize, usize)> = g
        .arcs()
        .iter()
        .map(|&(u, v)| (embedding.map[u], embedding.map[v]))
        .collect();
    let bits = grid
        .edges()
        .iter()
        .zip(&fill.0)
        .map(|(&(a, b), &bit)| {
            if placed.contains(&(a, b)) {
                true
            } else if placed.contains(&(b, a)) {
                false
            } else {
                bit
            }
        })
        .collect();
    orient(grid, &OrientationCode(bits)).expect("code sized to the grid")
}

/// Colors the host orientation and restricts the coloring to `g`, whose
/// vertex `v` sits at host vertex `embedding.map[v]`.
pub fn upper_bound_certificate(
    g: &OrientedGraph,
    embedding: &HexEmbedding,
    host: &OrientedGraph,
    target: &Tournament,
    table: &PathTable,
) -> Result<Homomorphism, HexColorError> {
    if embedding.map.len() != g.n_vertices() {
        return Err(HexColorError::EmbeddingSize {
            got: embedding.map.len(),
            want: g.n_vertices(),
        });
    }
    let host_arcs: HashSet<(usize, usize)> = host.arcs().iter().copied().collect();
    for &(u, v) in g.arcs() {
        if !host_arcs.contains(&(embedding.map[u], embedding.map[v])) {
            return Err(HexColorError::HostMismatch(u, v));
        }
    }
    let coloring = color_hex(&embedding.grid, host, target, table)?;
    Ok(Homomorphism(
        embedding.map.iter().map(|&h| coloring.0[h]).collect(),
    ))
}
