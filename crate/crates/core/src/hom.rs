//! Homomorphisms from oriented graphs into tournaments.
//!
//! [`homomorphism_exists`] is a complete backtracking search with forward
//! checking. [`brute_force_hom`] enumerates every map and exists only as an
//! independent check on the search.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::digraph::OrientedGraph;
use crate::tournament::{
    enumerate_tournaments_with_limit, Tournament, TournamentError, DEFAULT_ENUMERATION_LIMIT,
};

/// Largest `k^n` that [`brute_force_hom`] will scan.
pub const BRUTE_FORCE_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("map has {got} entries, source has {want} vertices")]
    Partial { got: usize, want: usize },
    #[error("color {color} of vertex {vertex} is not a target vertex (order {order})")]
    ColorOutOfRange {
        vertex: usize,
        color: usize,
        order: usize,
    },
    #[error("brute force over {k}^{n} maps exceeds the limit")]
    TooLarge { k: usize, n: usize },
    #[error(transparent)]
    Tournament(#[from] TournamentError),
}

/// A vertex map, `self.0[v]` being the color (target vertex) of source vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Homomorphism(pub Vec<usize>);

impl Homomorphism {
    pub fn colors(&self) -> &[usize] {
        &self.0
    }

    pub fn colors_used(&self) -> usize {
        let mut seen: Vec<usize> = self.0.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Value assignments tried.
    pub nodes: u64,
    /// Deepest search level reached.
    pub max_depth: usize,
}

impl SearchStats {
    fn absorb(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        self.max_depth = self.max_depth.max(other.max_depth);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomResult {
    Found {
        witness: Homomorphism,
        stats: SearchStats,
    },
    None {
        stats: SearchStats,
    },
}

impl HomResult {
    pub fn is_found(&self) -> bool {
        matches!(self, HomResult::Found { .. })
    }

    pub fn witness(&self) -> Option<&Homomorphism> {
        match self {
            HomResult::Found { witness, .. } => Some(witness),
            HomResult::None { .. } => None,
        }
    }

    pub fn stats(&self) -> SearchStats {
        match self {
            HomResult::Found { stats, .. } | HomResult::None { stats } => *stats,
        }
    }
}

/// True iff every arc of `g` lands on an arc of `t` under `phi`.
pub fn validate_homomorphism(
    g: &OrientedGraph,
    t: &Tournament,
    phi: &Homomorphism,
) -> Result<bool, HomError> {
    if phi.0.len() != g.n_vertices() {
        return Err(HomError::Partial {
            got: phi.0.len(),
            want: g.n_vertices(),
        });
    }
    if let Some((vertex, &color)) = phi.0.iter().enumerate().find(|(_, &c)| c >= t.order()) {
        return Err(HomError::ColorOutOfRange {
            vertex,
            color,
            order: t.order(),
        });
    }
    Ok(g.arcs()
        .iter()
        .all(|&(u, v)| t.dominates(phi.0[u], phi.0[v])))
}

pub fn homomorphism_exists(g: &OrientedGraph, t: &Tournament) -> HomResult {
    Search::new(g, t).run(None).expect("no deadline")
}

/// Like [`homomorphism_exists`] but gives up (returning `None`) once
/// `budget` has elapsed.
pub fn homomorphism_exists_within(
    g: &OrientedGraph,
    t: &Tournament,
    budget: Duration,
) -> Option<HomResult> {
    Search::new(g, t).run(Some(Instant::now() + budget))
}

#[derive(Clone, Copy)]
enum Dir {
    Out,
    In,
}

struct Search<'a> {
    target: &'a Tournament,
    n: usize,
    adj: Vec<Vec<(usize, Dir)>>,
}

impl<'a> Search<'a> {
    fn new(g: &OrientedGraph, target: &'a Tournament) -> Self {
        let n = g.n_vertices();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in g.arcs() {
            adj[u].push((v, Dir::Out));
            adj[v].push((u, Dir::In));
        }
        for list in &mut adj {
            list.sort_by_key(|&(w, _)| w);
        }
        Search { target, n, adj }
    }

    /// Components, each in breadth-first order from its highest-degree vertex
    /// (lowest index on ties). Components are listed by smallest member.
    fn orders(&self) -> Vec<Vec<usize>> {
        let mut comp_of = vec![usize::MAX; self.n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for root in 0..self.n {
            if comp_of[root] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut members = vec![root];
            comp_of[root] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &(w, _) in &self.adj[u] {
                    if comp_of[w] == usize::MAX {
                        comp_of[w] = id;
                        members.push(w);
                    }
                }
            }
            comps.push(members);
        }
        comps
            .into_iter()
            .map(|members| {
                let start = *members
                    .iter()
                    .min_by_key(|&&v| (std::cmp::Reverse(self.adj[v].len()), v))
                    .expect("components are nonempty");
                let mut seen = vec![false; self.n];
                let mut order = Vec::with_capacity(members.len());
                let mut queue = VecDeque::from([start]);
                seen[start] = true;
                while let Some(u) = queue.pop_front() {
                    order.push(u);
                    for &(w, _) in &self.adj[u] {
                        if !seen[w] {
                            seen[w] = true;
                            queue.push_back(w);
                        }
                    }
                }
                order
            })
            .collect()
    }

    fn run(&self, deadline: Option<Instant>) -> Option<HomResult> {
        let k = self.target.order();
        let full: u32 = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
        let mut colors = vec![usize::MAX; self.n];
        let mut stats = SearchStats::default();
        for order in self.orders() {
            let (found, comp_stats) = self.solve_component(&order, full, &mut colors, deadline)?;
            stats.absorb(comp_stats);
            if !found {
                return Some(HomResult::None { stats });
            }
        }
        Some(HomResult::Found {
            witness: Homomorphism(colors),
            stats,
        })
    }

    /// Iterative depth-first search over `order`. Domains are bitmasks of
    /// target vertices; every assignment filters the domains of unassigned
    /// neighbours, recording old values on a trail for undo.
    fn solve_component(
        &self,
        order: &[usize],
        full: u32,
        colors: &mut [usize],
        deadline: Option<Instant>,
    ) -> Option<(bool, SearchStats)> {
        let mut stats = SearchStats::default();
        let mut domain = vec![full; self.n];
        let mut assigned = vec![false; self.n];
        let mut trail: Vec<(usize, u32)> = Vec::new();
        // per depth: untried candidates and trail mark
        let mut untried: Vec<u32> = Vec::with_capacity(order.len());
        let mut marks: Vec<usize> = Vec::with_capacity(order.len());

        if full == 0 {
            return Some((false, stats));
        }
        untried.push(domain[order[0]]);
        marks.push(0);

        loop {
            let depth = untried.len() - 1;
            let var = order[depth];
            // undo whatever the previous value at this depth filtered
            while trail.len() > marks[depth] {
                let (w, old) = trail.pop().expect("trail above mark");
                domain[w] = old;
            }
            assigned[var] = false;

            let cands = untried[depth];
            if cands == 0 {
                untried.pop();
                marks.pop();
                if untried.is_empty() {
                    return Some((false, stats));
                }
                continue;
            }
            let color = cands.trailing_zeros() as usize;
            untried[depth] = cands & (cands - 1);
            stats.nodes += 1;
            stats.max_depth = stats.max_depth.max(depth + 1);
            if stats.nodes & 0xfff == 0 {
                if let Some(d) = deadline {
                    if Instant::now() >= d {
                        return None;
                    }
                }
            }

            colors[var] = color;
            assigned[var] = true;
            let out = self.target.out_mask(color);
            let inn = self.target.in_mask(color);
            let mut wiped = false;
            for &(w, dir) in &self.adj[var] {
                if assigned[w] {
                    continue;
                }
                let allowed = match dir {
                    Dir::Out => out,
                    Dir::In => inn,
                };
                let next = domain[w] & allowed;
                if next != domain[w] {
                    trail.push((w, domain[w]));
                    domain[w] = next;
                    if next == 0 {
                        wiped = true;
                        break;
                    }
                }
            }
            if wiped {
                continue;
            }
            if depth + 1 == order.len() {
                return Some((true, stats));
            }
            marks.push(trail.len());
            untried.push(domain[order[depth + 1]]);
        }
    }
}

/// Scans all `k^n` maps in lexicographic order and returns the first valid one.
pub fn brute_force_hom(g: &OrientedGraph, t: &Tournament) -> Result<HomResult, HomError> {
    let n = g.n_vertices();
    let k = t.order();
    let total = (k as u64)
        .checked_pow(n as u32)
        .filter(|&c| c <= BRUTE_FORCE_LIMIT);
    let Some(total) = total else {
        return Err(HomError::TooLarge { k, n });
    };
    let mut stats = SearchStats::default();
    if total == 0 {
        // k == 0 with n > 0: no maps at all
        return Ok(HomResult::None { stats });
    }
    let mut phi = vec![0usize; n];
    loop {
        stats.nodes += 1;
        if g.arcs().iter().all(|&(u, v)| t.dominates(phi[u], phi[v])) {
            stats.max_depth = n;
            return Ok(HomResult::Found {
                witness: Homomorphism(phi),
                stats,
            });
        }
        // odometer, last vertex fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(HomResult::None { stats });
            }
            pos -= 1;
            phi[pos] += 1;
            if phi[pos] < k {
                break;
            }
            phi[pos] = 0;
        }
    }
}

pub fn colorable_with_order(g: &OrientedGraph, k: usize) -> Result<bool, HomError> {
    Ok(coloring_with_order(g, k)?.is_some())
}

/// The first `k`-tournament (in enumeration order) that `g` maps into, with a witness.
pub fn coloring_with_order(
    g: &OrientedGraph,
    k: usize,
) -> Result<Option<(Tournament, Homomorphism)>, HomError> {
    let targets = enumerate_tournaments_with_limit(k, DEFAULT_ENUMERATION_LIMIT)?;
    Ok(targets
        .into_iter()
        .find_map(|t| match homomorphism_exists(g, &t) {
            HomResult::Found { witness, .. } => Some((t, witness)),
            HomResult::None { .. } => None,
        }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChiO {
    Exact(usize),
    /// Not colorable with any tournament of order up to the given bound.
    Above(usize),
}

/// Least `k <= k_max` such that `g` has an oriented `k`-coloring.
pub fn chi_o(g: &OrientedGraph, k_max: usize) -> Result<ChiO, HomError> {
    for k in 0..=k_max {
        if colorable_with_order(g, k)? {
            return Ok(ChiO::Exact(k));
        }
    }
    Ok(ChiO::Above(k_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::{five_tournament, parse_tournament};

    fn single_arc() -> OrientedGraph {
        OrientedGraph::new(2, vec![(0, 1)]).unwrap()
    }

    #[test]
    fn validate_examples() {
        let t = five_tournament(5);
        let (a, b) = t.arcs()[0];
        let g = single_arc();
        assert!(validate_homomorphism(&g, &t, &Homomorphism(vec![a, b])).unwrap());
        assert!(!validate_homomorphism(&g, &t, &Homomorphism(vec![b, a])).unwrap());
        let c3 = OrientedGraph::directed_cycle(3);
        assert!(validate_homomorphism(
            &c3,
            &Tournament::three_cycle(),
            &Homomorphism(vec![0, 1, 2])
        )
        .unwrap());
    }

    #[test]
    fn validate_errors() {
        let t = Tournament::three_cycle();
        let g = single_arc();
        assert_eq!(
            validate_homomorphism(&g, &t, &Homomorphism(vec![0])).unwrap_err(),
            HomError::Partial { got: 1, want: 2 }
        );
        assert_eq!(
            validate_homomorphism(&g, &t, &Homomorphism(vec![0, 3])).unwrap_err(),
            HomError::ColorOutOfRange {
                vertex: 1,
                color: 3,
                order: 3
            }
        );
    }

    #[test]
    fn cycle_into_transitive() {
        let c3 = OrientedGraph::directed_cycle(3);
        let zero = parse_tournament("0000000000", 5).unwrap();
        assert!(!homomorphism_exists(&c3, &zero).is_found());
        assert!(!brute_force_hom(&c3, &Tournament::transitive(3))
            .unwrap()
            .is_found());
        assert!(brute_force_hom(&single_arc(), &Tournament::transitive(2))
            .unwrap()
            .is_found());
    }

    #[test]
    fn directed_hexagon_agrees_with_oracle() {
        let c6 = OrientedGraph::directed_cycle(6);
        let t5 = five_tournament(5);
        let fast = homomorphism_exists(&c6, &t5);
        let slow = brute_force_hom(&c6, &t5).unwrap();
        assert_eq!(fast.is_found(), slow.is_found());
        if let Some(w) = fast.witness() {
            assert!(validate_homomorphism(&c6, &t5, w).unwrap());
        }
    }

    #[test]
    fn brute_force_guard() {
        let g = OrientedGraph::empty(11);
        assert_eq!(
            brute_force_hom(&g, &five_tournament(1)).unwrap_err(),
            HomError::TooLarge { k: 5, n: 11 }
        );
    }

    #[test]
    fn empty_and_isolated() {
        let t = five_tournament(3);
        assert_eq!(
            homomorphism_exists(&OrientedGraph::empty(0), &t).witness(),
            Some(&Homomorphism(vec![]))
        );
        let w = homomorphism_exists(&OrientedGraph::empty(3), &t);
        assert_eq!(w.witness(), Some(&Homomorphism(vec![0, 0, 0])));
        assert!(
            !homomorphism_exists(&OrientedGraph::empty(1), &Tournament::transitive(0)).is_found()
        );
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi_o(&single_arc(), 5).unwrap(), ChiO::Exact(2));
        let c3 = OrientedGraph::directed_cycle(3);
        assert!(!colorable_with_order(&c3, 2).unwrap());
        assert!(colorable_with_order(&c3, 3).unwrap());
        assert_eq!(chi_o(&c3, 5).unwrap(), ChiO::Exact(3));
        let alt_c4 = OrientedGraph::new(4, vec![(0, 1), (2, 1), (2, 3), (0, 3)]).unwrap();
        assert_eq!(chi_o(&alt_c4, 5).unwrap(), ChiO::Exact(2));
        assert_eq!(chi_o(&OrientedGraph::empty(3), 5).unwrap(), ChiO::Exact(1));
        assert_eq!(chi_o(&OrientedGraph::empty(0), 5).unwrap(), ChiO::Exact(0));
        assert_eq!(chi_o(&c3, 2).unwrap(), ChiO::Above(2));
        assert!(colorable_with_order(&c3, 6).is_err());
    }

    #[test]
    fn components_solved_separately() {
        // a directed triangle next to an isolated arc
        let g = OrientedGraph::new(5, vec![(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap();
        let r = homomorphism_exists(&g, &Tournament::three_cycle());
        assert!(
            validate_homomorphism(&g, &Tournament::three_cycle(), r.witness().unwrap()).unwrap()
        );
        assert!(!homomorphism_exists(&g, &Tournament::transitive(3)).is_found());
    }

    #[test]
    fn deterministic_witness() {
        let g = OrientedGraph::directed_cycle(7);
        let t = five_tournament(11);
        assert_eq!(homomorphism_exists(&g, &t), homomorphism_exists(&g, &t));
    }
}
