//! Tournaments: bitstring codec, canonical forms, enumeration up to
//! isomorphism, the double score set, and the built-in named tournaments.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::digraph::OrientedGraph;

/// Largest order accepted by [`canonical_form`] (8! relabelings).
pub const MAX_CANONICAL_ORDER: usize = 8;
/// Default order limit for [`enumerate_tournaments`].
pub const DEFAULT_ENUMERATION_LIMIT: usize = 5;
/// Hard ceiling for the enumeration limit.
pub const MAX_ENUMERATION_ORDER: usize = 6;

/// The twelve 5-tournaments `T1..T12`, upper triangle in row order.
pub const FIVE_TOURNAMENTS: [&str; 12] = [
    "0000000000",
    "0000000101",
    "0000100010",
    "0000100100",
    "0001100100",
    "0010100101",
    "1000001000",
    "1000010000",
    "1000100000",
    "1000100101",
    "1000110101",
    "1100101110",
];

/// Arcs of the 6-tournament used as the universal target for hexagonal grids.
pub const A6_ARCS: [(usize, usize); 15] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 2),
    (1, 5),
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 4),
    (3, 1),
    (4, 5),
    (4, 0),
    (4, 1),
    (5, 0),
    (5, 3),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TournamentError {
    #[error("bitstring has {got} bits, order {k} needs {want}")]
    BitLength { k: usize, got: usize, want: usize },
    #[error("invalid bit character {0:?}")]
    BadBit(char),
    #[error("order {k} exceeds the limit of {limit}")]
    OrderTooLarge { k: usize, limit: usize },
    #[error("operation needs order {want}, got {got}")]
    WrongOrder { want: usize, got: usize },
    #[error("arcs do not form a tournament: {0}")]
    NotATournament(String),
    #[error("unknown tournament {0:?} (expected T1..T12, A6 or k:bits)")]
    UnknownName(String),
}

/// A complete oriented graph on `0..k`, stored as out-neighbour bitmasks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    out: Vec<u32>,
}

impl Tournament {
    /// Builds the tournament in which `i` dominates `j` iff `dominates(i, j)`, for `i < j`.
    pub fn from_upper<F: FnMut(usize, usize) -> bool>(k: usize, mut dominates: F) -> Self {
        assert!(k <= 32, "tournaments are limited to 32 vertices");
        let mut out = vec![0u32; k];
        for i in 0..k {
            for j in i + 1..k {
                if dominates(i, j) {
                    out[i] |= 1 << j;
                } else {
                    out[j] |= 1 << i;
                }
            }
        }
        Tournament { out }
    }

    pub fn from_arcs(k: usize, arcs: &[(usize, usize)]) -> Result<Self, TournamentError> {
        let bad = |msg: String| TournamentError::NotATournament(msg);
        if arcs.len() != k * k.saturating_sub(1) / 2 {
            return Err(bad(format!("{} arcs for order {k}", arcs.len())));
        }
        let mut out = vec![0u32; k];
        for &(u, v) in arcs {
            if u >= k || v >= k || u == v {
                return Err(bad(format!("arc {u}->{v}")));
            }
            if out[v] & (1 << u) != 0 || out[u] & (1 << v) != 0 {
                return Err(bad(format!("pair {{{u},{v}}} covered twice")));
            }
            out[u] |= 1 << v;
        }
        Ok(Tournament { out })
    }

    /// The transitive tournament in which `i` dominates `j` iff `i < j`.
    pub fn transitive(k: usize) -> Self {
        Tournament::from_upper(k, |_, _| true)
    }

    /// The cyclic 3-tournament `0 -> 1 -> 2 -> 0`.
    pub fn three_cycle() -> Self {
        Tournament::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).expect("valid")
    }

    pub fn order(&self) -> usize {
        self.out.len()
    }

    #[inline]
    pub fn dominates(&self, u: usize, v: usize) -> bool {
        self.out[u] >> v & 1 == 1
    }

    #[inline]
    pub fn out_mask(&self, u: usize) -> u32 {
        self.out[u]
    }

    #[inline]
    pub fn in_mask(&self, u: usize) -> u32 {
        let all = if self.order() == 32 {
            u32::MAX
        } else {
            (1u32 << self.order()) - 1
        };
        all & !self.out[u] & !(1 << u)
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].count_ones() as usize
    }

    pub fn in_degree(&self, u: usize) -> usize {
        self.in_mask(u).count_ones() as usize
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|u| self.out_degree(u)).collect()
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let k = self.order();
        (0..k)
            .flat_map(|u| {
                (0..k)
                    .filter(move |&v| self.dominates(u, v))
                    .map(move |v| (u, v))
            })
            .collect()
    }

    /// Checks completeness, irreflexivity and the out-degree sum.
    pub fn is_complete(&self) -> bool {
        let k = self.order();
        let pairs_ok = (0..k).all(|u| {
            !self.dominates(u, u)
                && (0..k)
                    .filter(|&v| v != u)
                    .all(|v| self.dominates(u, v) != self.dominates(v, u))
        });
        pairs_ok && self.out_degrees().iter().sum::<usize>() == k * k.saturating_sub(1) / 2
    }

    /// Renames vertex `i` to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Tournament {
        let k = self.order();
        assert_eq!(perm.len(), k);
        let mut inv = vec![0; k];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        Tournament::from_upper(k, |a, b| self.dominates(inv[a], inv[b]))
    }

    pub fn to_bitstring(&self) -> TournamentBitstring {
        let k = self.order();
        let bits = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .map(|(i, j)| self.dominates(i, j))
            .collect();
        TournamentBitstring { k, bits }
    }

    pub fn to_digraph(&self) -> OrientedGraph {
        OrientedGraph::new(self.order(), self.arcs()).expect("tournaments are oriented")
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament({})", self.to_bitstring())
    }
}

/// Upper triangle of the adjacency matrix in row order:
/// pairs `(0,1), (0,2), .., (0,k-1), (1,2), .., (k-2,k-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TournamentBitstring {
    k: usize,
    bits: Vec<bool>,
}

impl TournamentBitstring {
    pub fn new(k: usize, bits: Vec<bool>) -> Result<Self, TournamentError> {
        let want = k * k.saturating_sub(1) / 2;
        if bits.len() != want {
            return Err(TournamentError::BitLength {
                k,
                got: bits.len(),
                want,
            });
        }
        Ok(TournamentBitstring { k, bits })
    }

    pub fn parse(bits: &str, k: usize) -> Result<Self, TournamentError> {
        let bits = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(TournamentError::BadBit(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        TournamentBitstring::new(k, bits)
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Bit 1 at pair `(i, j)`, `i < j`, decodes to the arc `i -> j`.
    pub fn decode(&self) -> Tournament {
        let mut bits = self.bits.iter();
        Tournament::from_upper(self.k, |_, _| *bits.next().expect("length checked"))
    }

    /// `"<k>:<bits>"`.
    pub fn to_spec(&self) -> String {
        format!("{}:{}", self.k, self)
    }
}

impl fmt::Display for TournamentBitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub fn parse_tournament(bits: &str, k: usize) -> Result<Tournament, TournamentError> {
    TournamentBitstring::parse(bits, k).map(|b| b.decode())
}

/// Codes `u + 5v` of every arc `(u, v)` of a 5-tournament, ascending.
pub fn arc_codes(t: &Tournament) -> Result<Vec<usize>, TournamentError> {
    if t.order() != 5 {
        return Err(TournamentError::WrongOrder {
            want: 5,
            got: t.order(),
        });
    }
    let mut codes: Vec<usize> = t.arcs().into_iter().map(|(u, v)| u + 5 * v).collect();
    codes.sort_unstable();
    Ok(codes)
}

/// Lexicographically smallest bitstring over all vertex relabelings.
pub fn canonical_form(t: &Tournament) -> Result<TournamentBitstring, TournamentError> {
    let k = t.order();
    if k > MAX_CANONICAL_ORDER {
        return Err(TournamentError::OrderTooLarge {
            k,
            limit: MAX_CANONICAL_ORDER,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect();
    let mut best: Vec<bool> = t.to_bitstring().bits;
    let mut cand = vec![false; pairs.len()];
    // sigma maps new label -> old label
    for sigma in (0..k).permutations(k) {
        let mut smaller = false;
        let mut pruned = false;
        for (slot, &(a, b)) in pairs.iter().enumerate() {
            let bit = t.dominates(sigma[a], sigma[b]);
            cand[slot] = bit;
            if !smaller {
                if bit && !best[slot] {
                    pruned = true;
                    break;
                }
                if !bit && best[slot] {
                    smaller = true;
                }
            }
        }
        if smaller && !pruned {
            best.copy_from_slice(&cand);
        }
    }
    Ok(TournamentBitstring { k, bits: best })
}

pub fn enumerate_tournaments(k: usize) -> Result<Vec<Tournament>, TournamentError> {
    enumerate_tournaments_with_limit(k, DEFAULT_ENUMERATION_LIMIT)
}

/// One representative per isomorphism class of `k`-tournaments, found by
/// scanning every bitstring; sorted by canonical bitstring.
pub fn enumerate_tournaments_with_limit(
    k: usize,
    limit: usize,
) -> Result<Vec<Tournament>, TournamentError> {
    let limit = limit.min(MAX_ENUMERATION_ORDER);
    if k > limit {
        return Err(TournamentError::OrderTooLarge { k, limit });
    }
    let len = k * k.saturating_sub(1) / 2;
    let classes: BTreeSet<TournamentBitstring> = (0u64..1 << len)
        .into_par_iter()
        .map(|code| {
            let t = Tournament::from_upper_code(k, code);
            canonical_form(&t).expect("order within canonical limit")
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(classes.into_iter().map(|b| b.decode()).collect())
}

impl Tournament {
    /// Decodes the bitstring whose bits spell `code`, most significant first.
    fn from_upper_code(k: usize, code: u64) -> Tournament {
        let len = k * k.saturating_sub(1) / 2;
        let mut slot = 0;
        Tournament::from_upper(k, |_, _| {
            let bit = code >> (len - 1 - slot) & 1 == 1;
            slot += 1;
            bit
        })
    }
}

/// Per vertex `u`, the sum of out-degrees of the vertices `u` dominates.
/// Kept as a sorted multiset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DoubleScoreSet(pub Vec<usize>);

impl DoubleScoreSet {
    /// The same values with repeats removed.
    pub fn as_set(&self) -> Vec<usize> {
        self.0.iter().copied().dedup().collect()
    }
}

impl fmt::Display for DoubleScoreSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

pub fn double_score_set(t: &Tournament) -> DoubleScoreSet {
    let k = t.order();
    let deg = t.out_degrees();
    let mut ds: Vec<usize> = (0..k)
        .map(|u| (0..k).filter(|&v| t.dominates(u, v)).map(|v| deg[v]).sum())
        .collect();
    ds.sort_unstable();
    DoubleScoreSet(ds)
}

/// `T1..T12` in order.
pub fn named_five_tournaments() -> Vec<(String, Tournament)> {
    FIVE_TOURNAMENTS
        .iter()
        .enumerate()
        .map(|(i, bits)| {
            (
                format!("T{}", i + 1),
                parse_tournament(bits, 5).expect("valid fixture"),
            )
        })
        .collect()
}

/// `T_i` for `i` in `1..=12`.
pub fn five_tournament(i: usize) -> Tournament {
    assert!((1..=12).contains(&i), "T{i} does not exist");
    parse_tournament(FIVE_TOURNAMENTS[i - 1], 5).expect("valid fixture")
}

pub fn fixture_a6() -> Tournament {
    Tournament::from_arcs(6, &A6_ARCS).expect("A6 is a tournament")
}

/// Resolves `T1..T12`, `A6` or `"<k>:<bits>"`.
impl FromStr for Tournament {
    type Err = TournamentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("a6") {
            return Ok(fixture_a6());
        }
        if let Some(idx) = s.strip_prefix(['T', 't']) {
            if let Ok(i) = idx.parse::<usize>() {
                if (1..=12).contains(&i) {
                    return Ok(five_tournament(i));
                }
            }
            return Err(TournamentError::UnknownName(s.to_string()));
        }
        if let Some((k, bits)) = s.split_once(':') {
            let k: usize = k
                .parse()
                .map_err(|_| TournamentError::UnknownName(s.to_string()))?;
            if k > 32 {
                return Err(TournamentError::OrderTooLarge { k, limit: 32 });
            }
            return parse_tournament(bits, k);
        }
        Err(TournamentError::UnknownName(s.to_string()))
    }
}

/// Name of the `T_i` isomorphic to `t`, if `t` has order 5.
pub fn identify_five_tournament(t: &Tournament) -> Option<String> {
    if t.order() != 5 {
        return None;
    }
    let canon = canonical_form(t).ok()?;
    named_five_tournaments()
        .into_iter()
        .find(|(_, named)| canonical_form(named).ok().as_ref() == Some(&canon))
        .map(|(name, _)| name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn decode_conventions() {
        let zero = parse_tournament("0000000000", 5).unwrap();
        assert_eq!(zero.out_degrees(), vec![0, 1, 2, 3, 4]);
        assert!((0..5).all(|i| (i + 1..5).all(|j| zero.dominates(j, i))));
        let one = parse_tournament("1111111111", 5).unwrap();
        assert!((0..5).all(|i| (i + 1..5).all(|j| one.dominates(i, j))));
        assert_eq!(one, Tournament::transitive(5));
    }

    #[test]
    fn bit_length_checked() {
        assert_eq!(
            parse_tournament("000", 5).unwrap_err(),
            TournamentError::BitLength {
                k: 5,
                got: 3,
                want: 10
            }
        );
        assert_eq!(
            parse_tournament("0020000000", 5).unwrap_err(),
            TournamentError::BadBit('2')
        );
    }

    #[test]
    fn t5_arc_codes() {
        let t5 = parse_tournament("0001100100", 5).unwrap();
        assert_eq!(
            arc_codes(&t5).unwrap(),
            vec![1, 2, 3, 8, 9, 11, 14, 17, 19, 20]
        );
        assert!(t5.dominates(0, 4));
    }

    #[test]
    fn opposite_convention_would_not_match() {
        // flipping every bit is the other decoding convention
        let flipped: String = "0001100100"
            .chars()
            .map(|c| if c == '0' { '1' } else { '0' })
            .collect();
        let t = parse_tournament(&flipped, 5).unwrap();
        assert_ne!(
            arc_codes(&t).unwrap(),
            vec![1, 2, 3, 8, 9, 11, 14, 17, 19, 20]
        );
    }

    #[test]
    fn all_zero_arc_codes() {
        let zero = parse_tournament("0000000000", 5).unwrap();
        assert_eq!(
            arc_codes(&zero).unwrap(),
            vec![1, 2, 3, 4, 7, 8, 9, 13, 14, 19]
        );
        assert!(arc_codes(&Tournament::transitive(4)).is_err());
    }

    #[test]
    fn canonical_transitive() {
        let zero = parse_tournament("0000000000", 5).unwrap();
        let one = parse_tournament("1111111111", 5).unwrap();
        assert_eq!(
            canonical_form(&zero).unwrap(),
            canonical_form(&one).unwrap()
        );
        assert!(canonical_form(&Tournament::transitive(9)).is_err());
    }

    #[test]
    fn small_class_counts() {
        assert_eq!(enumerate_tournaments(1).unwrap().len(), 1);
        assert_eq!(enumerate_tournaments(2).unwrap().len(), 1);
        assert_eq!(enumerate_tournaments(3).unwrap().len(), 2);
        assert_eq!(enumerate_tournaments(4).unwrap().len(), 4);
        assert_eq!(enumerate_tournaments(5).unwrap().len(), 12);
        assert!(matches!(
            enumerate_tournaments(6),
            Err(TournamentError::OrderTooLarge { k: 6, limit: 5 })
        ));
    }

    #[test]
    fn enumeration_is_sorted_by_canonical_form() {
        let list = enumerate_tournaments(5).unwrap();
        let canon: Vec<_> = list.iter().map(|t| canonical_form(t).unwrap()).collect();
        assert!(canon.windows(2).all(|w| w[0] < w[1]));
        for (t, c) in list.iter().zip(&canon) {
            assert_eq!(&t.to_bitstring(), c);
        }
    }

    #[test]
    fn named_list_is_a_bijection() {
        let classes: BTreeSet<_> = enumerate_tournaments(5)
            .unwrap()
            .iter()
            .map(|t| canonical_form(t).unwrap())
            .collect();
        let named: BTreeSet<_> = named_five_tournaments()
            .iter()
            .map(|(_, t)| canonical_form(t).unwrap())
            .collect();
        assert_eq!(named.len(), 12);
        assert_eq!(named, classes);
    }

    #[test]
    fn double_score_examples() {
        assert_eq!(
            double_score_set(&Tournament::three_cycle()).0,
            vec![1, 1, 1]
        );
        let zero = parse_tournament("0000000000", 5).unwrap();
        assert_eq!(double_score_set(&zero).0, vec![0, 0, 1, 3, 6]);
        assert_eq!(double_score_set(&zero).as_set(), vec![0, 1, 3, 6]);
    }

    #[test]
    fn double_scores_pairwise_distinct() {
        let ds: Vec<_> = named_five_tournaments()
            .iter()
            .map(|(_, t)| double_score_set(t))
            .collect();
        for i in 0..12 {
            for j in i + 1..12 {
                assert_ne!(ds[i], ds[j], "T{} vs T{}", i + 1, j + 1);
            }
        }
    }

    #[test]
    fn a6_shape() {
        let a6 = fixture_a6();
        assert_eq!(a6.order(), 6);
        assert_eq!(a6.arcs().len(), 15);
        assert!(a6.is_complete());
        assert_eq!((0..6).map(|u| a6.out_degree(u)).min(), Some(2));
        assert_eq!((0..6).map(|u| a6.in_degree(u)).min(), Some(2));
        let mut degs = a6.out_degrees();
        degs.sort_unstable();
        assert_eq!(degs, vec![2, 2, 2, 3, 3, 3]);
    }

    #[test]
    fn name_resolution() {
        assert_eq!("T5".parse::<Tournament>().unwrap(), five_tournament(5));
        assert_eq!(
            "5:0001100100".parse::<Tournament>().unwrap(),
            five_tournament(5)
        );
        assert_eq!("A6".parse::<Tournament>().unwrap(), fixture_a6());
        assert!("T13".parse::<Tournament>().is_err());
        assert!("X".parse::<Tournament>().is_err());
        assert_eq!(
            identify_five_tournament(&five_tournament(7).relabel(&[4, 3, 2, 1, 0])).as_deref(),
            Some("T7")
        );
    }

    #[test]
    fn from_arcs_rejects_incomplete() {
        assert!(Tournament::from_arcs(3, &[(0, 1), (1, 2)]).is_err());
        assert!(Tournament::from_arcs(3, &[(0, 1), (1, 0), (1, 2)]).is_err());
    }

    #[test]
    fn random_tournaments_land_in_the_census() {
        let classes: BTreeSet<_> = enumerate_tournaments(5)
            .unwrap()
            .iter()
            .map(|t| canonical_form(t).unwrap())
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let t = Tournament::from_upper(5, |_, _| rng.gen());
            assert!(classes.contains(&canonical_form(&t).unwrap()));
        }
    }

    fn arb_tournament_and_perm() -> impl Strategy<Value = (Tournament, Vec<usize>)> {
        (1usize..=7, any::<u64>()).prop_map(|(k, seed)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = Tournament::from_upper(k, |_, _| rng.gen());
            let mut perm: Vec<usize> = (0..k).collect();
            perm.shuffle(&mut rng);
            (t, perm)
        })
    }

    proptest! {
        #[test]
        fn invariants_survive_relabeling((t, perm) in arb_tournament_and_perm()) {
            let r = t.relabel(&perm);
            prop_assert!(r.is_complete());
            prop_assert_eq!(double_score_set(&r), double_score_set(&t));
            prop_assert_eq!(canonical_form(&r).unwrap(), canonical_form(&t).unwrap());
        }

        #[test]
        fn degree_sum((t, _) in arb_tournament_and_perm()) {
            let k = t.order();
            prop_assert_eq!(t.out_degrees().iter().sum::<usize>(), k * (k - 1) / 2);
            prop_assert_eq!(t.to_bitstring().decode(), t);
        }
    }
}
