//! Every orientation of a hexagonal grid maps into A6 via the row-by-row coloring.

use proptest::prelude::*;

use orient6_core::digraph::{enumerate_orientations_with_limit, random_orientation};
use orient6_core::hexcolor::{check_property1, color_hex, PathTable};
use orient6_core::hexgrid::build_hex_grid;
use orient6_core::hom::validate_homomorphism;
use orient6_core::tournament::fixture_a6;
use orient6_core::Tournament;

fn setup() -> (Tournament, PathTable) {
    let a6 = fixture_a6();
    let check = check_property1(&a6, true);
    assert!(check.holds());
    (a6, check.table)
}

fn all_orientations_color(m: usize, n: usize) -> usize {
    let (a6, table) = setup();
    let grid = build_hex_grid(m, n).unwrap();
    let mut count = 0;
    for g in enumerate_orientations_with_limit(grid.graph(), 16).unwrap() {
        let c = color_hex(&grid, &g, &a6, &table).unwrap();
        assert!(validate_homomorphism(&g, &a6, &c).unwrap());
        count += 1;
    }
    count
}

#[test]
fn every_orientation_of_one_hexagon() {
    assert_eq!(all_orientations_color(1, 1), 64);
}

#[test]
fn every_orientation_of_two_hexagons() {
    assert_eq!(all_orientations_color(1, 2), 1 << 11);
}

#[test]
fn every_orientation_of_a_stacked_pair() {
    assert_eq!(all_orientations_color(2, 1), 1 << 11);
}

#[test]
fn a6_shape() {
    let a6 = fixture_a6();
    assert!(a6.is_complete());
    assert_eq!(a6.order(), 6);
    assert_eq!((0..6).map(|v| a6.out_degree(v)).min(), Some(2));
    assert_eq!((0..6).map(|v| a6.in_degree(v)).min(), Some(2));
    assert_eq!(check_property1(&a6, true).cases(), 288);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_orientations_color(m in 1usize..=8, n in 1usize..=8, seed in any::<u64>()) {
        let (a6, table) = setup();
        let grid = build_hex_grid(m, n).unwrap();
        let g = random_orientation(grid.graph(), seed);
        let c = color_hex(&grid, &g, &a6, &table).unwrap();
        prop_assert!(validate_homomorphism(&g, &a6, &c).unwrap());
        prop_assert!(c.colors().iter().all(|&x| x < 6));
    }
}
