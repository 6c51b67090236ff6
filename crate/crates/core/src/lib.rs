//! Oriented colorings of hexagonal grids.
//!
//! The crate decides homomorphisms from oriented graphs into small
//! tournaments, enumerates tournaments up to isomorphism, builds hexagonal
//! grids and colors any of their orientations with six colors, and bundles
//! both halves into a single verification report.

pub mod digraph;
pub mod graph_file;
pub mod hexcolor;
pub mod hexgrid;
pub mod hom;
pub mod opl;
pub mod tournament;
pub mod verify;

pub use digraph::{OrientationCode, OrientedGraph, UndirectedGraph};
pub use hom::{HomResult, Homomorphism};
pub use tournament::{Tournament, TournamentBitstring};
pub use verify::{verify_paper, VerificationReport, VerifyConfig};
