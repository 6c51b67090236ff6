//! OPL model and data files for checking a homomorphism into a
//! 5-tournament with an external ILP solver.

use std::fmt::Write as _;

use crate::digraph::OrientedGraph;
use crate::tournament::{arc_codes, Tournament, TournamentError};

/// Arcs per line of the `arc = [...]` section.
const ARCS_PER_LINE: usize = 11;

const MODEL: &str = "  int N = ...;
  int M = ...;
  range I = 1..10;
  range Vertices = 1..N;
  range Arcs = 1..M;

  int T[i in I] = ...;
  int arc[Arcs][1..2] = ...;

  dvar int phi[j in Vertices];
  dvar boolean z[i in I,a in Arcs];

  minimize 1;

  subject to {
    // the coloring is correct
    forall (a in Arcs)
        phi[arc[a][1]] + 5*phi[arc[a][2]] == sum(i in I) z[i,a]*T[i];

    // colors go from 0 to 4
    forall (j in Vertices) (phi[j] >= 0);
    forall (j in Vertices) (phi[j] <= 4);

    // just one z equals 1 for each arc
    forall (a in Arcs) sum(i in I) z[i,a] == 1;
  }
";

pub fn export_opl_model() -> String {
    MODEL.to_string()
}

/// Data file with `N`, `M`, the arc codes of `t`, and the arcs of `g`
/// (1-based, in stored order).
pub fn export_opl_data(g: &OrientedGraph, t: &Tournament) -> Result<String, TournamentError> {
    let codes = arc_codes(t)?;
    let mut out = String::new();
    let _ = writeln!(out, "  N = {};", g.n_vertices());
    let _ = writeln!(out, "  M = {};", g.n_arcs());
    let codes: Vec<String> = codes.iter().map(|c| c.to_string()).collect();
    let _ = writeln!(out, "  T = [{}];", codes.join(" "));
    let arcs: Vec<String> = g
        .arcs()
        .iter()
        .map(|&(u, v)| format!("[{} {}]", u + 1, v + 1))
        .collect();
    let lines: Vec<String> = arcs.chunks(ARCS_PER_LINE).map(|c| c.join(" ")).collect();
    out.push_str("  arc = [");
    out.push_str(&lines.join("\n    "));
    out.push_str("];\n");
    Ok(out)
}
