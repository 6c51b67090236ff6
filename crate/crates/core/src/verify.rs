//! One-shot verification of both bounds, producing a [`VerificationReport`].

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::digraph::{enumerate_orientations, random_code, random_orientation, OrientedGraph};
use crate::hexcolor::{
    check_property1, color_hex, host_orientation, upper_bound_certificate, PathTable,
};
use crate::hexgrid::{
    build_hex_grid, sha256_hex, validate_axial_fixture, AxialFixture, H49_ARCS, H49_FIXTURE,
    H49_FIXTURE_SHA256, H49_VERTICES, H4_FIXTURE, H4_FIXTURE_SHA256,
};
use crate::hom::{homomorphism_exists_within, validate_homomorphism, HomResult};
use crate::tournament::{
    arc_codes, canonical_form, double_score_set, enumerate_tournaments, fixture_a6,
    named_five_tournaments, Tournament,
};

pub const REPORT_SCHEMA: &str = "orient6-report/1";

/// The H4 arc list as published with its OPL data file, 1-based.
pub const H4_ARCS: [(usize, usize); 21] = [
    (1, 2),
    (3, 2),
    (4, 3),
    (5, 4),
    (5, 6),
    (1, 6),
    (6, 7),
    (8, 7),
    (8, 9),
    (10, 9),
    (10, 1),
    (2, 11),
    (12, 11),
    (12, 13),
    (14, 13),
    (14, 3),
    (4, 15),
    (16, 15),
    (16, 17),
    (18, 17),
    (18, 5),
];

pub const T5_ARC_CODES: [usize; 10] = [1, 2, 3, 8, 9, 11, 14, 17, 19, 20];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Small,
    Full,
}

impl Scale {
    /// Grid size and number of sampled orientations.
    pub fn sampling(self) -> (usize, usize, usize) {
        match self {
            Scale::Small => (5, 5, 200),
            Scale::Full => (8, 8, 1000),
        }
    }
}

impl std::str::FromStr for Scale {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "small" => Ok(Scale::Small),
            "full" => Ok(Scale::Full),
            other => Err(format!("unknown scale {other:?} (expected small or full)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub scale: Scale,
    pub h4_text: String,
    pub h49_text: String,
    /// Time allowed for each homomorphism search.
    pub hom_budget: Duration,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            scale: Scale::Small,
            h4_text: H4_FIXTURE.to_string(),
            h49_text: H49_FIXTURE.to_string(),
            hom_budget: Duration::from_secs(60),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    /// Recorded for information; never affects the overall verdict.
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub mandatory: bool,
    pub inputs: String,
    pub verdict: Verdict,
    pub details: Value,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: String,
    pub version: String,
    pub seed: u64,
    pub scale: Scale,
    pub seeds_used: Vec<u64>,
    pub checks: Vec<CheckRecord>,
    pub conclusions: Vec<String>,
    pub overall: Verdict,
}

impl VerificationReport {
    /// PASS iff every mandatory check passed.
    pub fn overall_from(checks: &[CheckRecord]) -> Verdict {
        if checks
            .iter()
            .filter(|c| c.mandatory)
            .all(|c| c.verdict == Verdict::Pass)
        {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.overall == Verdict::Pass
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let verdict = match c.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Info => "info",
            };
            let _ = writeln!(
                out,
                "{verdict:4}  {:width$}  {:>9.1} ms  {}",
                c.name, c.wall_ms, c.inputs
            );
        }
        out.push('\n');
        for line in &self.conclusions {
            let _ = writeln!(out, "{line}");
        }
        let _ = writeln!(
            out,
            "overall: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        );
        out
    }
}

struct Recorder {
    checks: Vec<CheckRecord>,
}

impl Recorder {
    fn run(
        &mut self,
        name: &str,
        mandatory: bool,
        inputs: &str,
        f: impl FnOnce() -> (bool, Value),
    ) -> bool {
        let start = Instant::now();
        let (ok, details) = f();
        self.push(name, mandatory, inputs, ok, details, start.elapsed());
        ok
    }

    fn push(
        &mut self,
        name: &str,
        mandatory: bool,
        inputs: &str,
        ok: bool,
        details: Value,
        took: Duration,
    ) {
        let verdict = match (mandatory, ok) {
            (true, true) => Verdict::Pass,
            (true, false) => Verdict::Fail,
            (false, _) => Verdict::Info,
        };
        self.checks.push(CheckRecord {
            name: name.to_string(),
            mandatory,
            inputs: inputs.to_string(),
            verdict,
            details,
            wall_ms: took.as_secs_f64() * 1e3,
        });
    }
}

fn hom_details(g: &OrientedGraph, t: &Tournament, r: Option<&HomResult>) -> Value {
    match r {
        None => json!({ "outcome": "BUDGET_EXCEEDED" }),
        Some(HomResult::None { stats }) => {
            json!({ "outcome": "NONE", "nodes": stats.nodes, "max_depth": stats.max_depth })
        }
        Some(HomResult::Found { witness, stats }) => json!({
            "outcome": "FOUND",
            "nodes": stats.nodes,
            "max_depth": stats.max_depth,
            "witness": witness.colors(),
            "witness_valid": validate_homomorphism(g, t, witness).unwrap_or(false),
        }),
    }
}

fn fixture_check(
    f: &AxialFixture,
    text: &str,
    digest: &str,
    counts: (usize, usize),
) -> (bool, Value) {
    let actual = sha256_hex(text);
    let lattice = validate_axial_fixture(f);
    let und = f.graph.underlying();
    let embedding = f.embed_in_hex_grid();
    let counts_ok = (f.graph.n_vertices(), f.graph.n_arcs()) == counts;
    let ok = actual == digest
        && counts_ok
        && lattice.is_valid()
        && und.max_degree() <= 3
        && embedding.is_some();
    (
        ok,
        json!({
            "sha256": actual,
            "expected_sha256": digest,
            "vertices": f.graph.n_vertices(),
            "arcs": f.graph.n_arcs(),
            "expected_counts": [counts.0, counts.1],
            "lattice_violations": lattice.violations,
            "connected": und.is_connected(),
            "bipartite": und.is_bipartite(),
            "host_grid": embedding.as_ref().map(|e| [e.grid.m(), e.grid.n()]),
        }),
    )
}

/// Runs every check in order and assembles the report.
pub fn verify_paper(cfg: &VerifyConfig) -> VerificationReport {
    let mut rec = Recorder { checks: Vec::new() };
    let named = named_five_tournaments();
    let (grid_m, grid_n, samples) = cfg.scale.sampling();
    let seeds_used: Vec<u64> = (0..samples as u64)
        .map(|i| cfg.seed.wrapping_add(i))
        .collect();

    rec.run("tournament_census", true, "k=5", || {
        let classes = enumerate_tournaments(5).expect("k=5 within limit");
        let class_forms: BTreeSet<String> = classes.iter().map(|t| t.to_bitstring().to_string()).collect();
        let named_forms: Vec<String> = named
            .iter()
            .map(|(_, t)| canonical_form(t).expect("order 5").to_string())
            .collect();
        let distinct: BTreeSet<&String> = named_forms.iter().collect();
        let bijection = classes.len() == 12
            && distinct.len() == 12
            && named_forms.iter().all(|f| class_forms.contains(f));
        (
            bijection,
            json!({
                "classes": classes.len(),
                "canonical_forms": class_forms,
                "named_canonical": named.iter().map(|(n, _)| n.clone()).zip(named_forms.clone()).collect::<Vec<_>>(),
            }),
        )
    });

    rec.run("double_score_sets", true, "T1..T12", || {
        let ds: Vec<_> = named.iter().map(|(_, t)| double_score_set(t)).collect();
        let multisets: BTreeSet<_> = ds.iter().collect();
        let sets: BTreeSet<_> = ds.iter().map(|d| d.as_set()).collect();
        (
            multisets.len() == 12,
            json!({
                "multisets": named.iter().map(|(n, _)| n.clone()).zip(ds.iter().map(|d| d.0.clone())).collect::<Vec<_>>(),
                "pairwise_distinct_multisets": multisets.len() == 12,
                "pairwise_distinct_sets": sets.len() == 12,
            }),
        )
    });

    rec.run("t5_arc_codes", true, "5:0001100100", || {
        let codes = arc_codes(&named[4].1).expect("order 5");
        (
            codes == T5_ARC_CODES,
            json!({ "codes": codes, "expected": T5_ARC_CODES }),
        )
    });

    let a6 = fixture_a6();
    let mut table: Option<PathTable> = None;
    rec.run("a6_properties", true, "A6", || {
        let min_in = (0..6).map(|u| a6.in_degree(u)).min().unwrap_or(0);
        let min_out = (0..6).map(|u| a6.out_degree(u)).min().unwrap_or(0);
        let strict = check_property1(&a6, false);
        let full = check_property1(&a6, true);
        let ok =
            a6.is_complete() && min_in == 2 && min_out == 2 && full.holds() && full.cases() == 288;
        let details = json!({
            "complete": a6.is_complete(),
            "min_in_degree": min_in,
            "min_out_degree": min_out,
            "property1_distinct_endpoints": { "holds": strict.holds(), "cases": strict.cases() },
            "property1_with_equal_endpoints": { "holds": full.holds(), "cases": full.cases() },
        });
        if full.holds() {
            table = Some(full.table);
        }
        (ok, details)
    });

    let h4 = AxialFixture::parse("H4", &cfg.h4_text);
    let h49 = AxialFixture::parse("H49", &cfg.h49_text);

    match &h4 {
        Ok(f) => {
            rec.run("fixture_h4", true, "h4.graph", || {
                let (ok, mut details) = fixture_check(f, &cfg.h4_text, H4_FIXTURE_SHA256, (18, 21));
                let listed: Vec<(usize, usize)> =
                    H4_ARCS.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
                let same = f.graph.arcs() == listed.as_slice();
                details["matches_published_arc_list"] = json!(same);
                (ok && same, details)
            });
        }
        Err(e) => rec.push(
            "fixture_h4",
            true,
            "h4.graph",
            false,
            json!({ "error": e.to_string() }),
            Duration::ZERO,
        ),
    }
    match &h49 {
        Ok(f) => {
            rec.run("fixture_h49", true, "h49.graph", || {
                fixture_check(
                    f,
                    &cfg.h49_text,
                    H49_FIXTURE_SHA256,
                    (H49_VERTICES, H49_ARCS),
                )
            });
        }
        Err(e) => rec.push(
            "fixture_h49",
            true,
            "h49.graph",
            false,
            json!({ "error": e.to_string() }),
            Duration::ZERO,
        ),
    }

    // all 24 searches, run concurrently and recorded in a fixed order
    let lower_ok = match (&h4, &h49) {
        (Ok(h4), Ok(h49)) => {
            let jobs: Vec<(usize, bool)> = (0..12).flat_map(|i| [(i, false), (i, true)]).collect();
            let results: Vec<(Option<HomResult>, Duration)> = jobs
                .par_iter()
                .map(|&(i, big)| {
                    let g = if big { &h49.graph } else { &h4.graph };
                    let start = Instant::now();
                    let r = homomorphism_exists_within(g, &named[i].1, cfg.hom_budget);
                    (r, start.elapsed())
                })
                .collect();
            let lookup = |i: usize, big: bool| &results[2 * i + big as usize];

            let (r, took) = lookup(4, false);
            let h4_t5_none = matches!(r, Some(HomResult::None { .. }));
            rec.push(
                "hom_h4_t5",
                true,
                "H4 -> T5",
                h4_t5_none,
                hom_details(&h4.graph, &named[4].1, r.as_ref()),
                *took,
            );

            let mut h49_others_none = true;
            for i in (0..12).filter(|&i| i != 4) {
                let (r, took) = lookup(i, true);
                let none = matches!(r, Some(HomResult::None { .. }));
                h49_others_none &= none;
                let name = format!("hom_h49_t{}", i + 1);
                let inputs = format!("H49 -> {}", named[i].0);
                rec.push(
                    &name,
                    true,
                    &inputs,
                    none,
                    hom_details(&h49.graph, &named[i].1, r.as_ref()),
                    *took,
                );
            }

            let (r, took) = lookup(4, true);
            rec.push(
                "hom_h49_t5",
                false,
                "H49 -> T5",
                true,
                hom_details(&h49.graph, &named[4].1, r.as_ref()),
                *took,
            );

            let start = Instant::now();
            let others: Vec<Value> = (0..12)
                .filter(|&i| i != 4)
                .map(|i| {
                    let mut d = hom_details(&h4.graph, &named[i].1, lookup(i, false).0.as_ref());
                    d["target"] = json!(named[i].0);
                    d
                })
                .collect();
            rec.push(
                "hom_h4_other_tournaments",
                false,
                "H4 -> T_i, i != 5",
                true,
                json!(others),
                start.elapsed(),
            );

            rec.run("lower_bound", true, "H4, H49 vs T1..T12", || {
                let blockers: Vec<Value> = (0..12)
                    .map(|i| {
                        let h4_none = matches!(lookup(i, false).0, Some(HomResult::None { .. }));
                        let h49_none = matches!(lookup(i, true).0, Some(HomResult::None { .. }));
                        json!({ "target": named[i].0, "h4_none": h4_none, "h49_none": h49_none })
                    })
                    .collect();
                let each_blocked = (0..12).all(|i| {
                    matches!(lookup(i, false).0, Some(HomResult::None { .. }))
                        || matches!(lookup(i, true).0, Some(HomResult::None { .. }))
                });
                (
                    each_blocked && h4_t5_none && h49_others_none,
                    json!({
                        "per_tournament": blockers,
                        "combined_placement": "not constructed; each fixture is certified as a hexagonal-lattice patch",
                    }),
                )
            })
        }
        _ => {
            rec.push(
                "lower_bound",
                true,
                "H4, H49 vs T1..T12",
                false,
                json!({ "error": "fixture unavailable" }),
                Duration::ZERO,
            );
            false
        }
    };

    let upper_ok = match &table {
        Some(table) => {
            let mut all = true;
            for (m, n) in [(1usize, 1usize), (1, 2)] {
                let name = format!("upper_bound_exhaustive_h{m}_{n}");
                all &= rec.run(
                    &name,
                    true,
                    &format!("all orientations of H({m},{n})"),
                    || {
                        let grid = build_hex_grid(m, n).expect("positive");
                        let mut count = 0usize;
                        let mut bad = 0usize;
                        for o in enumerate_orientations(grid.graph()).expect("few edges") {
                            count += 1;
                            let ok = color_hex(&grid, &o, &a6, table)
                                .map(|c| validate_homomorphism(&o, &a6, &c).unwrap_or(false))
                                .unwrap_or(false);
                            bad += !ok as usize;
                        }
                        (bad == 0, json!({ "orientations": count, "failures": bad }))
                    },
                );
            }
            let inputs = format!("{samples} seeded orientations of H({grid_m},{grid_n})");
            all &= rec.run("upper_bound_sampled", true, &inputs, || {
                let grid = build_hex_grid(grid_m, grid_n).expect("positive");
                let failures: Vec<u64> = seeds_used
                    .par_iter()
                    .filter(|&&s| {
                        let o = random_orientation(grid.graph(), s);
                        !color_hex(&grid, &o, &a6, table)
                            .map(|c| validate_homomorphism(&o, &a6, &c).unwrap_or(false))
                            .unwrap_or(false)
                    })
                    .copied()
                    .collect();
                (
                    failures.is_empty(),
                    json!({ "samples": samples, "grid": [grid_m, grid_n], "failing_seeds": failures }),
                )
            });
            if let Ok(h4) = &h4 {
                all &= rec.run("upper_bound_h4_certificate", true, "H4 inside a seeded host grid", || {
                    let Some(emb) = h4.embed_in_hex_grid() else {
                        return (false, json!({ "error": "no lattice embedding" }));
                    };
                    let fill = random_code(emb.grid.graph().n_edges(), cfg.seed);
                    let host = host_orientation(&emb, &h4.graph, &fill);
                    match upper_bound_certificate(&h4.graph, &emb, &host, &a6, table) {
                        Ok(phi) => {
                            let ok = validate_homomorphism(&h4.graph, &a6, &phi).unwrap_or(false);
                            (ok, json!({ "host_grid": [emb.grid.m(), emb.grid.n()], "coloring": phi.colors() }))
                        }
                        Err(e) => (false, json!({ "error": e.to_string() })),
                    }
                });
            }
            all
        }
        None => {
            rec.push(
                "upper_bound_sampled",
                true,
                "A6 path table",
                false,
                json!({ "error": "path table unavailable" }),
                Duration::ZERO,
            );
            false
        }
    };

    let mut conclusions = Vec::new();
    if lower_ok {
        conclusions.push(
            "lower_bound: no 5-tournament admits homomorphisms from both H4 and H49; hence chi_o(hexagonal grid) >= 6"
                .to_string(),
        );
    } else {
        conclusions.push("lower_bound: NOT established".to_string());
    }
    if upper_ok {
        conclusions.push(format!(
            "upper_bound: all sampled orientations 6-colorable ({samples} of H({grid_m},{grid_n}) plus every orientation of H(1,1) and H(1,2))"
        ));
    } else {
        conclusions.push("upper_bound: NOT established".to_string());
    }
    conclusions.push(
        "placement: a single hexagonal grid holding both H4 and H49 was not constructed"
            .to_string(),
    );

    let overall = VerificationReport::overall_from(&rec.checks);
    VerificationReport {
        schema: REPORT_SCHEMA.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: cfg.seed,
        scale: cfg.scale,
        seeds_used,
        checks: rec.checks,
        conclusions,
        overall,
    }
}
