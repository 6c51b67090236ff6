use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use orient6_core::digraph::random_orientation;
use orient6_core::graph_file::{parse_digraph, serialize_with_coords};
use orient6_core::hexcolor::{check_property1, color_hex};
use orient6_core::hexgrid::build_hex_grid;
use orient6_core::hom::{chi_o, homomorphism_exists, validate_homomorphism, ChiO, HomResult};
use orient6_core::opl::{export_opl_data, export_opl_model};
use orient6_core::tournament::{
    canonical_form, double_score_set, enumerate_tournaments_with_limit, fixture_a6,
    identify_five_tournament, DEFAULT_ENUMERATION_LIMIT,
};
use orient6_core::verify::{verify_paper, Scale, VerifyConfig};
use orient6_core::{OrientedGraph, Tournament};

/// Exit status for a negative outcome (verification failed, no homomorphism, ...).
const EXIT_NEGATIVE: u8 = 1;
/// Exit status for usage and input errors.
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "orient6",
    version,
    about = "Oriented colorings of hexagonal grids"
)]
struct Cli {
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hexagonal grid utilities.
    Hex {
        #[command(subcommand)]
        action: HexAction,
    },
    /// Tournament utilities.
    Tourn {
        #[command(subcommand)]
        action: TournAction,
    },
    /// Homomorphism search.
    Hom {
        #[command(subcommand)]
        action: HomAction,
    },
    /// Check the length-3 path property of a tournament.
    Prop1 {
        #[arg(short, long, default_value = "A6")]
        tournament: String,
        /// Also require walks whose two endpoints coincide.
        #[arg(long)]
        include_equal: bool,
    },
    /// Color an orientation of H(m,n) into A6.
    Color {
        #[arg(short)]
        m: usize,
        #[arg(short)]
        n: usize,
        /// Orientation of H(m,n) in grid numbering; a seeded random one if omitted.
        #[arg(short, long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Oriented chromatic number of a small digraph.
    ChiO {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
        k_max: usize,
    },
    /// Write an OPL data file (or the model file with --model).
    ExportOpl {
        #[arg(short, long, required_unless_present = "model")]
        graph: Option<PathBuf>,
        #[arg(short, long, required_unless_present = "model")]
        tournament: Option<String>,
        #[arg(long)]
        model: bool,
    },
    /// Run every check for both bounds and print the report.
    VerifyPaper {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "small")]
        scale: Scale,
        /// Write the JSON report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Use this H4 fixture file instead of the built-in one.
        #[arg(long)]
        h4: Option<PathBuf>,
        /// Use this H49 fixture file instead of the built-in one.
        #[arg(long)]
        h49: Option<PathBuf>,
        /// Seconds allowed per homomorphism search.
        #[arg(long, default_value_t = 60)]
        budget_secs: u64,
    },
}

#[derive(Subcommand)]
enum HexAction {
    /// Print a seeded random orientation of H(m,n) with lattice coordinates.
    Gen {
        #[arg(short)]
        m: usize,
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum TournAction {
    /// One canonical bitstring per isomorphism class.
    List {
        #[arg(short, default_value_t = 5)]
        k: usize,
    },
    /// Double score set.
    Ds { tournament: String },
    /// Canonical bitstring.
    Canon { tournament: String },
}

#[derive(Subcommand)]
enum HomAction {
    /// Exit 0 if a homomorphism exists, 1 if not.
    Check {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        tournament: String,
    },
}

fn read_graph(path: &Path) -> Result<OrientedGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_digraph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn tournament(spec: &str) -> Result<Tournament> {
    spec.parse()
        .with_context(|| format!("resolving tournament {spec:?}"))
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json"));
}

fn run(cli: Cli) -> Result<u8> {
    let json = cli.json;
    match cli.command {
        Command::Hex {
            action: HexAction::Gen { m, n, seed },
        } => {
            let grid = build_hex_grid(m, n)?;
            let g = random_orientation(grid.graph(), seed);
            print!(
                "# random orientation of H({m},{n}), seed {seed}\n{}",
                serialize_with_coords(&g, &grid.lattice_coords())
            );
            Ok(0)
        }
        Command::Tourn { action } => match action {
            TournAction::List { k } => {
                let list = enumerate_tournaments_with_limit(k, 6)?;
                if json {
                    let items: Vec<_> = list
                        .iter()
                        .map(|t| json!({ "bits": t.to_bitstring().to_string(), "name": identify_five_tournament(t) }))
                        .collect();
                    print_json(&json!({ "k": k, "classes": items }));
                } else {
                    for t in &list {
                        println!("{}", t.to_bitstring());
                    }
                }
                Ok(0)
            }
            TournAction::Ds { tournament: spec } => {
                let ds = double_score_set(&tournament(&spec)?);
                if json {
                    print_json(&json!({ "multiset": ds.0, "set": ds.as_set() }));
                } else {
                    println!("{ds}");
                }
                Ok(0)
            }
            TournAction::Canon { tournament: spec } => {
                let canon = canonical_form(&tournament(&spec)?)?;
                if json {
                    print_json(&json!({ "canonical": canon.to_spec() }));
                } else {
                    println!("{}", canon.to_spec());
                }
                Ok(0)
            }
        },
        Command::Hom {
            action:
                HomAction::Check {
                    graph,
                    tournament: spec,
                },
        } => {
            let g = read_graph(&graph)?;
            let t = tournament(&spec)?;
            let r = homomorphism_exists(&g, &t);
            let stats = r.stats();
            match &r {
                HomResult::Found { witness, .. } => {
                    let valid = validate_homomorphism(&g, &t, witness)?;
                    if json {
                        print_json(
                            &json!({ "outcome": "FOUND", "witness": witness.colors(), "valid": valid, "nodes": stats.nodes }),
                        );
                    } else {
                        println!(
                            "FOUND {:?} (valid: {valid}, {} nodes)",
                            witness.colors(),
                            stats.nodes
                        );
                    }
                    Ok(0)
                }
                HomResult::None { .. } => {
                    if json {
                        print_json(
                            &json!({ "outcome": "NONE", "nodes": stats.nodes, "max_depth": stats.max_depth }),
                        );
                    } else {
                        println!("NONE ({} nodes, depth {})", stats.nodes, stats.max_depth);
                    }
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Prop1 {
            tournament: spec,
            include_equal,
        } => {
            let t = tournament(&spec)?;
            let check = check_property1(&t, include_equal);
            if json {
                let missing: Vec<_> = check
                    .missing
                    .iter()
                    .map(|(u, v, p)| json!({ "u": u, "v": v, "pattern": p.to_string() }))
                    .collect();
                print_json(
                    &json!({ "holds": check.holds(), "cases": check.cases(), "missing": missing }),
                );
            } else {
                println!(
                    "holds: {} ({} cases, {} missing)",
                    check.holds(),
                    check.cases(),
                    check.missing.len()
                );
                for (u, v, p) in &check.missing {
                    println!("missing {u} -> {v} pattern {p}");
                }
            }
            Ok(if check.holds() { 0 } else { EXIT_NEGATIVE })
        }
        Command::Color { m, n, graph, seed } => {
            let grid = build_hex_grid(m, n)?;
            let g = match graph {
                Some(path) => read_graph(&path)?,
                None => random_orientation(grid.graph(), seed),
            };
            let a6 = fixture_a6();
            let table = check_property1(&a6, true).table;
            let coloring = color_hex(&grid, &g, &a6, &table)?;
            let valid = validate_homomorphism(&g, &a6, &coloring)?;
            if json {
                print_json(&json!({ "colors": coloring.colors(), "valid": valid }));
            } else {
                for (v, c) in grid.vertices().iter().zip(coloring.colors()) {
                    println!("{v} {c}");
                }
                println!("valid: {valid}");
            }
            Ok(if valid { 0 } else { EXIT_NEGATIVE })
        }
        Command::ChiO { graph, k_max } => {
            let g = read_graph(&graph)?;
            let value = chi_o(&g, k_max)?;
            match (json, value) {
                (true, ChiO::Exact(k)) => print_json(&json!({ "chi_o": k })),
                (true, ChiO::Above(k)) => print_json(&json!({ "chi_o": null, "above": k })),
                (false, ChiO::Exact(k)) => println!("{k}"),
                (false, ChiO::Above(k)) => println!("> {k}"),
            }
            Ok(0)
        }
        Command::ExportOpl {
            graph,
            tournament: spec,
            model,
        } => {
            if model {
                print!("{}", export_opl_model());
                return Ok(0);
            }
            let (Some(graph), Some(spec)) = (graph, spec) else {
                bail!("export-opl needs --graph and --tournament, or --model");
            };
            let g = read_graph(&graph)?;
            print!("{}", export_opl_data(&g, &tournament(&spec)?)?);
            Ok(0)
        }
        Command::VerifyPaper {
            seed,
            scale,
            out,
            h4,
            h49,
            budget_secs,
        } => {
            let mut cfg = VerifyConfig {
                seed,
                scale,
                hom_budget: Duration::from_secs(budget_secs),
                ..VerifyConfig::default()
            };
            if let Some(path) = h4 {
                cfg.h4_text = fs::read_to_string(&path)
                    .with_context(|| format!("reading {}", path.display()))?;
            }
            if let Some(path) = h49 {
                cfg.h49_text = fs::read_to_string(&path)
                    .with_context(|| format!("reading {}", path.display()))?;
            }
            let report = verify_paper(&cfg);
            if let Some(path) = &out {
                fs::write(path, report.to_json())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if json && out.is_none() {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render_table());
            }
            if !report.passed() {
                for c in report
                    .checks
                    .iter()
                    .filter(|c| c.mandatory && c.verdict != orient6_core::verify::Verdict::Pass)
                {
                    eprintln!("failed: {} {}", c.name, c.details);
                }
            }
            Ok(if report.passed() { 0 } else { EXIT_NEGATIVE })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
