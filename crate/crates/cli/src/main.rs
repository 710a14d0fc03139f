//! `cstar`: invariants of C*-actions on rational homogeneous varieties, toric varieties and
//! realizations of bispecial transformations.

mod dot;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cstar_core::lattice::{LatticePolytope, RationalVector};
use cstar_core::realization::{self, BispecialType};
use cstar_core::rhaction::{self, CatalogEntry, Cocharacter, HomogeneousModel};
use cstar_core::rootsys::Family;
use cstar_core::toricaction::{self, PolarizedToric};
use serde::Deserialize;
use serde_json::{json, Value};

use report::Report;

#[derive(Parser, Debug)]
#[command(
    name = "cstar",
    version,
    about = "Invariants of C*-actions on polarized varieties"
)]
struct Cli {
    /// Print the JSON report (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Print a short human-readable summary instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Action of a cocharacter on a rational homogeneous variety.
    Rh(RhArgs),
    /// Subtorus action on a polarized toric variety.
    Toric(ToricArgs),
    /// Cones and contractions of the realization of a bispecial transformation.
    Realize(RealizeArgs),
}

#[derive(Args, Debug)]
struct RhArgs {
    /// Catalogue name (C3(3), A5(3), D6(6), E7(7), P1xQ[k]) or a root system such as A5, E7.
    target: String,
    /// Fundamental weight index (Bourbaki numbering) when TARGET is a root system.
    index: Option<usize>,
    /// Cocharacter coordinates, comma separated; rationals as p/q.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Include the orbit graph.
    #[arg(long)]
    graph: bool,
    /// Write the orbit graph in DOT format.
    #[arg(long, value_name = "FILE")]
    dot: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ToricArgs {
    /// Preset (cube, projbundle13[n], projbundle122[n]) or a JSON file {"vertices": [[...], ...]}.
    target: String,
    /// Cocharacter coordinates, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// Report the GIT chambers and their slices.
    #[arg(long)]
    chambers: bool,
    /// Compare the two extremal geometric quotients.
    #[arg(long)]
    summary: bool,
    /// Include the orbit graph.
    #[arg(long)]
    graph: bool,
    /// Write the orbit graph in DOT format.
    #[arg(long, value_name = "FILE")]
    dot: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RealizeArgs {
    m_minus: u32,
    m_plus: u32,
    /// Codimension of the fundamental locus in Y₋.
    #[arg(default_value_t = 2)]
    r_minus: u32,
    /// Codimension of the fundamental locus in Y₊.
    #[arg(default_value_t = 2)]
    r_plus: u32,
    /// Nef, Mori and movable cones, checked against their closed forms.
    #[arg(long)]
    cones: bool,
    /// Check the chamber decomposition of Mov(X) on N random points.
    #[arg(long, value_name = "N")]
    chambers: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Contraction analysis.
    #[arg(long)]
    contract: bool,
}

/// Failure modes mapped to exit codes 2 (usage or input format) and 3 (domain).
#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(cstar_core::Error),
}

impl From<cstar_core::Error> for Failure {
    fn from(e: cstar_core::Error) -> Self {
        match e {
            e @ (cstar_core::Error::Parse(_) | cstar_core::Error::UnknownName { .. }) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Domain(other),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Rh(a) => cmd_rh(a),
        Command::Toric(a) => cmd_toric(a),
        Command::Realize(a) => cmd_realize(a),
    };
    match result {
        Ok(report) => {
            if cli.text {
                print!("{}", report.text);
            } else {
                println!("{}", report.to_json());
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn parse_lambda(text: &str) -> Result<RationalVector, Failure> {
    RationalVector::parse(text).map_err(|e| Failure::Usage(e.to_string()))
}

/// `A5` → (A, 5), `E7` → (E7, 7).
fn parse_root_system(text: &str) -> Option<(Family, usize)> {
    match text {
        "E6" => return Some((Family::E6, 6)),
        "E7" => return Some((Family::E7, 7)),
        _ => {}
    }
    let (head, rank) = text.split_at(1);
    let family: Family = head.parse().ok()?;
    Some((family, rank.parse().ok()?))
}

/// Type A weights live in `R^{n+1}` and cocharacters matter only up to `(1, …, 1)`, so a
/// cocharacter with `n` coordinates is read with last coordinate 0.
fn pad_type_a(model: &HomogeneousModel, lambda: RationalVector) -> RationalVector {
    let rs = model.root_system();
    if rs.family() == Family::A && lambda.dim() + 1 == rs.ambient_dim() {
        lambda.extended(cstar_core::lattice::int(0))
    } else {
        lambda
    }
}

fn write_dot(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn cmd_rh(a: &RhArgs) -> Result<Report, Failure> {
    let lambda = a.lambda.as_deref().map(parse_lambda).transpose()?;
    let entry = if let Some((family, rank)) = parse_root_system(&a.target) {
        let index = a
            .index
            .ok_or_else(|| Failure::Usage(format!("{} needs a fundamental weight index", a.target)))?;
        let lambda = lambda.ok_or_else(|| Failure::Usage("--lambda is required for a root system".into()))?;
        let model = HomogeneousModel::fundamental(family, rank, index)?;
        let lambda = Cocharacter(pad_type_a(&model, lambda));
        CatalogEntry::Single { model, lambda }
    } else {
        if a.index.is_some() {
            return Err(Failure::Usage(format!("{} takes no weight index", a.target)));
        }
        match (rhaction::catalog(&a.target)?, lambda) {
            (CatalogEntry::Single { model, .. }, Some(l)) => {
                let lambda = Cocharacter(pad_type_a(&model, l));
                CatalogEntry::Single { model, lambda }
            }
            (CatalogEntry::Product { .. }, Some(_)) => {
                return Err(Failure::Usage("--lambda cannot override a product preset".into()))
            }
            (entry, None) => entry,
        }
    };
    let analysis = entry.analyze()?;
    let graph = if a.graph || a.dot.is_some() {
        Some(entry.orbit_graph()?)
    } else {
        None
    };
    if let (Some(path), Some(g)) = (&a.dot, &graph) {
        write_dot(path, &dot::render(entry.name(), g))?;
    }
    let lambda_echo: Value = match &entry {
        CatalogEntry::Single { lambda, .. } => serde_json::to_value(lambda).expect("serializable"),
        CatalogEntry::Product { factors, .. } => json!(factors
            .iter()
            .map(|(_, l)| serde_json::to_value(l).expect("serializable"))
            .collect::<Vec<_>>()),
    };
    let inputs = json!({
        "target": a.target,
        "index": a.index,
        "lambda": lambda_echo,
    });
    let mut payload = json!({ "name": entry.name(), "report": analysis });
    let mut text = report::action_text(entry.name(), &analysis);
    if let (true, Some(g)) = (a.graph, &graph) {
        payload["orbit_graph"] = serde_json::to_value(g).expect("serializable");
        text.push_str(&report::graph_text(g));
    }
    Ok(Report::new("rh", inputs, payload, text))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolytopeFile {
    vertices: Vec<Vec<i64>>,
}

fn load_toric(target: &str) -> Result<PolarizedToric, Failure> {
    let path = Path::new(target);
    if !(target.ends_with(".json") || path.is_file()) {
        return Ok(toricaction::preset(target)?);
    }
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {target}: {e}")))?;
    let file: PolytopeFile =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("malformed polytope file: {e}")))?;
    let polytope = LatticePolytope::from_int_vertices(&file.vertices)?;
    let name = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or(target)
        .to_string();
    Ok(PolarizedToric::new(polytope, name)?)
}

fn cmd_toric(a: &ToricArgs) -> Result<Report, Failure> {
    let t = load_toric(&a.target)?;
    let lambda = parse_lambda(&a.lambda)?;
    let analysis = toricaction::toric_analyze(&t, &lambda)?;
    let inputs = json!({ "target": a.target, "lambda": lambda });
    let mut payload = json!({ "name": t.name(), "polytope": t.polytope(), "report": analysis });
    let mut text = report::action_text(t.name(), &analysis);
    if a.graph || a.dot.is_some() {
        let g = toricaction::toric_orbit_graph(&t, &lambda)?;
        if let Some(path) = &a.dot {
            write_dot(path, &dot::render(t.name(), &g))?;
        }
        if a.graph {
            payload["orbit_graph"] = serde_json::to_value(&g).expect("serializable");
            text.push_str(&report::graph_text(&g));
        }
    }
    if a.chambers {
        let ch = toricaction::git_chambers(&t, &lambda)?;
        text.push_str(&report::chamber_text(&ch));
        payload["chambers"] = serde_json::to_value(&ch).expect("serializable");
    }
    if a.summary {
        let s = toricaction::birational_summary(&t, &lambda)?;
        text.push_str(&report::summary_text(&s));
        payload["birational_summary"] = serde_json::to_value(&s).expect("serializable");
    }
    Ok(Report::new("toric", inputs, payload, text))
}

fn cmd_realize(a: &RealizeArgs) -> Result<Report, Failure> {
    let t = BispecialType::new(a.m_minus, a.m_plus, a.r_minus, a.r_plus)?;
    let inputs = json!({
        "m_minus": a.m_minus,
        "m_plus": a.m_plus,
        "r_minus": a.r_minus,
        "r_plus": a.r_plus,
        "cones": a.cones,
        "chambers": a.chambers,
        "seed": a.seed,
        "contract": a.contract,
    });
    let tables = realization::build_tables(&t);
    let mut payload = json!({
        "type": t,
        "tables": tables,
    });
    let mut text = report::tables_text(&t, &tables);
    if a.cones {
        let cones = realization::cones(&t)?;
        let check = realization::table_check(&t)?;
        text.push_str(&report::cones_text(&cones, &check));
        payload["cones"] = serde_json::to_value(&cones).expect("serializable");
        payload["table_check"] = serde_json::to_value(&check).expect("serializable");
    }
    if let Some(n) = a.chambers {
        let c = realization::chamber_check(&t, n, a.seed)?;
        text.push_str(&report::chamber_check_text(&c));
        payload["chamber_check"] = serde_json::to_value(&c).expect("serializable");
    }
    if a.contract {
        let v = realization::contraction_analysis(&t)?;
        text.push_str(&report::contraction_text(&v));
        payload["contraction"] = serde_json::to_value(&v).expect("serializable");
    }
    Ok(Report::new("realize", inputs, payload, text))
}
