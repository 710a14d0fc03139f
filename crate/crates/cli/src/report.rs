use std::collections::BTreeMap;
use std::fmt::Write;

use cstar_core::action::{ActionReport, OrbitGraph};
use cstar_core::realization::{
    BispecialType, ChamberCheck, ConeBundle, ContractionVerdict, CurveClassTable, TableCheck, Variety,
};
use cstar_core::toricaction::{BirationalSummary, ChamberReport};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub payload: Value,
    pub text: String,
}

impl Report {
    pub fn new(command: &'static str, inputs: Value, payload: Value, text: String) -> Self {
        Self {
            command,
            inputs,
            payload,
            text,
        }
    }

    /// Pretty JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let envelope = json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "payload": self.payload,
        });
        serde_json::to_string_pretty(&envelope).expect("values serialize")
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn action_text(name: &str, r: &ActionReport) -> String {
    let mut s = String::new();
    writeln!(s, "{name}: dim {}", r.variety_dim).unwrap();
    writeln!(
        s,
        "bandwidth {}  criticality {}  equalized {}  isolated extremes {}",
        r.bandwidth, r.criticality, r.equalized, r.isolated_extremes
    )
    .unwrap();
    writeln!(s, "fixed points per level ({})", join(r.weights_per_level())).unwrap();
    for c in &r.components {
        writeln!(
            s,
            "  level {}: {} points, dim {}, nu+ {}, nu- {}",
            c.level,
            c.weights.len(),
            c.dim,
            c.nu_plus,
            c.nu_minus
        )
        .unwrap();
    }
    for f in &r.flags {
        writeln!(s, "flag: {f}").unwrap();
    }
    s
}

pub fn graph_text(g: &OrbitGraph) -> String {
    let mut s = format!(
        "orbit graph: {} components, {} curves\n",
        g.nodes.len(),
        g.curves.len()
    );
    for e in &g.edges {
        let (a, b) = (&g.nodes[e.source], &g.nodes[e.target]);
        writeln!(
            s,
            "  {} (level {}) -> {} (level {}): degree {} x{}",
            a.id, a.level, b.id, b.level, e.degree, e.multiplicity
        )
        .unwrap();
    }
    s
}

pub fn chamber_text(ch: &ChamberReport) -> String {
    let mut s = format!("slice vertex counts [{}]\n", join(ch.vertex_counts()));
    for c in &ch.chambers {
        writeln!(
            s,
            "  ({}, {}): {} vertices, {} rays",
            c.lower, c.upper, c.vertex_count, c.ray_count
        )
        .unwrap();
    }
    s
}

pub fn summary_text(b: &BirationalSummary) -> String {
    format!(
        "extremal quotients: {} and {} vertices, isomorphic {}\n",
        b.sink_slice.vertex_count(),
        b.source_slice.vertex_count(),
        b.combinatorially_isomorphic
    )
}

pub fn tables_text(t: &BispecialType, tables: &BTreeMap<Variety, CurveClassTable>) -> String {
    let mut s = format!(
        "type ({},{}) r ({},{})  mu- {}  mu+ {}\n",
        t.m_minus,
        t.m_plus,
        t.r_minus,
        t.r_plus,
        t.mu_minus(),
        t.mu_plus()
    );
    for (v, table) in tables {
        let rows: Vec<String> = table.rows.iter().map(|(c, r)| format!("{c}{r}")).collect();
        writeln!(s, "  {v}: {}", rows.join(" ")).unwrap();
    }
    s
}

fn gens(c: &cstar_core::lattice::RationalCone) -> String {
    c.generators()
        .iter()
        .map(|g| g.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn cones_text(cones: &BTreeMap<Variety, ConeBundle>, check: &TableCheck) -> String {
    let mut s = String::new();
    for (v, b) in cones {
        writeln!(
            s,
            "  Nef({v}) = <{}>  NE({v}) = <{}>",
            gens(&b.nef),
            gens(&b.mori)
        )
        .unwrap();
        if let Some(m) = &b.mov {
            writeln!(s, "  Mov({v}) = <{}>", gens(m)).unwrap();
        }
    }
    writeln!(s, "closed forms match: {}", check.all_match).unwrap();
    s
}

pub fn chamber_check_text(c: &ChamberCheck) -> String {
    let mut s = format!(
        "chambers: {} samples (seed {}), {} covered, passed {}\n",
        c.samples,
        c.seed,
        c.samples_covered,
        c.passed()
    );
    for v in &c.violations {
        writeln!(s, "  violation: {}", v.check).unwrap();
    }
    s
}

pub fn contraction_text(v: &ContractionVerdict) -> String {
    let case = serde_json::to_value(v.case).expect("serializable");
    format!(
        "contraction: case {}  swapped {}  target Picard rank {}  smooth {}  L.gamma {}\n",
        case.as_str().unwrap_or_default(),
        v.swapped,
        v.target_picard_rank,
        v.smooth,
        v.bandwidth_l_gamma
    )
}
