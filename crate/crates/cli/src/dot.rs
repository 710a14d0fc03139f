use std::fmt::Write;

use cstar_core::action::OrbitGraph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering: one cluster per fixed component, one node per fixed point labeled
/// `level:multiplicity:dim` of its component, one edge per invariant curve labeled by its
/// degree. Higher levels are drawn further left.
pub fn render(name: &str, g: &OrbitGraph) -> String {
    let mut s = String::new();
    writeln!(s, "digraph {} {{", quote(name)).unwrap();
    writeln!(s, "  rankdir=RL;").unwrap();
    for n in &g.nodes {
        writeln!(s, "  subgraph cluster_{} {{", n.id).unwrap();
        writeln!(s, "    label={};", quote(&format!("component {}", n.id))).unwrap();
        let label = quote(&format!("{}:{}:{}", n.level, n.multiplicity, n.dim));
        for (i, p) in g.points.iter().enumerate().filter(|(_, p)| p.component == n.id) {
            writeln!(
                s,
                "    p{i} [label={label}, tooltip={}];",
                quote(&p.weight.to_string())
            )
            .unwrap();
        }
        writeln!(s, "  }}").unwrap();
    }
    for c in &g.curves {
        writeln!(
            s,
            "  p{} -> p{} [label={}];",
            c.lower,
            c.upper,
            quote(&c.degree.to_string())
        )
        .unwrap();
    }
    writeln!(s, "}}").unwrap();
    s
}
