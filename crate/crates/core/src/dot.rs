//! Graphviz export.

use std::fmt::Write as _;

use crate::lyapgraph::{LyapunovGraph, VertexLabel};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

fn shape(label: &VertexLabel) -> &'static str {
    match label {
        VertexLabel::AttractorOrbit => "doublecircle",
        VertexLabel::RepellerOrbit => "circle",
        VertexLabel::Saddle(_) => "box",
        VertexLabel::Singularity(_) => "diamond",
        VertexLabel::OpenEnd => "plaintext",
    }
}

fn caption(name: &str, label: &VertexLabel) -> String {
    match label {
        VertexLabel::Saddle(m) => format!("{name}\n{m}"),
        VertexLabel::Singularity(r) => format!("{name}\nindex {r}"),
        _ => name.to_owned(),
    }
}

/// DOT digraph in vertex and edge insertion order. Shapes: attractor
/// `doublecircle`, repeller `circle`, saddle `box`, singularity `diamond`,
/// boundary `plaintext`. Edge labels are weights.
pub fn export_dot(g: &LyapunovGraph) -> String {
    let mut out = String::from("digraph lyapunov {\n  rankdir=TB;\n");
    for (_, v) in g.vertices() {
        let _ = writeln!(
            out,
            "  {} [shape={}, label={}];",
            quote(&v.name),
            shape(&v.label),
            quote(&caption(&v.name, &v.label))
        );
    }
    for (_, e) in g.edges() {
        let _ = writeln!(
            out,
            "  {} -> {} [label=\"{}\", tooltip={}];",
            quote(&g.vertex(e.from).name),
            quote(&g.vertex(e.to).name),
            e.weight,
            quote(&e.name)
        );
    }
    out.push_str("}\n");
    out
}
