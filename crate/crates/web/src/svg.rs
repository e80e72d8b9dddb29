//! Layered SVG drawing of an acyclic Lyapunov graph.

use std::fmt::Write as _;

use nsflow::lyapgraph::{LyapunovGraph, VertexLabel};

const COL: f64 = 110.0;
const ROW: f64 = 90.0;
const MARGIN: f64 = 50.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Longest-path layering from the sources. Vertices on an oriented cycle
/// (invalid input) fall back to layer 0.
fn layers(g: &LyapunovGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut indegree: Vec<usize> = (0..n).map(|v| g.incoming(nsflow::lyapgraph::VertexId(v)).count()).collect();
    let mut layer = vec![0; n];
    let mut ready: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    while let Some(v) = ready.pop() {
        for (_, e) in g.outgoing(nsflow::lyapgraph::VertexId(v)) {
            let w = e.to.0;
            layer[w] = layer[w].max(layer[v] + 1);
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.push(w);
            }
        }
    }
    layer
}

fn node(out: &mut String, x: f64, y: f64, label: &VertexLabel) {
    match label {
        VertexLabel::AttractorOrbit => {
            let _ = write!(out, r#"<circle cx="{x}" cy="{y}" r="16" class="attractor"/><circle cx="{x}" cy="{y}" r="11" class="attractor"/>"#);
        }
        VertexLabel::RepellerOrbit => {
            let _ = write!(out, r#"<circle cx="{x}" cy="{y}" r="16" class="repeller"/>"#);
        }
        VertexLabel::Saddle(_) => {
            let _ = write!(out, r#"<rect x="{}" y="{}" width="32" height="32" class="saddle"/>"#, x - 16.0, y - 16.0);
        }
        VertexLabel::Singularity(_) => {
            let _ = write!(
                out,
                r#"<polygon points="{x},{} {},{y} {x},{} {},{y}" class="singularity"/>"#,
                y - 18.0,
                x + 18.0,
                y + 18.0,
                x - 18.0
            );
        }
        VertexLabel::OpenEnd => {
            let _ = write!(out, r#"<circle cx="{x}" cy="{y}" r="4" class="boundary"/>"#);
        }
    }
}

/// Flow runs top to bottom; parallel edges are bowed apart.
pub fn render(g: &LyapunovGraph) -> String {
    let layer = layers(g);
    let depth = layer.iter().copied().max().map_or(0, |d| d + 1);
    let mut slots = vec![0usize; depth.max(1)];
    let mut pos = vec![(0.0, 0.0); g.vertex_count()];
    for (id, _) in g.vertices() {
        let l = layer[id.0];
        pos[id.0] = (MARGIN + COL * slots[l] as f64, MARGIN + ROW * l as f64);
        slots[l] += 1;
    }
    let width = MARGIN * 2.0 + COL * (slots.iter().copied().max().unwrap_or(1).saturating_sub(1)) as f64 + 60.0;
    let height = MARGIN * 2.0 + ROW * (depth.saturating_sub(1)) as f64;
    let mut out = format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" width="{width}" height="{height}">"#
    );
    out.push_str(r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="7" markerHeight="7" orient="auto"><path d="M0,0L10,5L0,10z"/></marker></defs>"#);

    let mut seen_pairs: Vec<(usize, usize)> = Vec::new();
    for (_, e) in g.edges() {
        let (a, b) = (e.from.0, e.to.0);
        let parallel = seen_pairs.iter().filter(|&&p| p == (a, b)).count();
        seen_pairs.push((a, b));
        let (x1, y1) = pos[a];
        let (x2, y2) = pos[b];
        let (dx, dy) = (x2 - x1, y2 - y1);
        let len = (dx * dx + dy * dy).sqrt().max(1.0);
        let (ux, uy) = (dx / len, dy / len);
        let (sx, sy, tx, ty) = (x1 + ux * 18.0, y1 + uy * 18.0, x2 - ux * 20.0, y2 - uy * 20.0);
        let bow = if parallel % 2 == 0 { 1.0 } else { -1.0 } * 28.0 * parallel.div_ceil(2) as f64;
        let (cx, cy) = ((sx + tx) / 2.0 - uy * bow, (sy + ty) / 2.0 + ux * bow);
        let _ = write!(
            out,
            r#"<path d="M{sx:.1},{sy:.1} Q{cx:.1},{cy:.1} {tx:.1},{ty:.1}" class="edge w{}" marker-end="url(#arrow)"><title>{}</title></path>"#,
            e.weight.min(3),
            escape(&e.name)
        );
        let (lx, ly) = ((sx + 2.0 * cx + tx) / 4.0 + 8.0, (sy + 2.0 * cy + ty) / 4.0);
        let _ = write!(out, r#"<text x="{lx:.1}" y="{ly:.1}" class="weight">{}</text>"#, e.weight);
    }
    for (id, v) in g.vertices() {
        let (x, y) = pos[id.0];
        let _ = write!(out, r#"<g class="vertex"><title>{}</title>"#, escape(v.label.kind()));
        node(&mut out, x, y, &v.label);
        let _ = write!(out, r#"<text x="{}" y="{}" class="name">{}</text></g>"#, x + 22.0, y + 4.0, escape(&v.name));
    }
    out.push_str("</svg>");
    out
}
