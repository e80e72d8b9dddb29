//! Realizability of an abstract Lyapunov graph by a Smale flow on S³.

use serde::Serialize;

use super::{balance_diagnostics, nsf_balance_check, validate_abstract, LyapunovGraph, VertexLabel};
use crate::diag::{Code, Diagnostic};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub pass: bool,
    pub details: Vec<Diagnostic>,
}

impl Condition {
    fn from_details(details: Vec<Diagnostic>) -> Self {
        Self { pass: details.is_empty(), details }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct S3Report {
    /// Structural problems and sink/source labels outside the theorem's
    /// hypotheses. Any entry here fails the report.
    pub preconditions: Vec<Diagnostic>,
    /// Tree, and every sink and source has exactly one edge.
    pub condition1: Condition,
    /// Edge-count inequalities at saddle vertices.
    pub condition2: Condition,
    /// Poincaré–Hopf balance at every vertex.
    pub condition3: Condition,
    pub pass: bool,
}

pub fn check_s3(g: &LyapunovGraph) -> S3Report {
    let mut preconditions = validate_abstract(g);
    for (id, v) in g.vertices() {
        if v.label == VertexLabel::OpenEnd {
            preconditions.push(Diagnostic::new(Code::OpenEnd, "open boundary end in a closed graph").at_vertex(&v.name));
            continue;
        }
        if g.is_sink(id) && !matches!(v.label, VertexLabel::AttractorOrbit | VertexLabel::Singularity(0)) {
            preconditions.push(
                Diagnostic::new(Code::SinkLabel, format!("sink labelled {}", v.label.kind())).at_vertex(&v.name),
            );
        }
        if g.is_source(id) && !matches!(v.label, VertexLabel::RepellerOrbit | VertexLabel::Singularity(3)) {
            preconditions.push(
                Diagnostic::new(Code::SourceLabel, format!("source labelled {}", v.label.kind())).at_vertex(&v.name),
            );
        }
    }

    let mut c1 = Vec::new();
    let is_tree = g.vertex_count() > 0 && g.is_connected() && g.edge_count() + 1 == g.vertex_count();
    if !is_tree {
        c1.push(Diagnostic::new(
            Code::NotTree,
            format!("{} vertices and {} edges do not form a tree", g.vertex_count(), g.edge_count()),
        ));
    }
    for (id, v) in g.vertices() {
        if g.is_sink(id) || g.is_source(id) {
            let degree = g.stats(id).degree();
            if degree != 1 {
                c1.push(
                    Diagnostic::new(Code::TerminalDegree, format!("sink/source has {degree} edges, expected 1"))
                        .at_vertex(&v.name),
                );
            }
        }
    }

    let mut c2 = Vec::new();
    for (id, v) in g.vertices() {
        let VertexLabel::Saddle(a) = &v.label else { continue };
        let k = a.k_invariant() as i64;
        let s = g.stats(id);
        let (e_plus, e_minus) = (s.e_plus as i64, s.e_minus as i64);
        let (g_plus, g_minus) = (s.g_plus as i64, s.g_minus as i64);
        let mut fail = |msg: String| c2.push(Diagnostic::new(Code::SaddleEdgeCount, msg).at_vertex(&v.name));
        if e_plus == 0 || e_minus == 0 {
            fail(format!("needs incoming and outgoing edges (e+={e_plus}, e-={e_minus})"));
        }
        if !(k + 1 - g_minus <= e_plus && e_plus <= k + 1) {
            fail(format!("e+={e_plus} outside [{}, {}] for k={k}, G-={g_minus}", k + 1 - g_minus, k + 1));
        }
        if !(k + 1 - g_plus <= e_minus && e_minus <= k + 1) {
            fail(format!("e-={e_minus} outside [{}, {}] for k={k}, G+={g_plus}", k + 1 - g_plus, k + 1));
        }
    }

    let c3 = balance_diagnostics(g, &nsf_balance_check(g));

    let condition1 = Condition::from_details(c1);
    let condition2 = Condition::from_details(c2);
    let condition3 = Condition::from_details(c3);
    let pass = preconditions.is_empty() && condition1.pass && condition2.pass && condition3.pass;
    S3Report { preconditions, condition1, condition2, condition3, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::IntMatrix;

    fn saddle(k_one: bool) -> VertexLabel {
        let entry = if k_one { 1 } else { 2 };
        VertexLabel::Saddle(IntMatrix::from_rows(vec![vec![entry]]).unwrap())
    }

    #[test]
    fn trivial_sphere_flow_passes() {
        // repeller -> attractor through a torus level
        let mut g = LyapunovGraph::new();
        let r = g.add_vertex("r", VertexLabel::RepellerOrbit).unwrap();
        let a = g.add_vertex("a", VertexLabel::AttractorOrbit).unwrap();
        g.add_edge("ra", r, a, 1).unwrap();
        assert!(check_s3(&g).pass);
    }

    #[test]
    fn bad_sink_label_is_a_precondition_failure() {
        let mut g = LyapunovGraph::new();
        let r = g.add_vertex("r", VertexLabel::RepellerOrbit).unwrap();
        let a = g.add_vertex("a", VertexLabel::Singularity(3)).unwrap();
        g.add_edge("ra", r, a, 1).unwrap();
        let report = check_s3(&g);
        assert!(!report.pass);
        assert_eq!(report.preconditions[0].code, Code::SinkLabel);
    }

    #[test]
    fn saddle_inequalities() {
        // r -(1)-> s -(1)-> a with s = [[1]] (k = 1): e+ = 1 in [1, 2], e- = 1 in [1, 2].
        let mut g = LyapunovGraph::new();
        let r = g.add_vertex("r", VertexLabel::RepellerOrbit).unwrap();
        let s = g.add_vertex("s", saddle(true)).unwrap();
        let a = g.add_vertex("a", VertexLabel::AttractorOrbit).unwrap();
        g.add_edge("rs", r, s, 1).unwrap();
        g.add_edge("sa", s, a, 1).unwrap();
        assert!(check_s3(&g).condition2.pass);
        // k = 0: e+ must satisfy 0 + 1 - 1 <= e+ <= 1, still fine.
        let g0 = g.with_label(s, saddle(false));
        assert!(check_s3(&g0).condition2.pass);
        // heavier edges keep balance but push k + 1 - G below, still within;
        // a saddle with two outgoing edges and k = 0 violates e- <= k + 1.
        let mut g2 = g0.clone();
        let a2 = g2.add_vertex("a2", VertexLabel::AttractorOrbit).unwrap();
        g2.add_edge("sa2", s, a2, 1).unwrap();
        let report = check_s3(&g2);
        assert!(!report.condition2.pass);
        assert_eq!(report.condition2.details[0].vertex.as_deref(), Some("s"));
    }

    #[test]
    fn cycle_fails_condition_one() {
        let mut g = LyapunovGraph::new();
        let r = g.add_vertex("r", VertexLabel::RepellerOrbit).unwrap();
        let s = g.add_vertex("s", saddle(true)).unwrap();
        let t = g.add_vertex("t", saddle(true)).unwrap();
        let a = g.add_vertex("a", VertexLabel::AttractorOrbit).unwrap();
        g.add_edge("rs", r, s, 1).unwrap();
        g.add_edge("st2", s, t, 2).unwrap();
        g.add_edge("st0", s, t, 0).unwrap();
        g.add_edge("ta", t, a, 1).unwrap();
        let report = check_s3(&g);
        assert!(!report.condition1.pass);
        assert!(report.condition3.pass);
    }
}
