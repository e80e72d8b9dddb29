//! Graph families from the constructive proofs: the singular tree on S³ with
//! a heavy central level, its self-splice onto a connected sum of S¹×S²'s,
//! the connected-sum surgery gadget, and the two S¹×S² example graphs.

use thiserror::Error;

use crate::gf2::{find_matrix_with_k, IntMatrix};
use crate::lyapgraph::{EdgeId, GraphError, LyapunovGraph, VertexId, VertexLabel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("n must be at least 1")]
    NonPositive,
    #[error("surgery edge `{edge}`: {reason}")]
    SurgeryPrecondition { edge: String, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn saddle_with_k(k: usize) -> VertexLabel {
    VertexLabel::Saddle(find_matrix_with_k(k))
}

/// The tree on S³ with a central edge `E` of weight `n + 1`.
///
/// Source side: `repeller -E1-> u1 -E2-> ... -En-> un -E-> wn`, weights
/// `1..=n`, and each `uj` also feeds a weight-0 edge `Fj` into an index-0
/// sink `sinkj`. Sink side mirrors it: `wn -E^n-> ... w1 -E^1-> attractor`
/// with weights `n..=1`, and an index-3 source `sourcej` feeds `wj` through
/// the weight-0 edge `F^j`. Both `uj` and `wj` are saddles with `k = j`.
pub fn build_lemma34(n: usize) -> Result<LyapunovGraph, BuildError> {
    if n < 1 {
        return Err(BuildError::NonPositive);
    }
    let mut g = LyapunovGraph::new();
    g.add_vertex("repeller", VertexLabel::RepellerOrbit)?;
    for j in 1..=n {
        g.add_vertex(format!("u{j}"), saddle_with_k(j))?;
        g.add_vertex(format!("sink{j}"), VertexLabel::Singularity(0))?;
    }
    for j in (1..=n).rev() {
        g.add_vertex(format!("w{j}"), saddle_with_k(j))?;
        g.add_vertex(format!("source{j}"), VertexLabel::Singularity(3))?;
    }
    g.add_vertex("attractor", VertexLabel::AttractorOrbit)?;

    let weight = |j: usize| u32::try_from(j).expect("weight fits in u32");
    for j in 1..=n {
        let prev = if j == 1 { "repeller".to_owned() } else { format!("u{}", j - 1) };
        g.connect(&format!("E{j}"), &prev, &format!("u{j}"), weight(j))?;
        g.connect(&format!("F{j}"), &format!("u{j}"), &format!("sink{j}"), 0)?;
    }
    g.connect("E", &format!("u{n}"), &format!("w{n}"), weight(n + 1))?;
    for j in (1..=n).rev() {
        let next = if j == 1 { "attractor".to_owned() } else { format!("w{}", j - 1) };
        g.connect(&format!("E^{j}"), &format!("w{j}"), &next, weight(j))?;
        g.connect(&format!("F^{j}"), &format!("source{j}"), &format!("w{j}"), 0)?;
    }
    Ok(g)
}

/// [`build_lemma34`] with its singular sinks and sources removed and each
/// dangling pair of weight-0 edges spliced into one edge `Sj: uj -> wj`.
pub fn build_prop35(n: usize) -> Result<LyapunovGraph, BuildError> {
    let tree = build_lemma34(n)?;
    let singular: Vec<VertexId> = tree
        .vertices()
        .filter(|(_, v)| matches!(v.label, VertexLabel::Singularity(_)))
        .map(|(id, _)| id)
        .collect();
    let mut g = tree.without_vertices(&singular);
    for j in 1..=n {
        g.connect(&format!("S{j}"), &format!("u{j}"), &format!("w{j}"), 0)?;
    }
    Ok(g)
}

fn check_surgery_edge(g: &LyapunovGraph, edge: EdgeId) -> Result<VertexId, BuildError> {
    let e = g.edge(edge);
    let fail = |reason: String| BuildError::SurgeryPrecondition { edge: e.name.clone(), reason };
    if e.weight != 1 {
        return Err(fail(format!("weight is {}, expected 1", e.weight)));
    }
    let head = g.vertex(e.to);
    if head.label != VertexLabel::AttractorOrbit {
        return Err(fail(format!("ends at a {} vertex, expected an attracting orbit", head.label.kind())));
    }
    let degree = g.stats(e.to).degree();
    if degree != 1 {
        return Err(fail(format!("attractor `{}` has degree {degree}, expected 1", head.name)));
    }
    Ok(e.to)
}

/// Graph-level connected sum along two edges ending at closed-orbit
/// attractors.
///
/// Both attractors are removed, the two edges are redirected into a new
/// saddle orbit (matrix `[[1]]`), and that saddle drains into a new
/// attractor through a weight-1 edge. Names from `left` and `right` are
/// prefixed with `L1.` and `L2.`; the gadget uses the `G.` prefix.
pub fn surgery_connect(
    left: &LyapunovGraph,
    left_edge: &str,
    right: &LyapunovGraph,
    right_edge: &str,
) -> Result<LyapunovGraph, BuildError> {
    let e1 = left.edge_id(left_edge)?;
    let e2 = right.edge_id(right_edge)?;
    let drop1 = check_surgery_edge(left, e1)?;
    let drop2 = check_surgery_edge(right, e2)?;

    let mut g = LyapunovGraph::new();
    let saddle = VertexLabel::Saddle(IntMatrix::from_rows(vec![vec![1]]).expect("1x1 matrix"));
    for (prefix, part, dropped, cut) in [("L1.", left, drop1, e1), ("L2.", right, drop2, e2)] {
        for (id, v) in part.vertices() {
            if id != dropped {
                g.add_vertex(format!("{prefix}{}", v.name), v.label.clone())?;
            }
        }
        // gadget saddle must exist before the redirected edge
        if prefix == "L1." {
            g.add_vertex("G.saddle", saddle.clone())?;
        }
        for (id, e) in part.edges() {
            let from = format!("{prefix}{}", part.vertex(e.from).name);
            let to = if id == cut { "G.saddle".to_owned() } else { format!("{prefix}{}", part.vertex(e.to).name) };
            g.connect(&format!("{prefix}{}", e.name), &from, &to, e.weight)?;
        }
    }
    g.add_vertex("G.attractor", VertexLabel::AttractorOrbit)?;
    g.connect("G.out", "G.saddle", "G.attractor", 1)?;
    Ok(g)
}

/// The two graphs of the S¹×S² example.
#[derive(Debug, Clone)]
pub struct Section5 {
    /// Flow on the manifold with boundary obtained from the thickened
    /// template: one saddle fed by a genus-2 and a genus-0 entrance
    /// boundary, draining through a genus-1 exit boundary.
    pub g: LyapunovGraph,
    /// Closed graph on S¹×S²: `repeller -(1)-> v- -(2)-> v+ -(1)-> attractor`
    /// with a parallel weight-0 edge `v- -> v+`.
    pub l: LyapunovGraph,
}

fn horseshoe() -> VertexLabel {
    VertexLabel::Saddle(IntMatrix::from_rows(vec![vec![1, 1], vec![1, 1]]).expect("2x2 matrix"))
}

pub fn build_section5() -> Section5 {
    let mut g = LyapunovGraph::new();
    for name in ["X1", "X2", "Y"] {
        g.add_vertex(name, VertexLabel::OpenEnd).expect("fresh name");
    }
    g.add_vertex("v", horseshoe()).expect("fresh name");
    g.connect("x1", "X1", "v", 2).expect("known vertices");
    g.connect("x2", "X2", "v", 0).expect("known vertices");
    g.connect("y", "v", "Y", 1).expect("known vertices");

    let mut l = LyapunovGraph::new();
    l.add_vertex("repeller", VertexLabel::RepellerOrbit).expect("fresh name");
    l.add_vertex("v-", horseshoe()).expect("fresh name");
    l.add_vertex("v+", horseshoe()).expect("fresh name");
    l.add_vertex("attractor", VertexLabel::AttractorOrbit).expect("fresh name");
    l.connect("r", "repeller", "v-", 1).expect("known vertices");
    l.connect("e2", "v-", "v+", 2).expect("known vertices");
    l.connect("e0", "v-", "v+", 0).expect("known vertices");
    l.connect("a", "v+", "attractor", 1).expect("known vertices");
    Section5 { g, l }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lyapgraph::{check_s3, cycle_rank, nsf_balance_check, validate_abstract};

    fn weights(g: &LyapunovGraph) -> Vec<u32> {
        let mut w: Vec<u32> = g.edges().map(|(_, e)| e.weight).collect();
        w.sort_unstable();
        w
    }

    #[test]
    fn lemma34_n1_shape() {
        let g = build_lemma34(1).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(weights(&g), vec![0, 0, 1, 1, 2]);
        assert!(check_s3(&g).pass);
    }

    #[test]
    fn lemma34_n2_matches_figure() {
        let g = build_lemma34(2).unwrap();
        assert_eq!(g.edges().filter(|(_, e)| e.weight == 3).count(), 1);
        let count = |r| g.vertices().filter(|(_, v)| v.label == VertexLabel::Singularity(r)).count();
        assert_eq!((count(0), count(3)), (2, 2));
        assert!(validate_abstract(&g).is_empty());
    }

    #[test]
    fn rejects_zero() {
        assert_eq!(build_lemma34(0).unwrap_err(), BuildError::NonPositive);
        assert_eq!(build_prop35(0).unwrap_err(), BuildError::NonPositive);
    }

    #[test]
    fn prop35_n1_shape() {
        let g = build_prop35(1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
        assert_eq!(cycle_rank(&g), Ok(1));
        assert!(g.vertices().all(|(_, v)| !matches!(v.label, VertexLabel::Singularity(_))));
        assert!(nsf_balance_check(&g).is_empty());
        assert!(validate_abstract(&g).is_empty());
    }

    #[test]
    fn surgery_on_trivial_flows() {
        let mut base = LyapunovGraph::new();
        base.add_vertex("r", VertexLabel::RepellerOrbit).unwrap();
        base.add_vertex("a", VertexLabel::AttractorOrbit).unwrap();
        base.connect("ra", "r", "a", 1).unwrap();
        let g = surgery_connect(&base, "ra", &base, "ra").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert!(g.vertices().all(|(id, _)| g.stats(id).residual() == 0));
        assert_eq!(g.vertex(g.edge(g.edge_id("L1.ra").unwrap()).to).name, "G.saddle");
    }

    #[test]
    fn surgery_preconditions() {
        let g = build_section5().l;
        let err = surgery_connect(&g, "e2", &g, "a").unwrap_err();
        assert!(matches!(err, BuildError::SurgeryPrecondition { ref edge, .. } if edge == "e2"));
        let err = surgery_connect(&g, "r", &g, "a").unwrap_err();
        assert!(matches!(err, BuildError::SurgeryPrecondition { ref edge, .. } if edge == "r"));
        assert!(matches!(surgery_connect(&g, "zz", &g, "a"), Err(BuildError::Graph(GraphError::UnknownEdge(_)))));
    }

    #[test]
    fn section5_graphs() {
        let Section5 { g, l } = build_section5();
        assert_eq!(cycle_rank(&l), Ok(1));
        assert_eq!(l.max_weight(), Some(2));
        for v in ["v-", "v+"] {
            assert_eq!(l.stats(l.vertex_id(v).unwrap()).residual(), 0);
        }
        assert_eq!(g.stats(g.vertex_id("v").unwrap()).residual(), 0);
        assert!(nsf_balance_check(&g).is_empty());
        assert!(validate_abstract(&g).is_empty());
    }
}
