//! Lower bounds on the number of S¹×S² connected summands read off a
//! Lyapunov graph: heavy regular levels force weight-0 edges that can be cut
//! without disconnecting the graph.

use serde::Serialize;

use super::{
    balance_diagnostics, cycle_rank, nsf_balance_check, reachable_by_nonzero, validate_abstract, Direction, EdgeId,
    GraphError, LyapunovGraph, VertexId, VertexLabel,
};
use crate::diag::{Code, Diagnostic};
use crate::template::{template_genus, BoundaryReport};

/// Weight-0 edges whose terminal vertex is reachable from `t(edge)` along
/// nonzero-weight oriented paths (`t(edge)` itself included).
pub fn vanishing_zero_edges(g: &LyapunovGraph, edge: EdgeId) -> Vec<EdgeId> {
    let head = g.edge(edge).to;
    let region = reachable_by_nonzero(g, head, Direction::Forward);
    zero_edges_touching(g, &region, Direction::Forward)
}

/// Weight-0 edges whose head (forward) or tail (backward) lies in `region`.
fn zero_edges_touching(g: &LyapunovGraph, region: &[VertexId], direction: Direction) -> Vec<EdgeId> {
    g.edges()
        .filter(|(_, e)| e.weight == 0)
        .filter(|(_, e)| {
            let end = match direction {
                Direction::Forward => e.to,
                Direction::Backward => e.from,
            };
            region.contains(&end)
        })
        .map(|(id, _)| id)
        .collect()
}

/// `count` edges from `candidates` (smallest names first), provided removing
/// every candidate leaves the graph connected.
fn pick_certificate(g: &LyapunovGraph, candidates: &[EdgeId], count: usize) -> Option<Vec<EdgeId>> {
    if count == 0 {
        return Some(Vec::new());
    }
    if candidates.len() < count || !g.is_connected_without(candidates) {
        return None;
    }
    let mut sorted = candidates.to_vec();
    sorted.sort_by(|a, b| g.edge(*a).name.cmp(&g.edge(*b).name));
    sorted.truncate(count);
    Some(sorted)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummandBound {
    /// Largest edge weight minus one, floored at zero.
    pub n: u32,
    /// Names of `n` weight-0 edges whose removal keeps the graph connected.
    pub certificate: Vec<String>,
    pub ok: bool,
    pub cycle_rank: Option<usize>,
    /// `cycle_rank >= n`.
    pub rank_bound_holds: bool,
    pub diagnostics: Vec<Diagnostic>,
}

/// Number of S¹×S² summands forced by the heaviest regular level, with a
/// connectivity certificate of cuttable weight-0 edges.
pub fn summand_lower_bound(g: &LyapunovGraph) -> SummandBound {
    let n = g.max_weight().unwrap_or(0).saturating_sub(1);
    let mut diagnostics = validate_abstract(g);
    diagnostics.extend(balance_diagnostics(g, &nsf_balance_check(g)));
    let rank = cycle_rank(g).ok();
    let rank_bound_holds = rank.is_some_and(|r| r >= n as usize);
    let mut bound = SummandBound { n, certificate: Vec::new(), ok: false, cycle_rank: rank, rank_bound_holds, diagnostics };
    if !bound.diagnostics.is_empty() {
        return bound;
    }

    let mut heaviest: Vec<(EdgeId, &str)> = g
        .edges()
        .filter(|(_, e)| e.weight == n + 1)
        .map(|(id, e)| (id, e.name.as_str()))
        .collect();
    heaviest.sort_by(|a, b| a.1.cmp(b.1));
    let found = if n == 0 {
        Some(Vec::new())
    } else {
        heaviest
            .iter()
            .find_map(|&(edge, _)| pick_certificate(g, &vanishing_zero_edges(g, edge), n as usize))
    };
    match found {
        Some(cert) => {
            bound.certificate = cert.into_iter().map(|e| g.edge(e).name.clone()).collect();
            bound.ok = true;
        }
        None => bound.diagnostics.push(Diagnostic::new(
            Code::NoCertificate,
            format!("no set of {n} vanishing weight-0 edges can be cut without disconnecting the graph"),
        )),
    }
    if bound.ok && !rank_bound_holds {
        bound.diagnostics.push(Diagnostic::new(Code::CycleRank, format!("cycle rank {rank:?} is below {n}")));
    }
    bound
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Entrance,
    Exit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TemplateVertexCheck {
    /// Which side of the thickened template realizes `g(T)`.
    pub side: Side,
    /// Number of heavy (weight > 1) edges at the vertex on that side.
    pub s: usize,
    pub heavy_weights: Vec<u32>,
    /// `s0` (entrance side) or `t0` (exit side) of the report.
    pub bucket: usize,
    pub s_ok: bool,
    pub genus_ok: bool,
    pub summand_ok: bool,
    pub g_t: u32,
    pub certificate: Vec<String>,
}

/// Compatibility of a saddle vertex with the boundary data of the template
/// modelling it.
///
/// The side is the one attaining `g(T)`, the entrance side on ties. On the
/// entrance side the heavy edges are the incoming ones and the cuttable
/// weight-0 edges start in the nonzero-weight backward basin of their
/// tails; the exit side is the mirror image.
pub fn check_template_vertex(
    g: &LyapunovGraph,
    vertex: &str,
    report: &BoundaryReport,
) -> Result<TemplateVertexCheck, GraphError> {
    let v = g.vertex_id(vertex)?;
    if !matches!(g.vertex(v).label, VertexLabel::Saddle(_)) {
        return Err(GraphError::NotSaddle(vertex.to_owned()));
    }
    let g_t = template_genus(report);
    let (side, bucket) = if report.entrance_excess() >= report.exit_excess() {
        (Side::Entrance, report.s0)
    } else {
        (Side::Exit, report.t0)
    };
    let heavy: Vec<EdgeId> = match side {
        Side::Entrance => g.incoming(v).filter(|(_, e)| e.weight > 1).map(|(id, _)| id).collect(),
        Side::Exit => g.outgoing(v).filter(|(_, e)| e.weight > 1).map(|(id, _)| id).collect(),
    };
    let heavy_weights: Vec<u32> = heavy.iter().map(|&e| g.edge(e).weight).collect();
    let s = heavy.len();
    let excess: i64 = heavy_weights.iter().map(|&w| i64::from(w)).sum::<i64>() - s as i64;

    let (walk, cut_end) = match side {
        Side::Entrance => (Direction::Backward, Direction::Backward),
        Side::Exit => (Direction::Forward, Direction::Forward),
    };
    let mut basin = vec![false; g.vertex_count()];
    for &e in &heavy {
        let anchor = match side {
            Side::Entrance => g.edge(e).from,
            Side::Exit => g.edge(e).to,
        };
        for x in reachable_by_nonzero(g, anchor, walk) {
            basin[x.0] = true;
        }
    }
    let region: Vec<VertexId> = basin.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| VertexId(i)).collect();
    let candidates = zero_edges_touching(g, &region, cut_end);
    let certificate = pick_certificate(g, &candidates, g_t as usize);

    Ok(TemplateVertexCheck {
        side,
        s,
        heavy_weights,
        bucket,
        s_ok: s <= bucket,
        genus_ok: excess >= i64::from(g_t),
        summand_ok: certificate.is_some(),
        g_t,
        certificate: certificate.unwrap_or_default().into_iter().map(|e| g.edge(e).name.clone()).collect(),
    })
}
