//! Abstract Lyapunov graphs: finite connected oriented multigraphs without
//! oriented cycles whose vertices carry chain-recurrent pieces and whose
//! edges carry the genus of the regular level set they represent.

mod s3;
mod summands;

pub use s3::{check_s3, Condition, S3Report};
pub use summands::{
    check_template_vertex, summand_lower_bound, vanishing_zero_edges, Side, SummandBound,
    TemplateVertexCheck,
};

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::diag::{Code, Diagnostic};
use crate::gf2::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VertexLabel {
    AttractorOrbit,
    RepellerOrbit,
    /// Suspension of the subshift of finite type with this transition matrix.
    Saddle(IntMatrix),
    /// Fixed point of the given index (0 = sink, 3 = source).
    Singularity(u8),
    /// Free boundary end of a graph describing a flow on a manifold with
    /// boundary. Not a chain-recurrent piece; balance does not apply.
    OpenEnd,
}

impl VertexLabel {
    pub fn kind(&self) -> &'static str {
        match self {
            VertexLabel::AttractorOrbit => "attractor",
            VertexLabel::RepellerOrbit => "repeller",
            VertexLabel::Saddle(_) => "saddle",
            VertexLabel::Singularity(_) => "singularity",
            VertexLabel::OpenEnd => "boundary",
        }
    }

    pub fn is_saddle(&self) -> bool {
        matches!(self, VertexLabel::Saddle(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
    pub label: VertexLabel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub from: VertexId,
    pub to: VertexId,
    pub weight: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("graph is empty")]
    Empty,
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex `{0}` is not a saddle")]
    NotSaddle(String),
}

/// Per-vertex edge counts and weight sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VertexStats {
    pub e_plus: usize,
    pub e_minus: usize,
    pub g_plus: u64,
    pub g_minus: u64,
}

impl VertexStats {
    /// `e+ - e- - G+ + G-`.
    pub fn residual(&self) -> i64 {
        self.e_plus as i64 - self.e_minus as i64 - self.g_plus as i64 + self.g_minus as i64
    }

    pub fn degree(&self) -> usize {
        self.e_plus + self.e_minus
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LyapunovGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
}

impl LyapunovGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>, label: VertexLabel) -> Result<VertexId, GraphError> {
        let name = name.into();
        if self.vertex_index.contains_key(&name) {
            return Err(GraphError::DuplicateVertex(name));
        }
        let id = VertexId(self.vertices.len());
        self.vertex_index.insert(name.clone(), id);
        self.vertices.push(Vertex { name, label });
        Ok(id)
    }

    pub fn add_edge(
        &mut self,
        name: impl Into<String>,
        from: VertexId,
        to: VertexId,
        weight: u32,
    ) -> Result<EdgeId, GraphError> {
        let name = name.into();
        if self.edge_index.contains_key(&name) {
            return Err(GraphError::DuplicateEdge(name));
        }
        for v in [from, to] {
            if v.0 >= self.vertices.len() {
                return Err(GraphError::UnknownVertex(format!("#{}", v.0)));
            }
        }
        let id = EdgeId(self.edges.len());
        self.edge_index.insert(name.clone(), id);
        self.edges.push(Edge { name, from, to, weight });
        Ok(id)
    }

    /// Convenience for builders: adds an edge between named vertices.
    pub fn connect(&mut self, name: &str, from: &str, to: &str, weight: u32) -> Result<EdgeId, GraphError> {
        let from = self.vertex_id(from)?;
        let to = self.vertex_id(to)?;
        self.add_edge(name, from, to, weight)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, &Vertex)> {
        self.vertices.iter().enumerate().map(|(i, v)| (VertexId(i), v))
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Edge)> {
        self.edges.iter().enumerate().map(|(i, e)| (EdgeId(i), e))
    }

    pub fn vertex(&self, id: VertexId) -> &Vertex {
        &self.vertices[id.0]
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.0]
    }

    pub fn vertex_id(&self, name: &str) -> Result<VertexId, GraphError> {
        self.vertex_index.get(name).copied().ok_or_else(|| GraphError::UnknownVertex(name.to_owned()))
    }

    pub fn edge_id(&self, name: &str) -> Result<EdgeId, GraphError> {
        self.edge_index.get(name).copied().ok_or_else(|| GraphError::UnknownEdge(name.to_owned()))
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.edges.iter().map(|e| e.weight).max()
    }

    pub fn incoming(&self, v: VertexId) -> impl Iterator<Item = (EdgeId, &Edge)> {
        self.edges().filter(move |(_, e)| e.to == v)
    }

    pub fn outgoing(&self, v: VertexId) -> impl Iterator<Item = (EdgeId, &Edge)> {
        self.edges().filter(move |(_, e)| e.from == v)
    }

    pub fn stats(&self, v: VertexId) -> VertexStats {
        let mut s = VertexStats::default();
        for e in &self.edges {
            if e.to == v {
                s.e_plus += 1;
                s.g_plus += u64::from(e.weight);
            }
            if e.from == v {
                s.e_minus += 1;
                s.g_minus += u64::from(e.weight);
            }
        }
        s
    }

    /// Copy with one edge weight replaced.
    pub fn with_weight(&self, edge: EdgeId, weight: u32) -> Self {
        let mut g = self.clone();
        g.edges[edge.0].weight = weight;
        g
    }

    /// Copy with one vertex relabelled.
    pub fn with_label(&self, vertex: VertexId, label: VertexLabel) -> Self {
        let mut g = self.clone();
        g.vertices[vertex.0].label = label;
        g
    }

    /// Copy without the listed edges; vertices are kept.
    pub fn without_edges(&self, removed: &[EdgeId]) -> Self {
        let mut g = LyapunovGraph::new();
        for v in &self.vertices {
            g.add_vertex(v.name.clone(), v.label.clone()).expect("names already unique");
        }
        for (id, e) in self.edges() {
            if !removed.contains(&id) {
                g.add_edge(e.name.clone(), e.from, e.to, e.weight).expect("names already unique");
            }
        }
        g
    }

    /// Copy without the listed vertices and every edge touching them.
    pub fn without_vertices(&self, removed: &[VertexId]) -> Self {
        let mut g = LyapunovGraph::new();
        let mut remap = vec![None; self.vertices.len()];
        for (id, v) in self.vertices() {
            if !removed.contains(&id) {
                remap[id.0] = Some(g.add_vertex(v.name.clone(), v.label.clone()).expect("names already unique"));
            }
        }
        for e in &self.edges {
            if let (Some(from), Some(to)) = (remap[e.from.0], remap[e.to.0]) {
                g.add_edge(e.name.clone(), from, to, e.weight).expect("names already unique");
            }
        }
        g
    }

    /// Undirected connectivity over all vertices, ignoring the masked edges.
    /// The empty graph counts as disconnected.
    pub fn is_connected_without(&self, removed: &[EdgeId]) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); n];
        for (id, e) in self.edges() {
            if !removed.contains(&id) {
                adj[e.from.0].push(e.to.0);
                adj[e.to.0].push(e.from.0);
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_without(&[])
    }

    /// Nontrivial strongly connected components (size > 1), each sorted.
    /// Self-loops are reported separately by the validator.
    fn oriented_cycle_classes(&self) -> Vec<Vec<VertexId>> {
        // Kosaraju: finishing order on G, then sweep G^T.
        let n = self.vertices.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for e in &self.edges {
            out[e.from.0].push(e.to.0);
            inc[e.to.0].push(e.from.0);
        }
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut stack = vec![(root, 0usize)];
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if let Some(&w) = out[v].get(*next) {
                    *next += 1;
                    if !seen[w] {
                        seen[w] = true;
                        stack.push((w, 0));
                    }
                } else {
                    order.push(v);
                    stack.pop();
                }
            }
        }
        let mut comp = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for &root in order.iter().rev() {
            if comp[root] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut members = vec![root];
            comp[root] = c;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &w in &inc[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = c;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            classes.push(members);
        }
        classes
            .into_iter()
            .filter(|m| m.len() > 1)
            .map(|mut m| {
                m.sort_unstable();
                m.into_iter().map(VertexId).collect()
            })
            .collect()
    }

    pub fn has_oriented_cycle(&self) -> bool {
        self.edges.iter().any(|e| e.from == e.to) || !self.oriented_cycle_classes().is_empty()
    }

    /// Sources and sinks: vertices with no incoming (resp. outgoing) edge.
    pub fn is_sink(&self, v: VertexId) -> bool {
        !self.edges.iter().any(|e| e.from == v)
    }

    pub fn is_source(&self, v: VertexId) -> bool {
        !self.edges.iter().any(|e| e.to == v)
    }
}

impl fmt::Display for LyapunovGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            writeln!(f, "{} : {}", v.name, v.label.kind())?;
        }
        for e in &self.edges {
            writeln!(
                f,
                "{} : {} -> {} ({})",
                e.name, self.vertices[e.from.0].name, self.vertices[e.to.0].name, e.weight
            )?;
        }
        Ok(())
    }
}

/// Structural checks for an abstract Lyapunov graph. Empty iff the graph is
/// finite, connected, free of oriented cycles, and every saddle matrix is
/// irreducible.
pub fn validate_abstract(g: &LyapunovGraph) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    if g.vertex_count() == 0 {
        diags.push(Diagnostic::new(Code::EmptyGraph, "graph has no vertices"));
        return diags;
    }
    for (_, v) in g.vertices() {
        match &v.label {
            VertexLabel::Saddle(a) if !a.is_irreducible() => diags.push(
                Diagnostic::new(Code::SaddleMatrix, format!("saddle matrix {a} is not irreducible"))
                    .at_vertex(&v.name),
            ),
            VertexLabel::Singularity(r) if *r > 3 => diags.push(
                Diagnostic::new(Code::SingularityIndex, format!("singularity index {r} is outside 0..=3"))
                    .at_vertex(&v.name),
            ),
            _ => {}
        }
    }
    for (_, e) in g.edges() {
        if e.from == e.to {
            diags.push(
                Diagnostic::new(Code::SelfLoop, format!("edge is a loop at `{}`", g.vertex(e.from).name))
                    .at_edge(&e.name),
            );
        }
    }
    for class in g.oriented_cycle_classes() {
        let names: Vec<&str> = class.iter().map(|&v| g.vertex(v).name.as_str()).collect();
        diags.push(
            Diagnostic::new(Code::OrientedCycle, format!("oriented cycle through {}", names.join(", ")))
                .at_vertex(names[0]),
        );
    }
    if !g.is_connected() {
        diags.push(Diagnostic::new(Code::Disconnected, "underlying graph is not connected"));
    }
    diags
}

/// First Betti number `|E| - |V| + 1` of a connected graph.
pub fn cycle_rank(g: &LyapunovGraph) -> Result<usize, GraphError> {
    if g.vertex_count() == 0 {
        return Err(GraphError::Empty);
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    Ok(g.edge_count() + 1 - g.vertex_count())
}

pub fn vertex_residual(g: &LyapunovGraph, v: &str) -> Result<i64, GraphError> {
    Ok(g.stats(g.vertex_id(v)?).residual())
}

/// Poincaré–Hopf residual a vertex must have: `(-1)^r` for an index-`r`
/// singularity, 0 for periodic orbits and saddle sets. `None` for open ends.
pub fn required_residual(label: &VertexLabel) -> Option<i64> {
    match label {
        VertexLabel::Singularity(r) => Some(if r % 2 == 0 { 1 } else { -1 }),
        VertexLabel::OpenEnd => None,
        _ => Some(0),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceViolation {
    pub vertex: VertexId,
    pub actual: i64,
    pub required: i64,
}

/// Vertices whose residual differs from the Poincaré–Hopf requirement.
pub fn nsf_balance_check(g: &LyapunovGraph) -> Vec<BalanceViolation> {
    g.vertices()
        .filter_map(|(id, v)| {
            let required = required_residual(&v.label)?;
            let actual = g.stats(id).residual();
            (actual != required).then_some(BalanceViolation { vertex: id, actual, required })
        })
        .collect()
}

pub fn balance_diagnostics(g: &LyapunovGraph, violations: &[BalanceViolation]) -> Vec<Diagnostic> {
    violations
        .iter()
        .map(|b| {
            Diagnostic::new(Code::Balance, format!("residual {} but {} required", b.actual, b.required))
                .at_vertex(&g.vertex(b.vertex).name)
        })
        .collect()
}

/// Vertices reachable from `start` along oriented paths made only of
/// nonzero-weight edges (`start` included). `Backward` follows edges
/// against their orientation.
pub fn reachable_by_nonzero(g: &LyapunovGraph, start: VertexId, direction: Direction) -> Vec<VertexId> {
    let mut seen = vec![false; g.vertex_count()];
    seen[start.0] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for (_, e) in g.edges() {
            if e.weight == 0 {
                continue;
            }
            let next = match direction {
                Direction::Forward if e.from == v => e.to,
                Direction::Backward if e.to == v => e.from,
                _ => continue,
            };
            if !seen[next.0] {
                seen[next.0] = true;
                stack.push(next);
            }
        }
    }
    seen.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| VertexId(i)).collect()
}
