//! JSON documents for graphs and templates. Everything is addressed by id,
//! never by position, so edits to a file do not renumber references.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::IntMatrix;
use crate::lyapgraph::{LyapunovGraph, VertexLabel};
use crate::template::{ChartKind, Port, Template};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    /// Not JSON, or JSON of the wrong shape.
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    /// Well-formed JSON violating a document invariant; `path` locates the
    /// offending value, e.g. `vertices[3].label.matrix`.
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
}

impl DocError {
    fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        DocError::Schema { path: path.into(), message: message.into() }
    }
}

impl From<serde_json::Error> for DocError {
    fn from(e: serde_json::Error) -> Self {
        let full = e.to_string();
        // serde_json appends " at line L column C"; the position is kept separately
        let message = full.rsplit_once(" at line ").map_or(full.as_str(), |(m, _)| m).to_owned();
        DocError::Syntax { line: e.line(), column: e.column(), message }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelKind {
    Attractor,
    Repeller,
    Saddle,
    Singularity,
    /// Free end of a graph on a manifold with boundary.
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelDoc {
    pub kind: LabelKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub id: String,
    pub label: LabelDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub from: String,
    pub to: String,
    pub weight: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
}

fn label_from_doc(label: &LabelDoc, path: &str) -> Result<VertexLabel, DocError> {
    let kind = label.kind;
    match (kind, &label.matrix) {
        (LabelKind::Saddle, None) => return Err(DocError::schema(format!("{path}.matrix"), "saddle label needs a matrix")),
        (LabelKind::Saddle, Some(_)) => {}
        (_, Some(_)) => return Err(DocError::schema(format!("{path}.matrix"), "only saddle labels carry a matrix")),
        _ => {}
    }
    match (kind, label.index) {
        (LabelKind::Singularity, None) => {
            return Err(DocError::schema(format!("{path}.index"), "singularity label needs an index"))
        }
        (LabelKind::Singularity, Some(i)) if i > 3 => {
            return Err(DocError::schema(format!("{path}.index"), format!("index {i} is outside 0..=3")))
        }
        (LabelKind::Singularity, Some(_)) => {}
        (_, Some(_)) => return Err(DocError::schema(format!("{path}.index"), "only singularity labels carry an index")),
        _ => {}
    }
    Ok(match kind {
        LabelKind::Attractor => VertexLabel::AttractorOrbit,
        LabelKind::Repeller => VertexLabel::RepellerOrbit,
        LabelKind::Boundary => VertexLabel::OpenEnd,
        LabelKind::Singularity => VertexLabel::Singularity(label.index.expect("checked above")),
        LabelKind::Saddle => {
            let rows = label.matrix.clone().expect("checked above");
            let m = IntMatrix::from_rows(rows).map_err(|e| DocError::schema(format!("{path}.matrix"), e.to_string()))?;
            VertexLabel::Saddle(m)
        }
    })
}

fn label_to_doc(label: &VertexLabel) -> LabelDoc {
    let plain = |kind| LabelDoc { kind, matrix: None, index: None };
    match label {
        VertexLabel::AttractorOrbit => plain(LabelKind::Attractor),
        VertexLabel::RepellerOrbit => plain(LabelKind::Repeller),
        VertexLabel::OpenEnd => plain(LabelKind::Boundary),
        VertexLabel::Singularity(r) => LabelDoc { index: Some(*r), ..plain(LabelKind::Singularity) },
        VertexLabel::Saddle(m) => LabelDoc { matrix: Some(m.rows()), ..plain(LabelKind::Saddle) },
    }
}

impl GraphDocument {
    pub fn parse(text: &str) -> Result<Self, DocError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_graph(g: &LyapunovGraph) -> Self {
        GraphDocument {
            vertices: g.vertices().map(|(_, v)| VertexDoc { id: v.name.clone(), label: label_to_doc(&v.label) }).collect(),
            edges: g
                .edges()
                .map(|(_, e)| EdgeDoc {
                    id: e.name.clone(),
                    from: g.vertex(e.from).name.clone(),
                    to: g.vertex(e.to).name.clone(),
                    weight: e.weight,
                })
                .collect(),
        }
    }

    /// Checks every document invariant and builds the graph.
    pub fn to_graph(&self) -> Result<LyapunovGraph, DocError> {
        let mut g = LyapunovGraph::new();
        for (i, v) in self.vertices.iter().enumerate() {
            let path = format!("vertices[{i}]");
            let label = label_from_doc(&v.label, &format!("{path}.label"))?;
            g.add_vertex(v.id.as_str(), label).map_err(|e| DocError::schema(format!("{path}.id"), e.to_string()))?;
        }
        for (i, e) in self.edges.iter().enumerate() {
            let path = format!("edges[{i}]");
            let from = g.vertex_id(&e.from).map_err(|err| DocError::schema(format!("{path}.from"), err.to_string()))?;
            let to = g.vertex_id(&e.to).map_err(|err| DocError::schema(format!("{path}.to"), err.to_string()))?;
            g.add_edge(e.id.as_str(), from, to, e.weight)
                .map_err(|err| DocError::schema(format!("{path}.id"), err.to_string()))?;
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDoc {
    pub id: String,
    pub kind: ChartKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StripDoc {
    pub from: (String, Port),
    pub to: (String, Port),
    pub twist: u8,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemplateDocument {
    pub charts: Vec<ChartDoc>,
    pub strips: Vec<StripDoc>,
}

impl TemplateDocument {
    pub fn parse(text: &str) -> Result<Self, DocError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_template(t: &Template) -> Self {
        let end = |chart: usize, port: Port| (t.charts[chart].name.clone(), port);
        TemplateDocument {
            charts: t.charts.iter().map(|c| ChartDoc { id: c.name.clone(), kind: c.kind }).collect(),
            strips: t
                .strips
                .iter()
                .map(|s| StripDoc {
                    from: end(s.from.chart, s.from.port),
                    to: end(s.to.chart, s.to.port),
                    twist: u8::from(s.twist),
                })
                .collect(),
        }
    }

    /// Resolves chart ids. Port/kind mismatches and dangling ports are left
    /// to [`crate::template::validate_template`].
    pub fn to_template(&self) -> Result<Template, DocError> {
        let mut t = Template::new();
        let mut seen = HashSet::new();
        for (i, c) in self.charts.iter().enumerate() {
            if !seen.insert(c.id.as_str()) {
                return Err(DocError::schema(format!("charts[{i}].id"), format!("duplicate chart id `{}`", c.id)));
            }
            t.add_chart(c.id.as_str(), c.kind);
        }
        let index = t.chart_index().into_iter().map(|(k, v)| (k.to_owned(), v)).collect::<std::collections::HashMap<_, _>>();
        for (i, s) in self.strips.iter().enumerate() {
            let resolve = |end: &(String, Port), field: &str| {
                index
                    .get(&end.0)
                    .map(|&c| (c, end.1))
                    .ok_or_else(|| DocError::schema(format!("strips[{i}].{field}"), format!("unknown chart `{}`", end.0)))
            };
            let from = resolve(&s.from, "from")?;
            let to = resolve(&s.to, "to")?;
            let twist = match s.twist {
                0 => false,
                1 => true,
                other => return Err(DocError::schema(format!("strips[{i}].twist"), format!("twist must be 0 or 1, got {other}"))),
            };
            t.add_strip(from, to, twist);
        }
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }
}

pub fn parse_graph(text: &str) -> Result<LyapunovGraph, DocError> {
    GraphDocument::parse(text)?.to_graph()
}

pub fn emit_graph(g: &LyapunovGraph) -> String {
    GraphDocument::from_graph(g).to_json()
}

pub fn parse_template(text: &str) -> Result<Template, DocError> {
    TemplateDocument::parse(text)?.to_template()
}

pub fn emit_template(t: &Template) -> String {
    TemplateDocument::from_template(t).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_lemma34, build_section5};
    use crate::template::build_lorenz;

    #[test]
    fn graph_round_trip() {
        for g in [build_lemma34(2).unwrap(), build_section5().g, build_section5().l] {
            let text = emit_graph(&g);
            let back = parse_graph(&text).unwrap();
            assert_eq!(emit_graph(&back), text);
            assert_eq!(GraphDocument::from_graph(&back), GraphDocument::parse(&text).unwrap());
        }
    }

    #[test]
    fn template_round_trip() {
        let t = build_lorenz().with_twist_flipped(1);
        assert_eq!(parse_template(&emit_template(&t)).unwrap(), t);
    }

    #[test]
    fn syntax_errors_are_located() {
        let err = GraphDocument::parse("{\n  \"vertices\": [,]\n}").unwrap_err();
        assert!(matches!(err, DocError::Syntax { line: 2, .. }), "{err:?}");
        let err = GraphDocument::parse(r#"{"vertices": [], "edges": [], "extra": 1}"#).unwrap_err();
        assert!(matches!(err, DocError::Syntax { .. }));
    }

    #[test]
    fn schema_violations() {
        let cases = [
            (r#"{"vertices":[{"id":"a","label":{"kind":"saddle"}}],"edges":[]}"#, "vertices[0].label.matrix"),
            (r#"{"vertices":[{"id":"a","label":{"kind":"attractor","index":0}}],"edges":[]}"#, "vertices[0].label.index"),
            (r#"{"vertices":[{"id":"a","label":{"kind":"singularity","index":4}}],"edges":[]}"#, "vertices[0].label.index"),
            (r#"{"vertices":[{"id":"a","label":{"kind":"saddle","matrix":[[1,1]]}}],"edges":[]}"#, "vertices[0].label.matrix"),
            (
                r#"{"vertices":[{"id":"a","label":{"kind":"attractor"}},{"id":"a","label":{"kind":"attractor"}}],"edges":[]}"#,
                "vertices[1].id",
            ),
            (r#"{"vertices":[{"id":"a","label":{"kind":"attractor"}}],"edges":[{"id":"e","from":"b","to":"a","weight":1}]}"#, "edges[0].from"),
        ];
        for (text, want) in cases {
            match parse_graph(text) {
                Err(DocError::Schema { path, .. }) => assert_eq!(path, want),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn template_schema_violations() {
        let text = r#"{"charts":[{"id":"J","kind":"joining"}],"strips":[{"from":["J","out"],"to":["K","in"],"twist":0}]}"#;
        assert!(matches!(parse_template(text), Err(DocError::Schema { ref path, .. }) if path == "strips[0].to"));
        let text = r#"{"charts":[{"id":"J","kind":"joining"}],"strips":[{"from":["J","out"],"to":["J","in1"],"twist":2}]}"#;
        assert!(matches!(parse_template(text), Err(DocError::Schema { ref path, .. }) if path == "strips[0].twist"));
        let text = r#"{"charts":[{"id":"J","kind":"joining"}],"strips":[{"from":["J","sideways"],"to":["J","in1"],"twist":0}]}"#;
        assert!(matches!(parse_template(text), Err(DocError::Syntax { .. })));
    }
}
