use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Code {
    EmptyGraph,
    Disconnected,
    SelfLoop,
    OrientedCycle,
    SaddleMatrix,
    SingularityIndex,
    OpenEnd,
    Balance,
    NotTree,
    TerminalDegree,
    SinkLabel,
    SourceLabel,
    SaddleEdgeCount,
    NoCertificate,
    CycleRank,
    DanglingPort,
    PortKind,
    PortReused,
    ChartBalance,
    UnknownChart,
    EmptyTemplate,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::EmptyGraph => "empty-graph",
            Code::Disconnected => "disconnected",
            Code::SelfLoop => "self-loop",
            Code::OrientedCycle => "oriented-cycle",
            Code::SaddleMatrix => "saddle-matrix",
            Code::SingularityIndex => "singularity-index",
            Code::OpenEnd => "open-end",
            Code::Balance => "balance",
            Code::NotTree => "not-tree",
            Code::TerminalDegree => "terminal-degree",
            Code::SinkLabel => "sink-label",
            Code::SourceLabel => "source-label",
            Code::SaddleEdgeCount => "saddle-edge-count",
            Code::NoCertificate => "no-certificate",
            Code::CycleRank => "cycle-rank",
            Code::DanglingPort => "dangling-port",
            Code::PortKind => "port-kind",
            Code::PortReused => "port-reused",
            Code::ChartBalance => "chart-balance",
            Code::UnknownChart => "unknown-chart",
            Code::EmptyTemplate => "empty-template",
        }
    }
}

/// A located finding from one of the validators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub code: Code,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub vertex: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub edge: Option<String>,
    pub message: String,
}

impl Diagnostic {
    pub fn new(code: Code, message: impl Into<String>) -> Self {
        Self { code, vertex: None, edge: None, message: message.into() }
    }

    pub fn at_vertex(mut self, vertex: impl Into<String>) -> Self {
        self.vertex = Some(vertex.into());
        self
    }

    pub fn at_edge(mut self, edge: impl Into<String>) -> Self {
        self.edge = Some(edge.into());
        self
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.code.as_str())?;
        if let Some(v) = &self.vertex {
            write!(f, " vertex {v}")?;
        }
        if let Some(e) = &self.edge {
            write!(f, " edge {e}")?;
        }
        write!(f, ": {}", self.message)
    }
}
