//! Abstract templates built from joining and splitting charts, and the
//! entrance/exit structure on the boundary of their thickening.

mod boundary;
mod enumerate;

pub use boundary::{thicken_boundary, BoundaryError};
pub use enumerate::{enumerate_small_templates, find_section5_candidates, SmallTemplates};

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diag::{Code, Diagnostic};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChartKind {
    /// Two stacked incoming strips merge along a branch line.
    Joining,
    /// One incoming strip splits into two side-by-side outgoing strips.
    Splitting,
}

impl ChartKind {
    pub fn in_ports(self) -> &'static [Port] {
        match self {
            ChartKind::Joining => &[Port::In1, Port::In2],
            ChartKind::Splitting => &[Port::In],
        }
    }

    pub fn out_ports(self) -> &'static [Port] {
        match self {
            ChartKind::Joining => &[Port::Out],
            ChartKind::Splitting => &[Port::Out1, Port::Out2],
        }
    }

    pub fn has_port(self, port: Port) -> bool {
        self.in_ports().contains(&port) || self.out_ports().contains(&port)
    }
}

/// Port vocabulary shared by both chart kinds. `In1` is the upper incoming
/// slab of a joining chart; `Out1` is the left outgoing slab of a splitting
/// chart (left with respect to the flow, top facing the thickness direction).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Port {
    In1,
    In2,
    Out,
    In,
    Out1,
    Out2,
}

impl Port {
    pub fn is_in(self) -> bool {
        matches!(self, Port::In1 | Port::In2 | Port::In)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Port::In1 => "in1",
            Port::In2 => "in2",
            Port::Out => "out",
            Port::In => "in",
            Port::Out1 => "out1",
            Port::Out2 => "out2",
        }
    }
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chart {
    pub name: String,
    pub kind: ChartKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PortRef {
    pub chart: usize,
    pub port: Port,
}

/// A strip glues an out-port to an in-port. With `twist` set the strip
/// carries a half twist: the receiving port sees top and bottom swapped and
/// left and right swapped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Strip {
    pub from: PortRef,
    pub to: PortRef,
    pub twist: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Template {
    pub charts: Vec<Chart>,
    pub strips: Vec<Strip>,
}

impl Template {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_chart(&mut self, name: impl Into<String>, kind: ChartKind) -> usize {
        self.charts.push(Chart { name: name.into(), kind });
        self.charts.len() - 1
    }

    pub fn add_strip(&mut self, from: (usize, Port), to: (usize, Port), twist: bool) {
        self.strips.push(Strip {
            from: PortRef { chart: from.0, port: from.1 },
            to: PortRef { chart: to.0, port: to.1 },
            twist,
        });
    }

    pub fn chart_index(&self) -> HashMap<&str, usize> {
        self.charts.iter().enumerate().map(|(i, c)| (c.name.as_str(), i)).collect()
    }

    pub fn count(&self, kind: ChartKind) -> usize {
        self.charts.iter().filter(|c| c.kind == kind).count()
    }

    /// Euler characteristic of the branched surface: it retracts onto the
    /// chart/strip graph.
    pub fn euler_char(&self) -> i64 {
        self.charts.len() as i64 - self.strips.len() as i64
    }

    /// Copy with one strip's twist flipped.
    pub fn with_twist_flipped(&self, strip: usize) -> Self {
        let mut t = self.clone();
        t.strips[strip].twist = !t.strips[strip].twist;
        t
    }

    fn port_label(&self, p: PortRef) -> String {
        match self.charts.get(p.chart) {
            Some(c) => format!("{}.{}", c.name, p.port),
            None => format!("#{}.{}", p.chart, p.port),
        }
    }
}

/// Lorenz template: a joining chart feeding a splitting chart whose two
/// branches return to the joining chart untwisted.
pub fn build_lorenz() -> Template {
    let mut t = Template::new();
    let j = t.add_chart("J", ChartKind::Joining);
    let s = t.add_chart("S", ChartKind::Splitting);
    t.add_strip((j, Port::Out), (s, Port::In), false);
    t.add_strip((s, Port::Out1), (j, Port::In1), false);
    t.add_strip((s, Port::Out2), (j, Port::In2), false);
    t
}

/// Empty iff every port is glued exactly once with the right orientation,
/// the chart kinds balance, and the chart/strip graph is connected.
pub fn validate_template(t: &Template) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    if t.charts.is_empty() {
        diags.push(Diagnostic::new(Code::EmptyTemplate, "template has no charts"));
        return diags;
    }
    let mut uses: HashMap<PortRef, usize> = HashMap::new();
    let mut usable = true;
    for (i, s) in t.strips.iter().enumerate() {
        let strip = format!("strip{i}");
        for (end, expect_in) in [(s.from, false), (s.to, true)] {
            let Some(chart) = t.charts.get(end.chart) else {
                diags.push(Diagnostic::new(Code::UnknownChart, format!("no chart #{}", end.chart)).at_edge(&strip));
                usable = false;
                continue;
            };
            if !chart.kind.has_port(end.port) {
                diags.push(
                    Diagnostic::new(
                        Code::PortKind,
                        format!("{} chart `{}` has no port {}", kind_name(chart.kind), chart.name, end.port),
                    )
                    .at_edge(&strip),
                );
                continue;
            }
            if end.port.is_in() != expect_in {
                let want = if expect_in { "an in-port" } else { "an out-port" };
                diags.push(
                    Diagnostic::new(Code::PortKind, format!("{} must be {want}", t.port_label(end))).at_edge(&strip),
                );
                continue;
            }
            *uses.entry(end).or_default() += 1;
        }
    }
    for (ci, chart) in t.charts.iter().enumerate() {
        for &port in chart.kind.in_ports().iter().chain(chart.kind.out_ports()) {
            let label = t.port_label(PortRef { chart: ci, port });
            match uses.get(&PortRef { chart: ci, port }).copied().unwrap_or(0) {
                0 => diags.push(Diagnostic::new(Code::DanglingPort, format!("port {label} is not glued"))),
                1 => {}
                n => diags.push(Diagnostic::new(Code::PortReused, format!("port {label} is glued {n} times"))),
            }
        }
    }
    let (joining, splitting) = (t.count(ChartKind::Joining), t.count(ChartKind::Splitting));
    if joining != splitting {
        diags.push(Diagnostic::new(
            Code::ChartBalance,
            format!("{joining} joining charts but {splitting} splitting charts"),
        ));
    }
    if usable && !chart_graph_connected(t) {
        diags.push(Diagnostic::new(Code::Disconnected, "chart/strip graph is not connected"));
    }
    diags
}

fn kind_name(kind: ChartKind) -> &'static str {
    match kind {
        ChartKind::Joining => "joining",
        ChartKind::Splitting => "splitting",
    }
}

fn chart_graph_connected(t: &Template) -> bool {
    let n = t.charts.len();
    let mut adj = vec![Vec::new(); n];
    for s in &t.strips {
        adj[s.from.chart].push(s.to.chart);
        adj[s.to.chart].push(s.from.chart);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(c) = stack.pop() {
        for &d in &adj[c] {
            if !seen[d] {
                seen[d] = true;
                stack.push(d);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetKind {
    Entrance,
    Exit,
}

/// One component of the entrance set or of the exit set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceComponent {
    pub kind: SetKind,
    pub euler_char: i64,
    /// Dividing curves bounding this component.
    pub boundary_circles: usize,
    /// Genus after capping every boundary circle with a disc.
    pub capped_genus: u32,
}

impl SurfaceComponent {
    /// Component of the given capped genus with `circles` boundary circles.
    pub fn capped(kind: SetKind, capped_genus: u32, circles: usize) -> Self {
        Self {
            kind,
            euler_char: 2 - 2 * i64::from(capped_genus) - circles as i64,
            boundary_circles: circles,
            capped_genus,
        }
    }
}

/// Which entrance and exit components a dividing curve separates, by index
/// into [`BoundaryReport::entrance`] and [`BoundaryReport::exit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSides {
    pub entrance: usize,
    pub exit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedSurface {
    pub euler_char: i64,
    pub genus: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryReport {
    pub entrance: Vec<SurfaceComponent>,
    pub exit: Vec<SurfaceComponent>,
    pub dividing_curves: usize,
    pub curves: Vec<CurveSides>,
    /// Entrance components of capped genus > 1, and of capped genus 0.
    pub s0: usize,
    pub s1: usize,
    /// Exit components of capped genus > 1, and of capped genus 0.
    pub t0: usize,
    pub t1: usize,
    pub total_boundary_euler: i64,
    /// Connected components of the whole boundary surface.
    pub closed_components: Vec<ClosedSurface>,
}

impl BoundaryReport {
    /// Report assembled from component data alone (no curve or closed
    /// surface information); used for hand-made fixtures.
    pub fn from_components(entrance: Vec<SurfaceComponent>, exit: Vec<SurfaceComponent>) -> Self {
        let bucket = |cs: &[SurfaceComponent]| {
            (cs.iter().filter(|c| c.capped_genus > 1).count(), cs.iter().filter(|c| c.capped_genus == 0).count())
        };
        let (s0, s1) = bucket(&entrance);
        let (t0, t1) = bucket(&exit);
        let total_boundary_euler = entrance.iter().chain(&exit).map(|c| c.euler_char).sum();
        let dividing_curves = entrance.iter().map(|c| c.boundary_circles).sum();
        Self {
            entrance,
            exit,
            dividing_curves,
            curves: Vec::new(),
            s0,
            s1,
            t0,
            t1,
            total_boundary_euler,
            closed_components: Vec::new(),
        }
    }

    fn excess(cs: &[SurfaceComponent]) -> i64 {
        cs.iter().filter(|c| c.capped_genus > 1).map(|c| i64::from(c.capped_genus) - 1).sum()
    }

    /// `sum of capped genera over entrance components of genus > 1, minus s0`.
    pub fn entrance_excess(&self) -> i64 {
        Self::excess(&self.entrance)
    }

    pub fn exit_excess(&self) -> i64 {
        Self::excess(&self.exit)
    }

    pub fn entrance_genera(&self) -> Vec<u32> {
        self.entrance.iter().map(|c| c.capped_genus).collect()
    }

    pub fn exit_genera(&self) -> Vec<u32> {
        self.exit.iter().map(|c| c.capped_genus).collect()
    }
}

/// `g(T)`: the larger of the entrance and exit excesses.
pub fn template_genus(report: &BoundaryReport) -> u32 {
    let g = report.entrance_excess().max(report.exit_excess()).max(0);
    u32::try_from(g).expect("genus fits in u32")
}

/// Both sides of the entrance/exit identity, evaluated literally:
/// `sum n+ - s0 - s1` over entrance components against the exit analogue.
pub fn lemma41_sides(report: &BoundaryReport) -> (i64, i64) {
    let lhs = report.entrance_excess() - report.s1 as i64;
    let rhs = report.exit_excess() - report.t1 as i64;
    (lhs, rhs)
}

pub fn check_lemma41(report: &BoundaryReport) -> bool {
    let (lhs, rhs) = lemma41_sides(report);
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(entrance: &[(u32, usize)], exit: &[(u32, usize)]) -> BoundaryReport {
        BoundaryReport::from_components(
            entrance.iter().map(|&(g, b)| SurfaceComponent::capped(SetKind::Entrance, g, b)).collect(),
            exit.iter().map(|&(g, b)| SurfaceComponent::capped(SetKind::Exit, g, b)).collect(),
        )
    }

    #[test]
    fn lorenz_is_well_formed() {
        let t = build_lorenz();
        assert_eq!((t.charts.len(), t.strips.len()), (2, 3));
        assert_eq!(t.euler_char(), -1);
        assert!(validate_template(&t).is_empty());
    }

    #[test]
    fn lonely_joining_chart() {
        let mut t = Template::new();
        t.add_chart("J", ChartKind::Joining);
        let codes: Vec<Code> = validate_template(&t).into_iter().map(|d| d.code).collect();
        assert_eq!(codes, vec![Code::DanglingPort, Code::DanglingPort, Code::DanglingPort, Code::ChartBalance]);
    }

    #[test]
    fn strip_into_out_port() {
        let mut t = Template::new();
        let j = t.add_chart("J", ChartKind::Joining);
        let s = t.add_chart("S", ChartKind::Splitting);
        t.add_strip((j, Port::Out), (s, Port::Out1), false);
        let diags = validate_template(&t);
        assert_eq!(diags[0].code, Code::PortKind);
        assert!(diags[0].message.contains("S.out1 must be an in-port"), "{}", diags[0].message);
    }

    #[test]
    fn wrong_vocabulary_and_reuse() {
        let mut t = build_lorenz();
        t.strips[0].to.port = Port::In1;
        let codes: Vec<Code> = validate_template(&t).into_iter().map(|d| d.code).collect();
        assert!(codes.contains(&Code::PortKind));
        let mut t = build_lorenz();
        t.strips[2].to.port = Port::In1;
        let codes: Vec<Code> = validate_template(&t).into_iter().map(|d| d.code).collect();
        assert_eq!(codes, vec![Code::PortReused, Code::DanglingPort]);
    }

    #[test]
    fn disconnected_pair_of_lorenz() {
        let mut t = build_lorenz();
        let j = t.add_chart("J2", ChartKind::Joining);
        let s = t.add_chart("S2", ChartKind::Splitting);
        t.add_strip((j, Port::Out), (s, Port::In), false);
        t.add_strip((s, Port::Out1), (j, Port::In1), false);
        t.add_strip((s, Port::Out2), (j, Port::In2), false);
        let codes: Vec<Code> = validate_template(&t).into_iter().map(|d| d.code).collect();
        assert_eq!(codes, vec![Code::Disconnected]);
    }

    #[test]
    fn genus_formula() {
        assert_eq!(template_genus(&report(&[(1, 1), (0, 3)], &[(1, 2)])), 0);
        assert_eq!(template_genus(&report(&[(2, 1), (2, 1)], &[(0, 2)])), 2);
        assert_eq!(template_genus(&report(&[(0, 1)], &[(3, 1)])), 2);
    }

    #[test]
    fn entrance_exit_identity() {
        assert!(check_lemma41(&report(&[(1, 1), (0, 3)], &[(0, 4)])));
        assert_eq!(lemma41_sides(&report(&[(1, 1), (0, 3)], &[(0, 4)])), (-1, -1));
        assert!(check_lemma41(&report(&[(0, 1)], &[(0, 1)])));
        let bad = report(&[(2, 1)], &[(0, 1)]);
        assert_eq!(lemma41_sides(&bad), (1, -1));
        assert!(!check_lemma41(&bad));
    }

    #[test]
    fn capped_component_euler() {
        let c = SurfaceComponent::capped(SetKind::Entrance, 1, 1);
        assert_eq!(c.euler_char, -1);
        let c = SurfaceComponent::capped(SetKind::Exit, 0, 4);
        assert_eq!(c.euler_char, -2);
    }
}
