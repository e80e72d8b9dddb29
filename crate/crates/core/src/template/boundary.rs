//! Boundary of the thickened template as a polygonal cell complex.
//!
//! Each chart thickens to a ball whose boundary sphere is cut into port
//! rectangles, entrance faces (the thickness direction contracts) and exit
//! faces (the width direction expands). Strips glue an out-port rectangle
//! of one chart to an in-port rectangle of another, rotating it by a half
//! turn when twisted. Deleting the glued port rectangles leaves the closed
//! surface `∂T̄`; its entrance and exit faces meet along the dividing curves.
//!
//! Faces are listed counterclockwise as seen from outside the chart, so an
//! orientable gluing traverses every interior edge once in each direction.

use thiserror::Error;

use super::{
    validate_template, BoundaryReport, ChartKind, ClosedSurface, CurveSides, Port, SetKind, SurfaceComponent,
    Template,
};
use crate::diag::Diagnostic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundaryError {
    #[error("template is not valid ({} problems)", .0.len())]
    Invalid(Vec<Diagnostic>),
    #[error("boundary edge glued {uses} times, expected 2")]
    EdgeMultiplicity { uses: usize },
    #[error("boundary surface is not orientable")]
    NonOrientable,
    #[error("boundary component has odd capped Euler characteristic {0}")]
    OddEuler(i64),
    #[error("dividing curves branch at a vertex of degree {0}")]
    BranchedCurve(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FaceClass {
    Port(Port),
    Set(SetKind),
}

use FaceClass::{Port as P, Set as S};
use SetKind::{Entrance as E, Exit as X};

const CORNERS: usize = 14;

// Port corners are numbered TL, TR, BL, BR (top-left, top-right,
// bottom-left, bottom-right) looking along the flow.
const TL: usize = 0;
const TR: usize = 1;
const BL: usize = 2;
const BR: usize = 3;

/// Corner inventory of one chart kind.
struct Inventory {
    ports: [(Port, usize); 3],
    faces: &'static [(FaceClass, &'static [usize])],
}

// Joining chart: in1 0..4, in2 4..8, out 8..12, branch line ends 12 (left)
// and 13 (right). The notch between the incoming slabs closes at the
// branch line, which lies inside the entrance set.
const JOINING: Inventory = Inventory {
    ports: [(Port::In1, 0), (Port::In2, 4), (Port::Out, 8)],
    faces: &[
        (P(Port::In1), &[0, 2, 3, 1]),
        (P(Port::In2), &[4, 6, 7, 5]),
        (P(Port::Out), &[8, 9, 11, 10]),
        (S(E), &[1, 9, 8, 0]),              // outer top
        (S(E), &[7, 6, 10, 11]),            // outer bottom
        (S(E), &[3, 2, 12, 13]),            // notch, upper slab
        (S(E), &[5, 13, 12, 4]),            // notch, lower slab
        (S(X), &[0, 8, 10, 6, 4, 12, 2]),   // left side
        (S(X), &[1, 3, 13, 5, 7, 11, 9]),   // right side
    ],
};

// Splitting chart: in 0..4, out1 (left) 4..8, out2 (right) 8..12, split
// line ends 12 (top) and 13 (bottom). The gap between the outgoing slabs
// opens at the split line, which lies inside the exit set.
const SPLITTING: Inventory = Inventory {
    ports: [(Port::In, 0), (Port::Out1, 4), (Port::Out2, 8)],
    faces: &[
        (P(Port::In), &[0, 2, 3, 1]),
        (P(Port::Out1), &[4, 5, 7, 6]),
        (P(Port::Out2), &[8, 9, 11, 10]),
        (S(E), &[0, 1, 9, 8, 12, 5, 4]),    // top
        (S(E), &[2, 6, 7, 13, 10, 11, 3]),  // bottom
        (S(X), &[2, 0, 4, 6]),              // outer left
        (S(X), &[1, 3, 11, 9]),             // outer right
        (S(X), &[13, 7, 5, 12]),            // gap, left branch
        (S(X), &[10, 13, 12, 8]),           // gap, right branch
    ],
};

fn inventory(kind: ChartKind) -> &'static Inventory {
    match kind {
        ChartKind::Joining => &JOINING,
        ChartKind::Splitting => &SPLITTING,
    }
}

fn port_base(kind: ChartKind, port: Port) -> usize {
    inventory(kind).ports.iter().find(|(p, _)| *p == port).map(|&(_, b)| b).expect("validated port")
}

/// Corner of the receiving port that a sending corner lands on.
fn twisted(corner: usize, twist: bool) -> usize {
    if twist {
        3 - corner // TL <-> BR, TR <-> BL
    } else {
        corner
    }
}

/// Union-find with a parity bit relative to the root.
struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl ParityUnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), parity: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        let p = self.parent[x];
        if p == x {
            return (x, false);
        }
        let (root, up) = self.find(p);
        self.parent[x] = root;
        self.parity[x] ^= up;
        (root, self.parity[x])
    }

    /// Record that `a` and `b` are equal up to `flip`. Returns false on a
    /// parity contradiction.
    fn union(&mut self, a: usize, b: usize, flip: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == flip;
        }
        self.parent[ra] = rb;
        self.parity[ra] = pa ^ pb ^ flip;
        true
    }
}

struct UnionFind(ParityUnionFind);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self(ParityUnionFind::new(n))
    }

    fn find(&mut self, x: usize) -> usize {
        self.0.find(x).0
    }

    fn union(&mut self, a: usize, b: usize) {
        self.0.union(a, b, false);
    }
}

/// Local edge table of a chart kind: `(min corner, max corner)` pairs.
fn local_edges(kind: ChartKind) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (_, cycle) in inventory(kind).faces {
        for (i, &a) in cycle.iter().enumerate() {
            let b = cycle[(i + 1) % cycle.len()];
            let key = (a.min(b), a.max(b));
            if !edges.contains(&key) {
                edges.push(key);
            }
        }
    }
    edges
}

/// Trace `∂T̄` and summarize its entrance/exit decomposition.
pub fn thicken_boundary(t: &Template) -> Result<BoundaryReport, BoundaryError> {
    let diags = validate_template(t);
    if !diags.is_empty() {
        return Err(BoundaryError::Invalid(diags));
    }

    let edge_tables = [local_edges(ChartKind::Joining), local_edges(ChartKind::Splitting)];
    let table = |kind: ChartKind| match kind {
        ChartKind::Joining => &edge_tables[0],
        ChartKind::Splitting => &edge_tables[1],
    };
    let mut edge_offset = Vec::with_capacity(t.charts.len());
    let mut total_edges = 0;
    for c in &t.charts {
        edge_offset.push(total_edges);
        total_edges += table(c.kind).len();
    }
    let local_edge = |chart: usize, a: usize, b: usize| -> (usize, bool) {
        let key = (a.min(b), a.max(b));
        let idx = table(t.charts[chart].kind).iter().position(|&e| e == key).expect("edge in inventory");
        // flipped when traversed against the stored (min, max) direction
        (edge_offset[chart] + idx, a > b)
    };

    // Glue corners and port edges through the strips.
    let mut corners = UnionFind::new(t.charts.len() * CORNERS);
    let mut edges = ParityUnionFind::new(total_edges);
    for s in &t.strips {
        let from_base = port_base(t.charts[s.from.chart].kind, s.from.port);
        let to_base = port_base(t.charts[s.to.chart].kind, s.to.port);
        for q in [TL, TR, BL, BR] {
            corners.union(s.from.chart * CORNERS + from_base + q, s.to.chart * CORNERS + to_base + twisted(q, s.twist));
        }
        for (qa, qb) in [(TL, TR), (TR, BR), (BR, BL), (BL, TL)] {
            let (ea, fa) = local_edge(s.from.chart, from_base + qa, from_base + qb);
            let (eb, fb) = local_edge(
                s.to.chart,
                to_base + twisted(qa, s.twist),
                to_base + twisted(qb, s.twist),
            );
            if !edges.union(ea, eb, fa ^ fb) {
                return Err(BoundaryError::NonOrientable);
            }
        }
    }

    // Surface faces with their oriented edge classes.
    struct Face {
        kind: SetKind,
        corners: Vec<usize>,
        edges: Vec<(usize, bool)>,
    }
    let mut faces: Vec<Face> = Vec::new();
    for (ci, c) in t.charts.iter().enumerate() {
        for (class, cycle) in inventory(c.kind).faces {
            let FaceClass::Set(kind) = *class else { continue };
            let mut face = Face { kind, corners: Vec::new(), edges: Vec::new() };
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                let (e, flip) = local_edge(ci, a, b);
                let (root, up) = edges.find(e);
                face.edges.push((root, flip ^ up));
                face.corners.push(corners.find(ci * CORNERS + a));
            }
            faces.push(face);
        }
    }

    // Every edge class must border exactly two faces, traversed oppositely.
    let mut incidence: Vec<Vec<(usize, bool)>> = vec![Vec::new(); total_edges];
    for (fi, f) in faces.iter().enumerate() {
        for &(e, dir) in &f.edges {
            incidence[e].push((fi, dir));
        }
    }
    for uses in incidence.iter().filter(|u| !u.is_empty()) {
        if uses.len() != 2 {
            return Err(BoundaryError::EdgeMultiplicity { uses: uses.len() });
        }
        if uses[0].1 == uses[1].1 {
            return Err(BoundaryError::NonOrientable);
        }
    }

    let euler = |members: &[usize]| -> i64 {
        let mut vs: Vec<usize> = members.iter().flat_map(|&f| faces[f].corners.iter().copied()).collect();
        let mut es: Vec<usize> = members.iter().flat_map(|&f| faces[f].edges.iter().map(|&(e, _)| e)).collect();
        vs.sort_unstable();
        vs.dedup();
        es.sort_unstable();
        es.dedup();
        vs.len() as i64 - es.len() as i64 + members.len() as i64
    };

    // Components: whole surface, and entrance/exit pieces.
    let mut whole = UnionFind::new(faces.len());
    let mut pieces = UnionFind::new(faces.len());
    let mut dividing: Vec<(usize, usize, usize)> = Vec::new(); // (edge, entrance face, exit face)
    for (e, uses) in incidence.iter().enumerate() {
        let [(f, _), (g, _)] = uses[..] else { continue };
        whole.union(f, g);
        if faces[f].kind == faces[g].kind {
            pieces.union(f, g);
        } else if faces[f].kind == SetKind::Entrance {
            dividing.push((e, f, g));
        } else {
            dividing.push((e, g, f));
        }
    }
    let group = |uf: &mut UnionFind, filter: &dyn Fn(&Face) -> bool| -> Vec<Vec<usize>> {
        let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
        for (fi, f) in faces.iter().enumerate() {
            if !filter(f) {
                continue;
            }
            let root = uf.find(fi);
            match groups.iter_mut().find(|(r, _)| *r == root) {
                Some((_, members)) => members.push(fi),
                None => groups.push((root, vec![fi])),
            }
        }
        groups.into_iter().map(|(_, m)| m).collect()
    };
    let closed = group(&mut whole, &|_| true);
    let entrance = group(&mut pieces, &|f| f.kind == SetKind::Entrance);
    let exit = group(&mut pieces, &|f| f.kind == SetKind::Exit);

    // Dividing curves: the dividing edges form disjoint circles.
    let edge_ends = |e: usize| -> (usize, usize) {
        let (f, _) = incidence[e][0];
        let pos = faces[f].edges.iter().position(|&(x, _)| x == e).expect("incident edge");
        let n = faces[f].corners.len();
        (faces[f].corners[pos], faces[f].corners[(pos + 1) % n])
    };
    let mut degree = std::collections::HashMap::new();
    let mut curve_uf = UnionFind::new(t.charts.len() * CORNERS);
    for &(e, _, _) in &dividing {
        let (a, b) = edge_ends(e);
        *degree.entry(a).or_insert(0usize) += 1;
        *degree.entry(b).or_insert(0usize) += 1;
        curve_uf.union(a, b);
    }
    if let Some(&d) = degree.values().find(|&&d| d != 2) {
        return Err(BoundaryError::BranchedCurve(d));
    }
    let component_of = |groups: &[Vec<usize>], face: usize| groups.iter().position(|g| g.contains(&face)).expect("face grouped");
    let mut curve_roots: Vec<usize> = Vec::new();
    let mut curves: Vec<CurveSides> = Vec::new();
    for &(e, fe, fx) in &dividing {
        let root = curve_uf.find(edge_ends(e).0);
        if !curve_roots.contains(&root) {
            curve_roots.push(root);
            curves.push(CurveSides { entrance: component_of(&entrance, fe), exit: component_of(&exit, fx) });
        }
    }

    let summarize = |groups: &[Vec<usize>], kind: SetKind| -> Result<Vec<SurfaceComponent>, BoundaryError> {
        groups
            .iter()
            .enumerate()
            .map(|(gi, members)| {
                let euler_char = euler(members);
                let circles = curves
                    .iter()
                    .filter(|c| match kind {
                        SetKind::Entrance => c.entrance == gi,
                        SetKind::Exit => c.exit == gi,
                    })
                    .count();
                let capped = euler_char + circles as i64;
                if capped % 2 != 0 || capped > 2 {
                    return Err(BoundaryError::OddEuler(capped));
                }
                let capped_genus = u32::try_from((2 - capped) / 2).expect("nonnegative genus");
                Ok(SurfaceComponent { kind, euler_char, boundary_circles: circles, capped_genus })
            })
            .collect()
    };
    let entrance = summarize(&entrance, SetKind::Entrance)?;
    let exit = summarize(&exit, SetKind::Exit)?;

    let mut closed_components = Vec::with_capacity(closed.len());
    for members in &closed {
        let euler_char = euler(members);
        if euler_char % 2 != 0 || euler_char > 2 {
            return Err(BoundaryError::OddEuler(euler_char));
        }
        let genus = u32::try_from((2 - euler_char) / 2).expect("nonnegative genus");
        closed_components.push(ClosedSurface { euler_char, genus });
    }

    let mut report = BoundaryReport::from_components(entrance, exit);
    report.dividing_curves = curves.len();
    report.curves = curves;
    report.total_boundary_euler = closed_components.iter().map(|c| c.euler_char).sum();
    report.closed_components = closed_components;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::template::{build_lorenz, check_lemma41, template_genus};

    /// A single chart with its ports left open must be an oriented sphere.
    #[test]
    fn chart_inventories_are_oriented_spheres() {
        for kind in [ChartKind::Joining, ChartKind::Splitting] {
            let inv = inventory(kind);
            let edges = local_edges(kind);
            let mut seen = std::collections::HashMap::new();
            for (_, cycle) in inv.faces {
                for (i, &a) in cycle.iter().enumerate() {
                    let b = cycle[(i + 1) % cycle.len()];
                    assert!(seen.insert((a, b), ()).is_none(), "{kind:?}: {a}->{b} traversed twice");
                }
            }
            for &(a, b) in &edges {
                assert!(seen.contains_key(&(a, b)) && seen.contains_key(&(b, a)), "{kind:?}: edge {a}-{b}");
            }
            let chi = CORNERS as i64 - edges.len() as i64 + inv.faces.len() as i64;
            assert_eq!(chi, 2, "{kind:?}");
        }
    }

    #[test]
    fn lorenz_boundary() {
        let r = thicken_boundary(&build_lorenz()).unwrap();
        assert_eq!(r.total_boundary_euler, -2);
        assert_eq!(r.closed_components, vec![ClosedSurface { euler_char: -2, genus: 2 }]);
        assert_eq!(template_genus(&r), 0);
        assert!(check_lemma41(&r));
    }

    #[test]
    fn twisting_keeps_total_euler() {
        let mut t = build_lorenz();
        t.strips[1].twist = true;
        t.strips[2].twist = true;
        assert_eq!(thicken_boundary(&t).unwrap().total_boundary_euler, -2);
    }

    #[test]
    fn invalid_template_is_rejected() {
        let mut t = build_lorenz();
        t.strips.pop();
        assert!(matches!(thicken_boundary(&t), Err(BoundaryError::Invalid(_))));
    }

    #[test]
    fn parity_union_find_detects_contradiction() {
        let mut uf = ParityUnionFind::new(3);
        assert!(uf.union(0, 1, true));
        assert!(uf.union(1, 2, true));
        assert!(uf.union(0, 2, false));
        assert!(!uf.union(0, 2, true));
    }
}
