//! Independent boundary computation for thickened templates.
//!
//! Each chart is a polycube in a 3x3x3 box with flow along +x, left = +y
//! and top = +z; ports are unit squares in the planes x = 0 and x = 3.
//! The boundary of every chart is enumerated square by square, port squares
//! are glued across strips by matching lattice corners, and the resulting
//! square complex is classified by brute force.

use std::collections::{BTreeMap, HashMap};

use nsflow::template::{ChartKind, Port, Template};

type Point = [i32; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    Entrance,
    Exit,
}

struct Shape {
    cubes: &'static [Point],
    /// Port squares by their low corner `(x plane, y0, z0)`.
    ports: &'static [(Port, Point)],
    /// Class of x-normal squares that are not ports.
    x_faces: Class,
}

const JOINING: Shape = Shape {
    cubes: &[[0, 0, 0], [0, 0, 2], [1, 0, 0], [1, 0, 1], [1, 0, 2], [2, 0, 1]],
    ports: &[(Port::In1, [0, 0, 2]), (Port::In2, [0, 0, 0]), (Port::Out, [3, 0, 1])],
    x_faces: Class::Entrance,
};

const SPLITTING: Shape = Shape {
    cubes: &[[0, 1, 0], [1, 0, 0], [1, 1, 0], [1, 2, 0], [2, 0, 0], [2, 2, 0]],
    ports: &[(Port::In, [0, 1, 0]), (Port::Out1, [3, 2, 0]), (Port::Out2, [3, 0, 0])],
    x_faces: Class::Exit,
};

fn shape(kind: ChartKind) -> &'static Shape {
    match kind {
        ChartKind::Joining => &JOINING,
        ChartKind::Splitting => &SPLITTING,
    }
}

/// Corners TL, TR, BL, BR of the port square with low corner `p`.
fn port_corners(p: Point) -> [Point; 4] {
    let [x, y, z] = p;
    [[x, y + 1, z + 1], [x, y, z + 1], [x, y + 1, z], [x, y, z]]
}

struct Square {
    corners: [Point; 4],
    class: Option<Class>,
    port: Option<Port>,
}

/// Boundary squares of one chart, corners in cyclic order.
fn squares(kind: ChartKind) -> Vec<Square> {
    let s = shape(kind);
    let filled = |p: Point| s.cubes.contains(&p);
    let mut out = Vec::new();
    for &c in s.cubes {
        for axis in 0..3 {
            for dir in [-1, 1] {
                let mut n = c;
                n[axis] += dir;
                if filled(n) {
                    continue;
                }
                let mut base = c;
                if dir == 1 {
                    base[axis] += 1;
                }
                let (u, v) = ((axis + 1) % 3, (axis + 2) % 3);
                let mut corners = [base; 4];
                corners[1][u] += 1;
                corners[2][u] += 1;
                corners[2][v] += 1;
                corners[3][v] += 1;
                let port = if axis == 0 {
                    let low = base;
                    s.ports.iter().find(|(_, p)| *p == low).map(|&(port, _)| port)
                } else {
                    None
                };
                let class = match (port, axis) {
                    (Some(_), _) => None,
                    (None, 0) => Some(s.x_faces),
                    (None, 1) => Some(Class::Exit),
                    (None, _) => Some(Class::Entrance),
                };
                out.push(Square { corners, class, port });
            }
        }
    }
    out
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a] = b;
        }
    }
}

/// What the oracle reports; components sorted for comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoxelReport {
    /// `(euler characteristic, boundary circles)` per entrance component.
    pub entrance: Vec<(i64, usize)>,
    pub exit: Vec<(i64, usize)>,
    pub dividing_curves: usize,
    /// Euler characteristic per connected component of the whole boundary.
    pub closed: Vec<i64>,
}

pub fn voxel_boundary(t: &Template) -> VoxelReport {
    // global vertex ids: (chart, lattice point)
    let mut vid: HashMap<(usize, Point), usize> = HashMap::new();
    let mut faces: Vec<(usize, [usize; 4], Class)> = Vec::new();
    let mut ports: HashMap<(usize, Port), [usize; 4]> = HashMap::new();
    let intern = |vid: &mut HashMap<(usize, Point), usize>, key| {
        let n = vid.len();
        *vid.entry(key).or_insert(n)
    };
    for (ci, chart) in t.charts.iter().enumerate() {
        for sq in squares(chart.kind) {
            let ids = sq.corners.map(|p| intern(&mut vid, (ci, p)));
            match (sq.port, sq.class) {
                (Some(port), _) => {
                    let &(_, low) = shape(chart.kind).ports.iter().find(|(p, _)| *p == port).unwrap();
                    ports.insert((ci, port), port_corners(low).map(|p| intern(&mut vid, (ci, p))));
                }
                (None, Some(class)) => faces.push((ci, ids, class)),
                (None, None) => unreachable!(),
            }
        }
    }
    let mut vdsu = Dsu::new(vid.len());
    for s in &t.strips {
        let a = ports[&(s.from.chart, s.from.port)];
        let b = ports[&(s.to.chart, s.to.port)];
        for q in 0..4 {
            let r = if s.twist { 3 - q } else { q };
            vdsu.union(a[q], b[r]);
        }
    }
    let faces: Vec<([usize; 4], Class)> =
        faces.into_iter().map(|(_, ids, class)| (ids.map(|v| vdsu.find(v)), class)).collect();

    // edges by vertex-class pair; port gluing makes equal pairs coincide
    let mut edge_faces: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (fi, (ids, _)) in faces.iter().enumerate() {
        for i in 0..4 {
            let (a, b) = (ids[i], ids[(i + 1) % 4]);
            assert_ne!(a, b, "degenerate square");
            edge_faces.entry((a.min(b), a.max(b))).or_default().push(fi);
        }
    }
    for (e, fs) in &edge_faces {
        assert_eq!(fs.len(), 2, "edge {e:?} is not a surface edge");
    }

    let nv = vid.len();
    let components = |same_set_only: bool| -> Vec<Vec<usize>> {
        let mut d = Dsu::new(faces.len());
        for fs in edge_faces.values() {
            if !same_set_only || faces[fs[0]].1 == faces[fs[1]].1 {
                d.union(fs[0], fs[1]);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for f in 0..faces.len() {
            groups.entry(d.find(f)).or_default().push(f);
        }
        groups.into_values().collect()
    };
    let euler = |group: &[usize]| -> i64 {
        let mut vs = vec![false; nv];
        let mut es = std::collections::BTreeSet::new();
        for &f in group {
            let ids = faces[f].0;
            for i in 0..4 {
                vs[ids[i]] = true;
                let (a, b) = (ids[i], ids[(i + 1) % 4]);
                es.insert((a.min(b), a.max(b)));
            }
        }
        vs.iter().filter(|&&v| v).count() as i64 - es.len() as i64 + group.len() as i64
    };

    // dividing curves: components of the graph of mixed edges
    let mixed: Vec<(usize, usize)> =
        edge_faces.iter().filter(|(_, fs)| faces[fs[0]].1 != faces[fs[1]].1).map(|(&e, _)| e).collect();
    let mut cd = Dsu::new(nv);
    let mut degree = vec![0usize; nv];
    for &(a, b) in &mixed {
        cd.union(a, b);
        degree[a] += 1;
        degree[b] += 1;
    }
    assert!(degree.iter().all(|&d| d == 0 || d == 2), "dividing curves branch");
    let mut curve_of_vertex = HashMap::new();
    for &(a, _) in &mixed {
        let n = curve_of_vertex.len();
        curve_of_vertex.entry(cd.find(a)).or_insert(n);
    }
    let dividing_curves = curve_of_vertex.len();

    let mut entrance = Vec::new();
    let mut exit = Vec::new();
    for group in components(true) {
        let class = faces[group[0]].1;
        let mut circles = std::collections::BTreeSet::new();
        for &(a, b) in &mixed {
            let fs = &edge_faces[&(a, b)];
            if fs.iter().any(|f| group.contains(f)) {
                circles.insert(curve_of_vertex[&cd.find(a)]);
            }
        }
        let entry = (euler(&group), circles.len());
        match class {
            Class::Entrance => entrance.push(entry),
            Class::Exit => exit.push(entry),
        }
    }
    entrance.sort_unstable();
    exit.sort_unstable();
    let mut closed: Vec<i64> = components(false).iter().map(|g| euler(g)).collect();
    closed.sort_unstable();
    VoxelReport { entrance, exit, dividing_curves, closed }
}
