//! Oracles and generators shared by the integration test targets.
#![allow(dead_code)]

pub mod voxel;

use nsflow::gf2::{Gf2Matrix, IntMatrix};
use nsflow::lyapgraph::{LyapunovGraph, VertexId, VertexLabel};
use rand::seq::SliceRandom;
use rand::Rng;

/// Kernel dimension by counting solutions of `(I - B) x = 0` over all
/// `2^m` vectors.
pub fn brute_kernel_dim(b: &Gf2Matrix) -> usize {
    let m = b.dim();
    let rows = b.to_rows();
    let mut solutions = 0u64;
    for x in 0u32..1 << m {
        let null = (0..m).all(|i| {
            let mut acc = 0u8;
            for j in 0..m {
                let entry = rows[i][j] ^ u8::from(i == j);
                acc ^= entry & (x >> j & 1) as u8;
            }
            acc == 0
        });
        if null {
            solutions += 1;
        }
    }
    solutions.trailing_zeros() as usize
}

pub fn gf2_from_mask(m: usize, mask: u64) -> Gf2Matrix {
    let rows: Vec<Vec<bool>> = (0..m).map(|i| (0..m).map(|j| mask >> (i * m + j) & 1 == 1).collect()).collect();
    Gf2Matrix::from_rows(&rows).unwrap()
}

/// Oriented cycle detection by enumerating simple paths from every edge's
/// head back to its tail.
pub fn brute_has_cycle(g: &LyapunovGraph) -> bool {
    fn reaches(g: &LyapunovGraph, from: VertexId, target: VertexId, visited: &mut Vec<bool>) -> bool {
        if from == target {
            return true;
        }
        visited[from.0] = true;
        let next: Vec<VertexId> = g.outgoing(from).map(|(_, e)| e.to).collect();
        let found = next.into_iter().any(|n| !visited[n.0] && reaches(g, n, target, visited));
        visited[from.0] = false;
        found
    }
    g.edges().any(|(_, e)| {
        let mut visited = vec![false; g.vertex_count()];
        reaches(g, e.to, e.from, &mut visited)
    })
}

/// Edges outside a breadth-first spanning forest.
pub fn spanning_tree_rank(g: &LyapunovGraph) -> usize {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut tree_edges = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([VertexId(start)]);
        while let Some(v) = queue.pop_front() {
            let nbrs: Vec<VertexId> =
                g.outgoing(v).map(|(_, e)| e.to).chain(g.incoming(v).map(|(_, e)| e.from)).collect();
            for w in nbrs {
                if !seen[w.0] {
                    seen[w.0] = true;
                    tree_edges += 1;
                    queue.push_back(w);
                }
            }
        }
    }
    g.edge_count() - tree_edges
}

fn unit_saddle() -> VertexLabel {
    VertexLabel::Saddle(IntMatrix::from_rows(vec![vec![1]]).unwrap())
}

fn forward_path(g: &LyapunovGraph, from: VertexId, to: VertexId) -> Option<Vec<nsflow::lyapgraph::EdgeId>> {
    let mut prev = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[from.0] = true;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = Vec::new();
            let mut cur = to;
            while let Some(e) = prev[cur.0] {
                path.push(e);
                cur = g.edge(e).from;
            }
            path.reverse();
            return Some(path);
        }
        for (id, e) in g.outgoing(v) {
            if !seen[e.to.0] {
                seen[e.to.0] = true;
                prev[e.to.0] = Some(id);
                queue.push_back(e.to);
            }
        }
    }
    None
}

/// Random connected, acyclic, balanced nonsingular graph with at most
/// `max_vertices` vertices and at least one weight-1 edge into a
/// degree-1 attractor.
///
/// Grown from `repeller -(1)-> attractor` by balance-preserving moves:
/// subdividing an edge with a saddle, hanging a pendant attractor or
/// repeller on a saddle, and adding a weight-0 chord `u -> v` between
/// saddles while raising the weights along an existing path `u ~> v`.
pub fn random_nsf_graph<R: Rng>(rng: &mut R, max_vertices: usize) -> LyapunovGraph {
    assert!(max_vertices >= 2);
    let mut g = LyapunovGraph::new();
    g.add_vertex("r0", VertexLabel::RepellerOrbit).unwrap();
    g.add_vertex("a0", VertexLabel::AttractorOrbit).unwrap();
    g.connect("e0", "r0", "a0", 1).unwrap();
    let mut fresh = 1usize;
    let steps = rng.gen_range(0..3 * max_vertices);
    for _ in 0..steps {
        let saddles: Vec<VertexId> = g.vertices().filter(|(_, v)| v.label.is_saddle()).map(|(id, _)| id).collect();
        match rng.gen_range(0..4) {
            0 if g.vertex_count() < max_vertices => {
                let edges: Vec<_> = g.edges().map(|(id, _)| id).collect();
                let e = *edges.choose(rng).unwrap();
                let (from, to, w, name) = {
                    let e = g.edge(e);
                    (e.from, e.to, e.weight, e.name.clone())
                };
                let s = format!("s{fresh}");
                fresh += 1;
                let mut next = g.without_edges(&[e]);
                let sid = next.add_vertex(s.as_str(), unit_saddle()).unwrap();
                next.add_edge(format!("{name}a"), from, sid, w).unwrap();
                next.add_edge(format!("{name}b"), sid, to, w).unwrap();
                g = next;
            }
            1 | 2 if g.vertex_count() < max_vertices && !saddles.is_empty() => {
                let s = *saddles.choose(rng).unwrap();
                let name = format!("p{fresh}");
                let e = format!("q{fresh}");
                fresh += 1;
                if rng.gen_bool(0.5) {
                    let a = g.add_vertex(name, VertexLabel::AttractorOrbit).unwrap();
                    g.add_edge(e, s, a, 1).unwrap();
                } else {
                    let r = g.add_vertex(name, VertexLabel::RepellerOrbit).unwrap();
                    g.add_edge(e, r, s, 1).unwrap();
                }
            }
            3 if saddles.len() >= 2 => {
                let u = *saddles.choose(rng).unwrap();
                let v = *saddles.choose(rng).unwrap();
                if u == v {
                    continue;
                }
                let Some(path) = forward_path(&g, u, v) else { continue };
                let mut next = g.clone();
                for e in path {
                    let w = next.edge(e).weight;
                    next = next.with_weight(e, w + 1);
                }
                next.add_edge(format!("z{fresh}"), u, v, 0).unwrap();
                fresh += 1;
                g = next;
            }
            _ => {}
        }
    }
    g
}
