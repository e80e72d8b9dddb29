//! Exhaustive enumeration of small closed templates up to isomorphism.
//!
//! Two templates are identified when one is obtained from the other by
//! renaming charts of the same kind and by turning charts over. Turning a
//! chart over is the half-turn about its flow axis: it swaps the two
//! incoming ports of a joining chart (or the two outgoing ports of a
//! splitting chart) and toggles the twist of every strip end at the chart.
//! Both moves are homeomorphisms of the thickened template preserving the
//! entrance/exit structure.
//!
//! Port numbering for `p` joining and `p` splitting charts: out-ports are
//! `J_a.out = a`, `S_b.out1 = p + 2b`, `S_b.out2 = p + 2b + 1`; in-ports are
//! `J_a.in1 = 2a`, `J_a.in2 = 2a + 1`, `S_b.in = 2p + b`. A template is a
//! bijection `out -> in` plus a twist bit per out-port; the representative
//! of each class is the lexicographically smallest bijection and, among the
//! twist masks it admits, the numerically smallest one.

use super::{thicken_boundary, ChartKind, Port, Template};

struct Symmetry {
    out_map: Vec<u8>,
    out_inv: Vec<u8>,
    in_map: Vec<u8>,
    flipped: Vec<bool>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        all.push(p.clone());
        if !next_permutation(&mut p) {
            return all;
        }
    }
}

fn next_permutation<T: Ord>(p: &mut [T]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn symmetries(pairs: usize) -> Vec<Symmetry> {
    let perms = permutations(pairs);
    let mut out = Vec::new();
    for pj in &perms {
        for ps in &perms {
            for flips in 0u32..1 << (2 * pairs) {
                let flipped: Vec<bool> = (0..2 * pairs).map(|c| flips >> c & 1 == 1).collect();
                let mut out_map = vec![0u8; 3 * pairs];
                let mut in_map = vec![0u8; 3 * pairs];
                for a in 0..pairs {
                    out_map[a] = pj[a] as u8;
                    for k in 0..2 {
                        in_map[2 * a + k] = (2 * pj[a] + (k ^ usize::from(flipped[a]))) as u8;
                    }
                }
                for b in 0..pairs {
                    for k in 0..2 {
                        out_map[pairs + 2 * b + k] = (pairs + 2 * ps[b] + (k ^ usize::from(flipped[pairs + b]))) as u8;
                    }
                    in_map[2 * pairs + b] = (2 * pairs + ps[b]) as u8;
                }
                let mut out_inv = vec![0u8; 3 * pairs];
                for (o, &m) in out_map.iter().enumerate() {
                    out_inv[m as usize] = o as u8;
                }
                out.push(Symmetry { out_map, out_inv, in_map, flipped });
            }
        }
    }
    out
}

fn out_chart(pairs: usize, o: usize) -> usize {
    if o < pairs {
        o
    } else {
        pairs + (o - pairs) / 2
    }
}

fn in_chart(pairs: usize, i: usize) -> usize {
    if i < 2 * pairs {
        i / 2
    } else {
        pairs + i - 2 * pairs
    }
}

fn connected(pairs: usize, matching: &[u8]) -> bool {
    let n = 2 * pairs;
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (o, &i) in matching.iter().enumerate() {
        let a = root(&mut parent, out_chart(pairs, o));
        let b = root(&mut parent, in_chart(pairs, i as usize));
        parent[a] = b;
    }
    let r = root(&mut parent, 0);
    (0..n).all(|c| root(&mut parent, c) == r)
}

/// Ordering of the image of `matching` under `g` against `matching`.
fn compare_image(g: &Symmetry, matching: &[u8]) -> std::cmp::Ordering {
    for (o2, &current) in matching.iter().enumerate() {
        let image = g.in_map[matching[g.out_inv[o2] as usize] as usize];
        match image.cmp(&current) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

fn twist_image(pairs: usize, g: &Symmetry, matching: &[u8], mask: u32) -> u32 {
    let mut image = 0;
    for (o, &i) in matching.iter().enumerate() {
        let bit = (mask >> o & 1 == 1) ^ g.flipped[out_chart(pairs, o)] ^ g.flipped[in_chart(pairs, i as usize)];
        if bit {
            image |= 1 << g.out_map[o];
        }
    }
    image
}

fn assemble(pairs: usize, matching: &[u8], mask: u32) -> Template {
    let mut t = Template::new();
    for a in 0..pairs {
        t.add_chart(format!("J{a}"), ChartKind::Joining);
    }
    for b in 0..pairs {
        t.add_chart(format!("S{b}"), ChartKind::Splitting);
    }
    let out_port = |o: usize| -> (usize, Port) {
        if o < pairs {
            (o, Port::Out)
        } else {
            let port = if (o - pairs).is_multiple_of(2) { Port::Out1 } else { Port::Out2 };
            (out_chart(pairs, o), port)
        }
    };
    let in_port = |i: usize| -> (usize, Port) {
        if i < 2 * pairs {
            (i / 2, if i.is_multiple_of(2) { Port::In1 } else { Port::In2 })
        } else {
            (in_chart(pairs, i), Port::In)
        }
    };
    for (o, &i) in matching.iter().enumerate() {
        t.add_strip(out_port(o), in_port(i as usize), mask >> o & 1 == 1);
    }
    t
}

/// Lazy, restartable stream of representatives; see [`enumerate_small_templates`].
pub struct SmallTemplates {
    max_pairs: usize,
    pairs: usize,
    group: Vec<Symmetry>,
    matching: Vec<u8>,
    matching_live: bool,
    stabilizer: Vec<usize>,
    next_mask: u32,
}

impl SmallTemplates {
    fn start_pairs(&mut self, pairs: usize) {
        self.pairs = pairs;
        self.group = symmetries(pairs);
        self.matching = (0..3 * pairs as u8).collect();
        self.matching_live = true;
        self.stabilizer.clear();
        self.next_mask = u32::MAX;
    }

    /// Advance to the next canonical connected matching (the current one
    /// included when it has not been examined yet).
    fn seek_matching(&mut self, mut fresh: bool) -> bool {
        loop {
            if !fresh && !next_permutation(&mut self.matching) {
                return false;
            }
            fresh = false;
            if !connected(self.pairs, &self.matching) {
                continue;
            }
            let mut stabilizer = Vec::new();
            let canonical = self.group.iter().enumerate().all(|(gi, g)| match compare_image(g, &self.matching) {
                std::cmp::Ordering::Less => false,
                std::cmp::Ordering::Equal => {
                    stabilizer.push(gi);
                    true
                }
                std::cmp::Ordering::Greater => true,
            });
            if canonical {
                self.stabilizer = stabilizer;
                self.next_mask = 0;
                return true;
            }
        }
    }
}

impl Iterator for SmallTemplates {
    type Item = Template;

    fn next(&mut self) -> Option<Template> {
        loop {
            if self.pairs == 0 || !self.matching_live {
                if self.pairs >= self.max_pairs {
                    return None;
                }
                let next = self.pairs + 1;
                self.start_pairs(next);
                if !self.seek_matching(true) {
                    self.matching_live = false;
                }
                continue;
            }
            let limit = 1u32 << (3 * self.pairs);
            while self.next_mask < limit {
                let mask = self.next_mask;
                self.next_mask += 1;
                let pairs = self.pairs;
                let minimal = self
                    .stabilizer
                    .iter()
                    .all(|&gi| twist_image(pairs, &self.group[gi], &self.matching, mask) >= mask);
                if minimal {
                    return Some(assemble(pairs, &self.matching, mask));
                }
            }
            if !self.seek_matching(false) {
                self.matching_live = false;
            }
        }
    }
}

/// Every connected closed template with at most `max_charts` charts, one
/// per isomorphism class (chart renaming and turning charts over), in a
/// fixed order. `max_charts / 2` joining/splitting pairs are used; an odd
/// chart budget cannot be filled. The symmetry group has
/// `(p!)^2 * 4^p` elements for `p` pairs, so `max_charts = 8` is accepted
/// but takes hours.
pub fn enumerate_small_templates(max_charts: usize) -> SmallTemplates {
    assert!(max_charts <= 8, "enumeration is limited to 8 charts");
    SmallTemplates {
        max_pairs: max_charts / 2,
        pairs: 0,
        group: Vec::new(),
        matching: Vec::new(),
        matching_live: false,
        stabilizer: Vec::new(),
        next_mask: 0,
    }
}

/// Templates whose thickened boundary has one entrance component of capped
/// genus 1 bounded by one dividing curve, one of capped genus 0 bounded by
/// three, and a single exit component of capped genus 0 meeting all four
/// curves.
pub fn find_section5_candidates(max_charts: usize) -> Vec<Template> {
    enumerate_small_templates(max_charts)
        .filter(|t| {
            let Ok(r) = thicken_boundary(t) else { return false };
            if r.exit.len() != 1 || r.exit[0].capped_genus != 0 || r.entrance.len() != 2 || r.dividing_curves != 4 {
                return false;
            }
            let mut shape: Vec<(u32, usize)> = r.entrance.iter().map(|c| (c.capped_genus, c.boundary_circles)).collect();
            shape.sort_unstable();
            shape == [(0, 3), (1, 1)]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::template::validate_template;

    #[test]
    fn odd_budget_and_single_chart_are_empty() {
        assert_eq!(enumerate_small_templates(0).count(), 0);
        assert_eq!(enumerate_small_templates(1).count(), 0);
    }

    #[test]
    fn two_chart_classes() {
        let all: Vec<Template> = enumerate_small_templates(2).collect();
        // 48 labelled templates, group of order 4; only turning both charts
        // over fixes anything (the 2 matchings with J.out -> S.in, twists
        // symmetric in out1/out2): (48 + 2 * 4) / 4
        assert_eq!(all.len(), 14);
        assert!(all.iter().all(|t| validate_template(t).is_empty()));
        assert_eq!(all, enumerate_small_templates(3).collect::<Vec<_>>());
    }

    #[test]
    fn stream_is_restartable() {
        let a: Vec<Template> = enumerate_small_templates(4).take(50).collect();
        let b: Vec<Template> = enumerate_small_templates(4).take(50).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn group_sizes() {
        assert_eq!(symmetries(1).len(), 4);
        assert_eq!(symmetries(2).len(), 64);
        assert_eq!(symmetries(3).len(), 2304);
    }
}
