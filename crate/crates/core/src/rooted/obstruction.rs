//! Obstruction decompositions of quadruples: sides `U1`, `U2` and middle
//! parts `A_1..A_k`, their defining conditions, and an exhaustive search.

use serde::{Deserialize, Serialize};

use super::Quadruple;
use crate::graph::{normalized, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ObstructionType {
    I,
    II,
    III,
    IV,
}

/// Vertex sets of the sides and middle parts. Edges of `G - A` are assigned
/// to any part containing both ends; [`ObstructionDecomposition::check`]
/// verifies that such an assignment exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionDecomposition {
    pub kind: ObstructionType,
    pub side1: Vec<Vertex>,
    pub side2: Vec<Vertex>,
    pub middle: Vec<Vec<Vertex>>,
}

fn count_in(set: &[Vertex], other: &[Vertex]) -> usize {
    set.iter().filter(|v| other.contains(v)).count()
}

impl ObstructionDecomposition {
    /// Checks every defining condition and the type condition for the
    /// stored order of the middle parts.
    pub fn check(&self, q: &Quadruple) -> Result<(), String> {
        let g = &q.g;
        let a = &q.a_set[..];
        let k = self.middle.len();
        if !(2..=4).contains(&k) {
            return Err(format!("{k} middle parts"));
        }
        let parts = std::iter::once(&self.side1).chain(std::iter::once(&self.side2)).chain(self.middle.iter());
        for p in parts {
            if p.iter().any(|&v| v >= g.n()) || normalized(p).len() != p.len() {
                return Err("part lists invalid or repeated vertices".into());
            }
        }
        let mut in_mid = vec![usize::MAX; g.n()];
        for (i, m) in self.middle.iter().enumerate() {
            for &v in m {
                if in_mid[v] != usize::MAX {
                    return Err(format!("middle parts overlap at {v}"));
                }
                in_mid[v] = i;
            }
        }
        let s1 = g.mask(&self.side1);
        let s2 = g.mask(&self.side2);
        let in_a = g.mask(a);
        if let Some(v) = g.vertices().find(|&v| !s1[v] && !s2[v] && in_mid[v] == usize::MAX) {
            return Err(format!("vertex {v} is not covered"));
        }
        for (x, y) in g.edges() {
            if in_a[x] || in_a[y] {
                continue;
            }
            let shared = (s1[x] && s1[y]) || (s2[x] && s2[y]) || (in_mid[x] != usize::MAX && in_mid[x] == in_mid[y]);
            if !shared {
                return Err(format!("edge {x}-{y} of G - A lies in no part"));
            }
        }
        if let Some(v) = g.vertices().find(|&v| s1[v] && s2[v] && !in_a[v]) {
            return Err(format!("sides share {v}, which is not in A"));
        }
        if let Some(&v) = a.iter().find(|&&v| in_mid[v] == usize::MAX) {
            return Err(format!("terminal {v} is in no middle part"));
        }
        if !s1[q.u1] || in_mid[q.u1] != usize::MAX {
            return Err("u1 must be in U1 outside the middle parts".into());
        }
        if !s2[q.u2] || in_mid[q.u2] != usize::MAX {
            return Err("u2 must be in U2 outside the middle parts".into());
        }
        for (i, m) in self.middle.iter().enumerate() {
            let na = m.iter().filter(|&&v| in_a[v]).count();
            let nu = m.iter().filter(|&&v| s1[v] || s2[v]).count();
            if na == 0 {
                return Err(format!("middle part {i} has no terminal"));
            }
            if nu < na || nu > na + 1 {
                return Err(format!("middle part {i}: {na} terminals but {nu} side vertices"));
            }
            if m.len() >= 2 {
                for &v in m {
                    if in_a[v] && (s1[v] || s2[v]) {
                        return Err(format!("terminal {v} of middle part {i} lies on a side"));
                    }
                    if in_a[v] {
                        if let Some(&w) = g.neighbors(v).iter().find(|&&w| in_mid[w] != i) {
                            return Err(format!("neighbour {w} of terminal {v} leaves middle part {i}"));
                        }
                    }
                }
            }
        }
        if !self.type_holds(q) {
            return Err(format!("type {:?} conditions fail", self.kind));
        }
        Ok(())
    }

    fn type_holds(&self, q: &Quadruple) -> bool {
        let a = &q.a_set[..];
        let ta = |i: usize| count_in(&self.middle[i], a);
        let u = |j: usize, i: usize| {
            let side = if j == 1 { &self.side1 } else { &self.side2 };
            count_in(side, &self.middle[i])
        };
        let k = self.middle.len();
        match self.kind {
            ObstructionType::I => {
                k == 3
                    && ta(0) == 1
                    && ta(1) == 1
                    && ta(2) == 2
                    && (1..=2).all(|j| (0..3).all(|i| (j, i) == (1, 2) || u(j, i) == 1))
                    && u(1, 2) == 2
            }
            ObstructionType::II => {
                k == 2 && ta(0) == 1 && ta(1) == 3 && u(1, 0) == 1 && u(2, 0) == 1 && u(1, 1) == 2 && u(2, 1) == 2
            }
            ObstructionType::III => {
                k == 2 && ta(0) == 2 && ta(1) == 2 && u(1, 0) == 1 && u(2, 1) == 1 && u(1, 1) == 2 && u(2, 0) == 2
            }
            ObstructionType::IV => k == 4 && (0..4).all(|i| ta(i) == 1 && u(1, i) == 1 && u(2, i) == 1),
        }
    }
}

/// Terminal groupings `(type, groups)`, groups listed in the type's order.
fn groupings(a: &[Vertex; 4]) -> Vec<(ObstructionType, Vec<Vec<Vertex>>)> {
    let mut out = Vec::new();
    for pair in crate::combinatorics::subsets(a, 2) {
        let rest: Vec<Vertex> = a.iter().copied().filter(|x| !pair.contains(x)).collect();
        out.push((ObstructionType::I, vec![vec![rest[0]], vec![rest[1]], pair.clone()]));
        out.push((ObstructionType::III, vec![pair.clone(), rest.clone()]));
    }
    for &s in a {
        let rest: Vec<Vertex> = a.iter().copied().filter(|&x| x != s).collect();
        out.push((ObstructionType::II, vec![vec![s], rest]));
    }
    out.push((ObstructionType::IV, a.iter().map(|&x| vec![x]).collect()));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Label {
    u1: bool,
    u2: bool,
    mid: Option<usize>,
}

/// Exhaustive search for an obstruction of type I, II, III or IV.
pub fn find_obstruction(q: &Quadruple) -> Option<ObstructionDecomposition> {
    let g = &q.g;
    let in_a = g.mask(&q.a_set);
    // Non-terminal, non-root vertices in BFS order from u1 so that edge
    // constraints prune early.
    let mut order: Vec<Vertex> = Vec::new();
    let mut seen = vec![false; g.n()];
    let mut queue = std::collections::VecDeque::from([q.u1, q.u2]);
    seen[q.u1] = true;
    seen[q.u2] = true;
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
        if v != q.u1 && v != q.u2 && !in_a[v] {
            order.push(v);
        }
    }
    order.extend(g.vertices().filter(|&v| !seen[v] && !in_a[v]));
    for (kind, groups) in groupings(&q.a_set) {
        let k = groups.len();
        let mut labels: Vec<Option<Label>> = vec![None; g.n()];
        labels[q.u1] = Some(Label { u1: true, u2: false, mid: None });
        labels[q.u2] = Some(Label { u1: false, u2: true, mid: None });
        let mut forced_mid = vec![None; g.n()];
        for (i, grp) in groups.iter().enumerate() {
            for &a in grp {
                if grp.len() >= 2 {
                    for &w in g.neighbors(a) {
                        forced_mid[w] = Some(i);
                    }
                }
            }
        }
        if [q.u1, q.u2].iter().any(|&u| forced_mid[u].is_some()) {
            continue;
        }
        let mut options = Vec::new();
        options.push(Label { u1: true, u2: false, mid: None });
        options.push(Label { u1: false, u2: true, mid: None });
        for i in 0..k {
            options.push(Label { u1: false, u2: false, mid: Some(i) });
            options.push(Label { u1: true, u2: false, mid: Some(i) });
            options.push(Label { u1: false, u2: true, mid: Some(i) });
        }
        let ctx = Ctx { q, kind, groups: &groups, order: &order, options: &options, forced_mid: &forced_mid, in_a: &in_a };
        if let Some(d) = ctx.assign(0, &mut labels) {
            return Some(d);
        }
    }
    None
}

struct Ctx<'a> {
    q: &'a Quadruple,
    kind: ObstructionType,
    groups: &'a [Vec<Vertex>],
    order: &'a [Vertex],
    options: &'a [Label],
    forced_mid: &'a [Option<usize>],
    in_a: &'a [bool],
}

impl Ctx<'_> {
    fn consistent(&self, v: Vertex, l: Label, labels: &[Option<Label>]) -> bool {
        if let Some(i) = self.forced_mid[v] {
            if l.mid != Some(i) {
                return false;
            }
        }
        let g = &self.q.g;
        g.neighbors(v).iter().all(|&w| {
            if self.in_a[w] {
                return true;
            }
            match labels[w] {
                None => true,
                Some(m) => (l.u1 && m.u1) || (l.u2 && m.u2) || (l.mid.is_some() && l.mid == m.mid),
            }
        })
    }

    fn assign(&self, idx: usize, labels: &mut Vec<Option<Label>>) -> Option<ObstructionDecomposition> {
        if idx == self.order.len() {
            return self.finish(labels);
        }
        let v = self.order[idx];
        for &l in self.options {
            if !self.consistent(v, l, labels) {
                continue;
            }
            labels[v] = Some(l);
            if self.attachments_ok(labels) {
                if let Some(d) = self.assign(idx + 1, labels) {
                    return Some(d);
                }
            }
            labels[v] = None;
        }
        None
    }

    /// Side vertices of each middle part may not exceed its terminal count
    /// plus one.
    fn attachments_ok(&self, labels: &[Option<Label>]) -> bool {
        let mut count = vec![0usize; self.groups.len()];
        for l in labels.iter().flatten() {
            if let Some(i) = l.mid {
                if l.u1 || l.u2 {
                    count[i] += 1;
                }
            }
        }
        count.iter().zip(self.groups).all(|(&c, grp)| c <= grp.len() + 1)
    }

    fn finish(&self, labels: &[Option<Label>]) -> Option<ObstructionDecomposition> {
        let g = &self.q.g;
        let mut middle: Vec<Vec<Vertex>> = self.groups.to_vec();
        for v in g.vertices() {
            if let Some(Label { mid: Some(i), .. }) = labels[v] {
                if !self.in_a[v] {
                    middle[i].push(v);
                }
            }
        }
        // Terminals alone in their part choose a side; all others stay off
        // the sides.
        let free: Vec<Vertex> = self
            .groups
            .iter()
            .enumerate()
            .filter(|(i, grp)| grp.len() == 1 && middle[*i].len() == 1)
            .map(|(_, grp)| grp[0])
            .collect();
        let choices = [(true, false), (false, true), (true, true)];
        let total = 3usize.pow(free.len() as u32);
        for code in 0..total {
            let mut side1: Vec<Vertex> = Vec::new();
            let mut side2: Vec<Vertex> = Vec::new();
            for v in g.vertices() {
                if let Some(l) = labels[v] {
                    if !self.in_a[v] {
                        if l.u1 {
                            side1.push(v);
                        }
                        if l.u2 {
                            side2.push(v);
                        }
                    }
                }
            }
            let mut c = code;
            for &a in &free {
                let (x, y) = choices[c % 3];
                c /= 3;
                if x {
                    side1.push(a);
                }
                if y {
                    side2.push(a);
                }
            }
            side1.sort_unstable();
            side2.sort_unstable();
            let mut mids = middle.clone();
            for m in &mut mids {
                m.sort_unstable();
            }
            let d = ObstructionDecomposition { kind: self.kind, side1, side2, middle: mids };
            if d.check(self.q).is_ok() {
                return Some(d);
            }
        }
        None
    }
}
