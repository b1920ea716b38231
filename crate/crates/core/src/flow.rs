//! Unit vertex-capacity flow on a split network (`v_in -> v_out`).
//!
//! Augmentation is BFS over arcs in insertion order, and arcs are inserted in
//! ascending vertex order, so results are deterministic.

use std::collections::VecDeque;

use crate::graph::{Graph, Vertex};

pub(crate) const UNBOUNDED: i32 = 1 << 20;

#[derive(Debug, Clone)]
pub(crate) struct VertexFlow {
    n: usize,
    arcs_of: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i32>,
    orig: Vec<i32>,
    value: i32,
}

/// Per-vertex role in a flow problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Role {
    /// Ordinary vertex with capacity one.
    Inner,
    /// Not usable at all.
    Blocked,
    /// Usable any number of times (e.g. the start of a fan).
    Free,
}

#[derive(Debug, Clone)]
pub(crate) struct FlowSpec {
    pub role: Vec<Role>,
    /// Vertices that paths may leave but never enter.
    pub no_enter: Vec<bool>,
    /// Vertices that paths may enter but never leave (except to the sink).
    pub no_leave: Vec<bool>,
    /// `(vertex, capacity)` arcs from the super source into `v_out`.
    pub sources: Vec<(Vertex, i32)>,
    /// `(vertex, capacity)` arcs from `v_out` into the super sink.
    pub sinks: Vec<(Vertex, i32)>,
}

impl FlowSpec {
    pub fn new(n: usize) -> Self {
        FlowSpec {
            role: vec![Role::Inner; n],
            no_enter: vec![false; n],
            no_leave: vec![false; n],
            sources: Vec::new(),
            sinks: Vec::new(),
        }
    }

    pub fn block(&mut self, vs: &[Vertex]) -> &mut Self {
        for &v in vs {
            self.role[v] = Role::Blocked;
        }
        self
    }

    /// A single start vertex with unbounded use that cannot be re-entered.
    pub fn source(&mut self, v: Vertex, cap: i32) -> &mut Self {
        self.role[v] = Role::Free;
        self.no_enter[v] = true;
        self.sources.push((v, cap));
        self
    }

    /// A terminal that ends paths (each use consumes its own capacity).
    pub fn terminal(&mut self, v: Vertex, cap: i32) -> &mut Self {
        self.no_leave[v] = true;
        self.sinks.push((v, cap));
        self
    }
}

impl VertexFlow {
    fn source_node(&self) -> usize {
        2 * self.n
    }

    fn sink_node(&self) -> usize {
        2 * self.n + 1
    }

    pub fn build(g: &Graph, spec: &FlowSpec) -> Self {
        let n = g.n();
        let mut f = VertexFlow {
            n,
            arcs_of: vec![Vec::new(); 2 * n + 2],
            to: Vec::new(),
            cap: Vec::new(),
            orig: Vec::new(),
            value: 0,
        };
        let (s, t) = (f.source_node(), f.sink_node());
        for &(v, c) in &spec.sources {
            f.add_arc(s, 2 * v + 1, c);
        }
        for v in g.vertices() {
            let c = match spec.role[v] {
                Role::Blocked => continue,
                Role::Inner => 1,
                Role::Free => UNBOUNDED,
            };
            f.add_arc(2 * v, 2 * v + 1, c);
            if spec.no_leave[v] {
                continue;
            }
            for &w in g.neighbors(v) {
                if spec.role[w] == Role::Blocked || spec.no_enter[w] {
                    continue;
                }
                f.add_arc(2 * v + 1, 2 * w, UNBOUNDED);
            }
        }
        for &(v, c) in &spec.sinks {
            if spec.role[v] != Role::Blocked {
                f.add_arc(2 * v + 1, t, c);
            }
        }
        f
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: i32) {
        let id = self.to.len();
        self.to.push(to);
        self.cap.push(cap);
        self.orig.push(cap);
        self.arcs_of[from].push(id);
        self.to.push(from);
        self.cap.push(0);
        self.orig.push(0);
        self.arcs_of[to].push(id + 1);
    }

    /// Sets the capacity of the sink arc leaving `v` (used to open terminals
    /// in phases). Only valid before that arc carries flow.
    pub fn set_sink_capacity(&mut self, v: Vertex, cap: i32) {
        let t = self.sink_node();
        for &a in &self.arcs_of[2 * v + 1] {
            if self.to[a] == t && a % 2 == 0 {
                let used = self.orig[a] - self.cap[a];
                self.orig[a] = cap;
                self.cap[a] = cap - used;
            }
        }
    }

    fn augment_once(&mut self) -> bool {
        let (s, t) = (self.source_node(), self.sink_node());
        let mut prev = vec![usize::MAX; self.arcs_of.len()];
        let mut seen = vec![false; self.arcs_of.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if x == t {
                break;
            }
            for &a in &self.arcs_of[x] {
                let y = self.to[a];
                if self.cap[a] > 0 && !seen[y] {
                    seen[y] = true;
                    prev[y] = a;
                    queue.push_back(y);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut bottleneck = i32::MAX;
        let mut x = t;
        while x != s {
            let a = prev[x];
            bottleneck = bottleneck.min(self.cap[a]);
            x = self.to[a ^ 1];
        }
        let push = bottleneck.min(1);
        let mut x = t;
        while x != s {
            let a = prev[x];
            self.cap[a] -= push;
            self.cap[a ^ 1] += push;
            x = self.to[a ^ 1];
        }
        self.value += push;
        true
    }

    /// Augments one unit at a time until the flow reaches `limit` or no
    /// augmenting path remains. Returns the flow value.
    pub fn run(&mut self, limit: i32) -> i32 {
        while self.value < limit && self.augment_once() {}
        self.value
    }

    /// Vertices of a minimum cut, valid once `run` has stalled below its
    /// limit. Returns `None` when the residual cut is not finite.
    pub fn min_cut(&self) -> Option<Vec<Vertex>> {
        let s = self.source_node();
        let mut seen = vec![false; self.arcs_of.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &a in &self.arcs_of[x] {
                let y = self.to[a];
                if self.cap[a] > 0 && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        let mut cut = Vec::new();
        for x in 0..self.arcs_of.len() {
            if !seen[x] {
                continue;
            }
            for &a in &self.arcs_of[x] {
                if a % 2 == 1 || seen[self.to[a]] || self.orig[a] <= 0 {
                    continue;
                }
                if self.orig[a] >= UNBOUNDED {
                    return None;
                }
                if x >= 2 * self.n {
                    // A bounded source arc: not a vertex cut.
                    return None;
                }
                cut.push(x / 2);
            }
        }
        cut.sort_unstable();
        cut.dedup();
        Some(cut)
    }

    /// Decomposes the current flow into vertex paths from a source vertex to
    /// a terminal, in the order their first arcs were inserted.
    pub fn paths(&self) -> Vec<Vec<Vertex>> {
        let (s, t) = (self.source_node(), self.sink_node());
        let mut remaining: Vec<i32> = (0..self.to.len())
            .map(|a| if a % 2 == 0 { self.orig[a] - self.cap[a] } else { 0 })
            .collect();
        let mut out = Vec::new();
        loop {
            let mut nodes = vec![s];
            let mut used_arcs: Vec<usize> = Vec::new();
            let mut ok = false;
            while let Some(&x) = nodes.last() {
                if x == t {
                    ok = true;
                    break;
                }
                let next = self.arcs_of[x].iter().copied().find(|&a| remaining[a] > 0);
                let Some(a) = next else { break };
                remaining[a] -= 1;
                let y = self.to[a];
                if let Some(pos) = nodes.iter().position(|&z| z == y) {
                    // Flow cycle: drop it.
                    nodes.truncate(pos + 1);
                    used_arcs.truncate(pos);
                } else {
                    nodes.push(y);
                    used_arcs.push(a);
                }
            }
            if !ok {
                break;
            }
            let mut path: Vec<Vertex> = Vec::new();
            for &x in &nodes[1..nodes.len() - 1] {
                let v = x / 2;
                if path.last() != Some(&v) {
                    path.push(v);
                }
            }
            out.push(path);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn fan_in_k5() {
        let g = families::complete(5);
        let mut spec = FlowSpec::new(5);
        spec.source(0, UNBOUNDED);
        for v in 1..5 {
            spec.terminal(v, 1);
        }
        let mut f = VertexFlow::build(&g, &spec);
        assert_eq!(f.run(10), 4);
        let paths = f.paths();
        assert_eq!(paths, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![0, 4]]);
    }

    #[test]
    fn cut_in_cycle() {
        let g = families::cycle(6);
        let mut spec = FlowSpec::new(6);
        spec.source(0, UNBOUNDED).terminal(3, UNBOUNDED);
        spec.role[3] = Role::Free;
        let mut f = VertexFlow::build(&g, &spec);
        assert_eq!(f.run(10), 2);
        assert_eq!(f.min_cut().unwrap().len(), 2);
    }
}
