//! Immutable simple undirected graphs on dense vertex ids, and the
//! subgraph / deletion / contraction algebra used everywhere else.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Vertex ids are dense indices `0..n`.
pub type Vertex = usize;

/// Largest vertex count accepted by constructors.
pub const MAX_VERTICES: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("graph has {0} vertices, limit is {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("contraction target is empty")]
    EmptyTarget,
    #[error("contraction target {0:?} does not induce a connected subgraph")]
    DisconnectedTarget(Vec<Vertex>),
    #[error("edge {0}-{1} is not present")]
    MissingEdge(Vertex, Vertex),
    #[error("vertex {kept} is not a neighbour of apex {apex}")]
    NotANeighbour { apex: Vertex, kept: Vertex },
}

/// A simple undirected graph. Adjacency lists are kept sorted, so every
/// iteration order in the crate is deterministic (lowest id first).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

impl Graph {
    /// Graph with `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
            labels: None,
        }
    }

    /// Builds a graph from an edge list. Repeated edges collapse; loops are
    /// rejected.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_raw_adjacency(adj))
    }

    /// Internal constructor: sorts, dedups and counts.
    pub(crate) fn from_raw_adjacency(mut adj: Vec<Vec<Vertex>>) -> Self {
        let mut deg_sum = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            deg_sum += list.len();
        }
        Graph {
            adj,
            m: deg_sum / 2,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n(), "one label per vertex");
        self.labels = Some(labels);
        self
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.m);
        for u in self.vertices() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn check_vertices<'a>(&self, vs: impl IntoIterator<Item = &'a Vertex>) -> Result<(), GraphError> {
        vs.into_iter().try_for_each(|&v| self.check_vertex(v))
    }

    /// Boolean membership mask over `0..n`.
    pub fn mask(&self, vs: &[Vertex]) -> Vec<bool> {
        let mut m = vec![false; self.n()];
        for &v in vs {
            m[v] = true;
        }
        m
    }

    /// Subgraph induced by `s`. Returns the new graph and the remap table
    /// `new id -> original id` (sorted ascending, so relative order is kept).
    pub fn induced(&self, s: &[Vertex]) -> Result<(Graph, Vec<Vertex>), GraphError> {
        self.check_vertices(s)?;
        let keep: BTreeSet<Vertex> = s.iter().copied().collect();
        let map: Vec<Vertex> = keep.into_iter().collect();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let adj = map
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&w| index[w] != usize::MAX)
                    .map(|&w| index[w])
                    .collect()
            })
            .collect();
        let mut g = Graph::from_raw_adjacency(adj);
        if let Some(labels) = &self.labels {
            g.labels = Some(map.iter().map(|&v| labels[v].clone()).collect());
        }
        Ok((g, map))
    }

    /// `G - S`: induced subgraph on the complement of `s`.
    pub fn remove_vertices(&self, s: &[Vertex]) -> Result<(Graph, Vec<Vertex>), GraphError> {
        self.check_vertices(s)?;
        let drop = self.mask(s);
        let rest: Vec<Vertex> = self.vertices().filter(|&v| !drop[v]).collect();
        self.induced(&rest)
    }

    /// Same vertex set, the given edges removed. Keeps ids stable, which is
    /// what `G - a` style constructions need when certificates must refer to
    /// the original ids.
    pub fn without_edges(&self, drop: &[(Vertex, Vertex)]) -> Graph {
        let mut adj = self.adj.clone();
        for &(u, v) in drop {
            if u < adj.len() && v < adj.len() {
                adj[u].retain(|&w| w != v);
                adj[v].retain(|&w| w != u);
            }
        }
        let mut g = Graph::from_raw_adjacency(adj);
        g.labels = self.labels.clone();
        g
    }

    /// Same vertex ids; every edge at a vertex of `s` removed.
    pub fn isolate(&self, s: &[Vertex]) -> Graph {
        let drop = self.mask(s);
        let adj = self
            .vertices()
            .map(|v| {
                if drop[v] {
                    Vec::new()
                } else {
                    self.adj[v].iter().copied().filter(|&w| !drop[w]).collect()
                }
            })
            .collect();
        let mut g = Graph::from_raw_adjacency(adj);
        g.labels = self.labels.clone();
        g
    }

    /// Adds edges (ignoring ones already present).
    pub fn with_edges(&self, extra: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
        let mut edges = self.edges();
        edges.extend_from_slice(extra);
        let mut g = Graph::from_edges(self.n(), &edges)?;
        g.labels = self.labels.clone();
        Ok(g)
    }

    /// Appends `extra` vertices (ids `n..n + extra`) and adds `edges`.
    pub(crate) fn with_edges_grown(&self, extra: usize, edges: &[(Vertex, Vertex)]) -> Graph {
        let mut all = self.edges();
        all.extend_from_slice(edges);
        Graph::from_edges(self.n() + extra, &all).expect("grown edges are valid")
    }

    /// Appends a new vertex adjacent to `nbrs`; returns the graph and the id.
    pub fn with_new_vertex(&self, nbrs: &[Vertex]) -> Result<(Graph, Vertex), GraphError> {
        self.check_vertices(nbrs)?;
        let z = self.n();
        let mut adj = self.adj.clone();
        adj.push(nbrs.to_vec());
        for &w in nbrs {
            adj[w].push(z);
        }
        Ok((Graph::from_raw_adjacency(adj), z))
    }

    /// Whether `s` induces a connected subgraph (empty sets are not connected).
    pub fn is_connected_set(&self, s: &[Vertex]) -> bool {
        if s.is_empty() {
            return false;
        }
        let inside = self.mask(s);
        let mut seen = vec![false; self.n()];
        let mut stack = vec![s[0]];
        seen[s[0]] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        let distinct: BTreeSet<_> = s.iter().collect();
        count == distinct.len()
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components_avoiding(&vec![false; self.n()]).len() == 1
    }

    /// Connected components of the graph minus the masked vertices. Each
    /// component is sorted; components are ordered by their least vertex.
    pub fn components_avoiding(&self, removed: &[bool]) -> Vec<Vec<Vertex>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out: Vec<Vec<Vertex>> = Vec::new();
        for s in self.vertices() {
            if removed[s] || comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !removed[w] && comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Neighbourhood of a vertex set, excluding the set itself.
    pub fn neighborhood(&self, s: &[Vertex]) -> Vec<Vertex> {
        let inside = self.mask(s);
        let mut out = vec![false; self.n()];
        for &v in s {
            for &w in &self.adj[v] {
                if !inside[w] {
                    out[w] = true;
                }
            }
        }
        self.vertices().filter(|&v| out[v]).collect()
    }

    /// `G/M`: contracts the connected set described by `spec` to a single
    /// vertex. Returns the contracted graph and the map from old ids to new
    /// ids; the contracted vertex is `spec.result_id()` in the new graph.
    pub fn contract(&self, spec: &ContractionSpec) -> Result<Contraction, GraphError> {
        let target = spec.target_vertices();
        if target.is_empty() {
            return Err(GraphError::EmptyTarget);
        }
        self.check_vertices(&target)?;
        if let ContractionSpec::Edge(u, v) = *spec {
            if !self.has_edge(u, v) {
                return Err(GraphError::MissingEdge(u, v));
            }
        }
        if !self.is_connected_set(&target) {
            return Err(GraphError::DisconnectedTarget(target));
        }
        let inside = self.mask(&target);
        let z_old = target[0];
        // Surviving vertices keep their relative order; the least target
        // vertex stands in for the whole target.
        let mut old_to_new = vec![0; self.n()];
        let mut next = 0;
        for v in self.vertices() {
            if inside[v] && v != z_old {
                continue;
            }
            old_to_new[v] = next;
            next += 1;
        }
        let z = old_to_new[z_old];
        for &v in &target {
            old_to_new[v] = z;
        }
        let mut adj = vec![Vec::new(); next];
        for (u, v) in self.edges() {
            let (a, b) = (old_to_new[u], old_to_new[v]);
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        Ok(Contraction {
            graph: Graph::from_raw_adjacency(adj),
            old_to_new,
            contracted: z,
        })
    }

    /// Removes every edge `av` with `v` not in `keep`.
    pub fn delete_apex_edges(&self, a: Vertex, keep: &[Vertex]) -> Result<Graph, GraphError> {
        self.check_vertex(a)?;
        for &v in keep {
            if !self.has_edge(a, v) {
                return Err(GraphError::NotANeighbour { apex: a, kept: v });
            }
        }
        let drop: Vec<(Vertex, Vertex)> = self.adj[a]
            .iter()
            .filter(|v| !keep.contains(v))
            .map(|&v| (a, v))
            .collect();
        Ok(self.without_edges(&drop))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }
}

/// What to contract: a single edge or a connected vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContractionSpec {
    Edge(Vertex, Vertex),
    Set(Vec<Vertex>),
}

impl ContractionSpec {
    pub fn target_vertices(&self) -> Vec<Vertex> {
        let mut t = match self {
            ContractionSpec::Edge(u, v) => vec![*u, *v],
            ContractionSpec::Set(s) => s.clone(),
        };
        t.sort_unstable();
        t.dedup();
        t
    }
}

#[derive(Debug, Clone)]
pub struct Contraction {
    pub graph: Graph,
    /// Old id to new id; every target vertex maps to `contracted`.
    pub old_to_new: Vec<Vertex>,
    pub contracted: Vertex,
}

/// Sorted, deduplicated copy of a vertex list.
pub fn normalized(vs: &[Vertex]) -> Vec<Vertex> {
    let mut v = vs.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn induced_on_k5_is_k4() {
        let k5 = families::complete(5);
        let (k4, map) = k5.induced(&[0, 2, 3, 4]).unwrap();
        assert_eq!(k4.n(), 4);
        assert_eq!(k4.m(), 6);
        assert_eq!(map, vec![0, 2, 3, 4]);
    }

    #[test]
    fn induced_on_everything_is_identity() {
        let p = families::petersen();
        let all: Vec<_> = p.vertices().collect();
        let (h, map) = p.induced(&all).unwrap();
        assert_eq!(h, p);
        assert_eq!(map, all);
    }

    #[test]
    fn induced_petersen_outer_cycle_is_c5() {
        let p = families::petersen();
        // Outer 5-cycle in the standard labelling.
        let (c, _) = p.induced(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(c.m(), 5);
        assert!(c.vertices().all(|v| c.degree(v) == 2));
    }

    #[test]
    fn induced_rejects_out_of_range() {
        let k3 = families::complete(3);
        assert!(matches!(
            k3.induced(&[0, 7]),
            Err(GraphError::VertexOutOfRange { vertex: 7, .. })
        ));
    }

    #[test]
    fn contract_edges() {
        let c4 = families::cycle(4);
        let c = c4.contract(&ContractionSpec::Edge(0, 1)).unwrap();
        assert_eq!(c.graph, families::cycle(3));
        let k5 = families::complete(5);
        let c = k5.contract(&ContractionSpec::Edge(3, 4)).unwrap();
        assert_eq!(c.graph, families::complete(4));
        assert_eq!(c.contracted, 3);
    }

    #[test]
    fn contract_rejects_bad_targets() {
        let (g, spec) = crate::tk5::gadget::build_gadget(None).unwrap();
        // a and a1 are not adjacent in the gadget.
        let err = g.contract(&ContractionSpec::Set(vec![spec.a, spec.a_i[0]]));
        assert!(matches!(err, Err(GraphError::DisconnectedTarget(_))));
        let err = g.contract(&ContractionSpec::Edge(spec.a, spec.a_i[0]));
        assert!(matches!(err, Err(GraphError::MissingEdge(..))));
        assert!(matches!(
            g.contract(&ContractionSpec::Set(vec![])),
            Err(GraphError::EmptyTarget)
        ));
    }

    #[test]
    fn delete_apex_edges_cases() {
        let k5 = families::complete(5);
        let same = k5.delete_apex_edges(0, &[1, 2, 3, 4]).unwrap();
        assert_eq!(same, k5);
        let iso = k5.delete_apex_edges(0, &[]).unwrap();
        assert_eq!(iso.degree(0), 0);
        assert_eq!(iso.m(), 6);
        let c5 = families::cycle(5);
        assert!(matches!(
            c5.delete_apex_edges(0, &[2]),
            Err(GraphError::NotANeighbour { apex: 0, kept: 2 })
        ));
    }

    #[test]
    fn gadget_apex_restriction_caps_degree() {
        let k7 = families::complete(7);
        let (g, spec) =
            crate::tk5::gadget::build_gadget(Some((&k7, &[0, 1, 2, 3, 4][..]))).unwrap();
        let keep = [spec.b_i[0], spec.b_i[1], spec.b_i[2], 5, 6];
        let h = g.delete_apex_edges(spec.a, &keep).unwrap();
        assert!(h.degree(spec.a) <= 5);
        assert_eq!(h.degree(spec.a), 5);
    }

    #[test]
    fn components_and_neighbourhood() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let comps = g.components_avoiding(&[false; 6]);
        assert_eq!(comps, vec![vec![0, 1, 2], vec![3, 4], vec![5]]);
        assert_eq!(g.neighborhood(&[1]), vec![0, 2]);
        assert!(!g.is_connected());
    }
}
