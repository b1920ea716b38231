//! Planar embeddings, planarity with a prescribed face or boundary order,
//! and the two-disjoint-paths dichotomy.

mod boundary;
pub(crate) mod dmp;
mod linkage;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub use boundary::{cofacial_cycle, induced_cycle, plane_in_cyclic_order, plane_with_boundary, CofacialError};
pub use linkage::{two_linkage, LinkageError, LinkageVerdict};

/// A combinatorial plane embedding given by a rotation system.
///
/// Faces are traced with the rule "after the dart `u -> v` comes
/// `v -> rotation_successor(v, u)`"; each face is stored as the cyclic
/// sequence of dart tails. Disconnected graphs get one outer face per
/// component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneEmbedding {
    pub rotation: Vec<Vec<Vertex>>,
    pub faces: Vec<Vec<Vertex>>,
    /// Edge incidences per face (bridges count twice).
    pub face_degree: Vec<usize>,
    /// Component index of every vertex.
    pub component: Vec<usize>,
    /// Component index of every face.
    pub face_component: Vec<usize>,
    /// Outer face of each component.
    pub outer: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("rotation at {0} is not a permutation of its neighbours")]
    BadRotation(Vertex),
    #[error("face list does not match the traced faces of the rotation system")]
    FaceMismatch,
    #[error("component {component}: V - E + F = {value}, expected 2")]
    Euler { component: usize, value: i64 },
    #[error("outer face {0} belongs to another component or does not exist")]
    BadOuter(usize),
}

impl PlaneEmbedding {
    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    /// The underlying graph.
    pub fn graph(&self) -> Graph {
        let mut edges = Vec::new();
        for (v, r) in self.rotation.iter().enumerate() {
            for &w in r {
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        Graph::from_edges(self.n(), &edges).expect("rotation lists valid vertices")
    }

    /// Builds the embedding from a rotation system, tracing faces. The outer
    /// face of each component defaults to its first traced face.
    pub fn from_rotation(rotation: Vec<Vec<Vertex>>) -> Self {
        let n = rotation.len();
        let (faces, face_degree) = trace_faces(&rotation);
        let g = Graph::from_edges(
            n,
            &rotation
                .iter()
                .enumerate()
                .flat_map(|(v, r)| r.iter().filter(move |&&w| v < w).map(move |&w| (v, w)))
                .collect::<Vec<_>>(),
        )
        .expect("rotation lists valid vertices");
        let comps = g.components_avoiding(&vec![false; n]);
        let mut component = vec![0; n];
        for (ci, c) in comps.iter().enumerate() {
            for &v in c {
                component[v] = ci;
            }
        }
        let face_component: Vec<usize> = faces.iter().map(|f| component[f[0]]).collect();
        let outer = (0..comps.len())
            .map(|c| face_component.iter().position(|&fc| fc == c).expect("each component has a face"))
            .collect();
        PlaneEmbedding {
            rotation,
            faces,
            face_degree,
            component,
            face_component,
            outer,
        }
    }

    /// Index of the face containing the dart `u -> v`.
    pub fn face_of_dart(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.faces.iter().position(|f| {
            let len = f.len();
            (0..len).any(|i| f[i] == u && f[(i + 1) % len] == v)
                || (len == 1 && f[0] == u && u == v)
        })
    }

    /// Outer face of the component containing `v`.
    pub fn outer_face_of(&self, v: Vertex) -> usize {
        self.outer[self.component[v]]
    }

    /// Outer face of the first component (the only one when connected).
    pub fn outer_face(&self) -> usize {
        self.outer[0]
    }

    pub fn is_on_outer_face(&self, v: Vertex) -> bool {
        self.faces[self.outer_face_of(v)].contains(&v)
    }

    pub fn num_components(&self) -> usize {
        self.outer.len()
    }

    /// Successor of `u` in the rotation at `v`.
    pub fn successor(&self, v: Vertex, u: Vertex) -> Option<Vertex> {
        let r = &self.rotation[v];
        let i = r.iter().position(|&x| x == u)?;
        Some(r[(i + 1) % r.len()])
    }

    /// Checks the rotation against `g`, re-traces the faces, and checks
    /// Euler's formula per component and the outer face choice.
    pub fn validate(&self, g: &Graph) -> Result<(), EmbeddingError> {
        if self.rotation.len() != g.n() {
            return Err(EmbeddingError::FaceMismatch);
        }
        for v in g.vertices() {
            let mut r = self.rotation[v].clone();
            r.sort_unstable();
            if r != g.neighbors(v) {
                return Err(EmbeddingError::BadRotation(v));
            }
        }
        let (faces, degrees) = trace_faces(&self.rotation);
        if faces != self.faces || degrees != self.face_degree {
            return Err(EmbeddingError::FaceMismatch);
        }
        let total_darts: usize = degrees.iter().sum();
        if total_darts != 2 * g.m() {
            return Err(EmbeddingError::FaceMismatch);
        }
        for c in 0..self.outer.len() {
            let verts = self.component.iter().filter(|&&x| x == c).count() as i64;
            let edges = g
                .edges()
                .iter()
                .filter(|&&(u, _)| self.component[u] == c)
                .count() as i64;
            let faces = self.face_component.iter().filter(|&&x| x == c).count() as i64;
            let value = verts - edges + faces;
            if value != 2 {
                return Err(EmbeddingError::Euler { component: c, value });
            }
            let o = self.outer[c];
            if o >= self.faces.len() || self.face_component[o] != c {
                return Err(EmbeddingError::BadOuter(o));
            }
        }
        Ok(())
    }
}

/// Faces of a rotation system as dart-tail sequences, and their degrees.
fn trace_faces(rotation: &[Vec<Vertex>]) -> (Vec<Vec<Vertex>>, Vec<usize>) {
    let n = rotation.len();
    let mut offset = vec![0; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + rotation[v].len();
    }
    // Dart (v, i) is v -> rotation[v][i].
    let dart_index = |v: Vertex, w: Vertex| -> usize {
        offset[v] + rotation[v].iter().position(|&x| x == w).expect("symmetric rotation")
    };
    let mut used = vec![false; offset[n]];
    let mut faces = Vec::new();
    let mut degrees = Vec::new();
    for v in 0..n {
        if rotation[v].is_empty() {
            faces.push(vec![v]);
            degrees.push(0);
            continue;
        }
        for i in 0..rotation[v].len() {
            if used[offset[v] + i] {
                continue;
            }
            let mut walk = Vec::new();
            let (mut a, mut b) = (v, rotation[v][i]);
            loop {
                let d = dart_index(a, b);
                if used[d] {
                    break;
                }
                used[d] = true;
                walk.push(a);
                let r = &rotation[b];
                let j = r.iter().position(|&x| x == a).expect("symmetric rotation");
                let c = r[(j + 1) % r.len()];
                a = b;
                b = c;
            }
            degrees.push(walk.len());
            faces.push(walk);
        }
    }
    (faces, degrees)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of `K5` or `K3,3`: branch vertices and the branch paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub branch: Vec<Vertex>,
    pub paths: Vec<Vec<Vertex>>,
}

/// Result of a planarity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Planarity {
    Planar(PlaneEmbedding),
    NonPlanar(KuratowskiWitness),
}

pub fn is_planar(g: &Graph) -> bool {
    dmp::rotation_system(g).is_some()
}

/// A plane embedding, or a Kuratowski subgraph certifying non-planarity.
pub fn embed_planar(g: &Graph) -> Planarity {
    match dmp::rotation_system(g) {
        Some(rot) => Planarity::Planar(PlaneEmbedding::from_rotation(rot)),
        None => Planarity::NonPlanar(kuratowski(g)),
    }
}

/// Plane embedding or `None`.
pub fn plane_embedding(g: &Graph) -> Option<PlaneEmbedding> {
    dmp::rotation_system(g).map(PlaneEmbedding::from_rotation)
}

fn kuratowski(g: &Graph) -> KuratowskiWitness {
    let mut edges = g.edges();
    let mut i = 0;
    while i < edges.len() {
        let mut trial = edges.clone();
        trial.remove(i);
        let h = Graph::from_edges(g.n(), &trial).expect("subset of edges");
        if is_planar(&h) {
            i += 1;
        } else {
            edges = trial;
        }
    }
    let h = Graph::from_edges(g.n(), &edges).expect("subset of edges");
    let branch: Vec<Vertex> = h.vertices().filter(|&v| h.degree(v) >= 3).collect();
    let kind = if branch.len() == 5 { KuratowskiKind::K5 } else { KuratowskiKind::K33 };
    let mut paths = Vec::new();
    for &b in &branch {
        for &first in h.neighbors(b) {
            let mut path = vec![b, first];
            let mut prev = b;
            let mut cur = first;
            while h.degree(cur) == 2 {
                let next = *h.neighbors(cur).iter().find(|&&x| x != prev).expect("degree 2");
                prev = cur;
                cur = next;
                path.push(cur);
            }
            if b < cur {
                paths.push(path);
            }
        }
    }
    paths.sort();
    KuratowskiWitness { kind, branch, paths }
}

impl KuratowskiWitness {
    /// Checks the witness as a subdivision inside `g`.
    pub fn validate(&self, g: &Graph) -> bool {
        let (nb, np) = match self.kind {
            KuratowskiKind::K5 => (5, 10),
            KuratowskiKind::K33 => (6, 9),
        };
        if self.branch.len() != nb || self.paths.len() != np {
            return false;
        }
        let mut used = std::collections::HashSet::new();
        let mut pairs = std::collections::HashSet::new();
        for p in &self.paths {
            if p.len() < 2 || p.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
                return false;
            }
            let (s, t) = (p[0], *p.last().expect("len >= 2"));
            if !self.branch.contains(&s) || !self.branch.contains(&t) || s == t {
                return false;
            }
            if !pairs.insert((s.min(t), s.max(t))) {
                return false;
            }
            for &v in &p[1..p.len() - 1] {
                if self.branch.contains(&v) || !used.insert(v) {
                    return false;
                }
            }
        }
        if self.kind == KuratowskiKind::K33 {
            // The pair graph must be K3,3: each branch vertex has degree 3
            // and the pairs form a bipartite graph.
            let pair_graph = Graph::from_edges(
                g.n(),
                &pairs.iter().copied().collect::<Vec<_>>(),
            )
            .expect("valid pairs");
            let b0 = self.branch[0];
            let side: Vec<Vertex> = pair_graph.neighbors(b0).to_vec();
            if side.len() != 3 {
                return false;
            }
            for &x in &self.branch {
                let other = side.contains(&x);
                for &y in &self.branch {
                    let other_y = side.contains(&y);
                    let adjacent = pairs.contains(&(x.min(y), x.max(y)));
                    if x != y && adjacent != (other != other_y) {
                        return false;
                    }
                }
            }
        }
        true
    }
}
