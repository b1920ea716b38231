//! Two disjoint paths: either an `s1-t1`, `s2-t2` linkage or a plane
//! drawing with `s1, s2, t1, t2` on the boundary in this cyclic order.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{plane_in_cyclic_order, CofacialError, PlaneEmbedding};
use crate::connectivity::is_ka_connected;
use crate::graph::{Graph, GraphError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LinkageVerdict {
    /// Vertex-disjoint paths `s1 -> t1` and `s2 -> t2`.
    Linked { paths: [Vec<Vertex>; 2] },
    /// An embedding with the four terminals on the outer face in order.
    PlanarInOrder { embedding: PlaneEmbedding },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkageError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("terminals must be distinct")]
    NotDistinct,
    #[error("graph is not (4, S)-connected: cut {cut:?} isolates a terminal-free component")]
    Hypothesis { cut: Vec<Vertex> },
    #[error("no linkage and no plane drawing with the terminals in order")]
    Neither,
}

impl From<CofacialError> for LinkageError {
    fn from(e: CofacialError) -> Self {
        match e {
            CofacialError::Graph(g) => LinkageError::Graph(g),
            _ => LinkageError::NotDistinct,
        }
    }
}

/// Decides the two-disjoint-paths problem on a `(4, {s1, s2, t1, t2})`-connected
/// graph.
pub fn two_linkage(g: &Graph, s1: Vertex, s2: Vertex, t1: Vertex, t2: Vertex) -> Result<LinkageVerdict, LinkageError> {
    let terms = [s1, s2, t1, t2];
    g.check_vertices(&terms)?;
    if crate::graph::normalized(&terms).len() != 4 {
        return Err(LinkageError::NotDistinct);
    }
    let report = is_ka_connected(g, 4, &terms).map_err(|_| LinkageError::NotDistinct)?;
    if !report.holds {
        return Err(LinkageError::Hypothesis {
            cut: report.witness_cut.unwrap_or_default(),
        });
    }
    if let Some(paths) = disjoint_paths(g, s1, t1, s2, t2) {
        return Ok(LinkageVerdict::Linked { paths });
    }
    match plane_in_cyclic_order(g, &[s1, s2, t1, t2])? {
        Some(embedding) => Ok(LinkageVerdict::PlanarInOrder { embedding }),
        None => Err(LinkageError::Neither),
    }
}

fn bfs_path(g: &Graph, from: Vertex, to: Vertex, blocked: &[bool]) -> Option<Vec<Vertex>> {
    if blocked[from] || blocked[to] {
        return None;
    }
    let mut prev = vec![usize::MAX; g.n()];
    prev[from] = from;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = vec![to];
            let mut c = to;
            while c != from {
                c = prev[c];
                path.push(c);
            }
            path.reverse();
            return Some(path);
        }
        for &w in g.neighbors(v) {
            if !blocked[w] && prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Disjoint `s1-t1` and `s2-t2` paths, found by enumerating induced
/// `s1-t1` paths (lowest ids first) and testing the remainder.
pub fn disjoint_paths(g: &Graph, s1: Vertex, t1: Vertex, s2: Vertex, t2: Vertex) -> Option<[Vec<Vertex>; 2]> {
    let n = g.n();
    let mut on_path = vec![false; n];
    on_path[s1] = true;
    let mut path = vec![s1];
    let mut avoid = vec![false; n];
    avoid[s2] = true;
    avoid[t2] = true;
    extend(g, &mut path, &mut on_path, &avoid, t1, s2, t2)
}

fn extend(
    g: &Graph,
    path: &mut Vec<Vertex>,
    on_path: &mut Vec<bool>,
    avoid: &[bool],
    t1: Vertex,
    s2: Vertex,
    t2: Vertex,
) -> Option<[Vec<Vertex>; 2]> {
    let v = *path.last().expect("non-empty");
    if v == t1 {
        return bfs_path(g, s2, t2, on_path).map(|q| [path.clone(), q]);
    }
    for &x in g.neighbors(v) {
        if on_path[x] || avoid[x] {
            continue;
        }
        if path[..path.len() - 1].iter().any(|&p| g.has_edge(p, x)) {
            continue;
        }
        path.push(x);
        on_path[x] = true;
        let mut blocked: Vec<bool> = on_path.iter().zip(avoid).map(|(a, b)| *a || *b).collect();
        blocked[x] = false;
        let feasible = bfs_path(g, s2, t2, on_path).is_some() && bfs_path(g, x, t1, &blocked).is_some();
        if feasible {
            if let Some(found) = extend(g, path, on_path, avoid, t1, s2, t2) {
                return Some(found);
            }
        }
        on_path[x] = false;
        path.pop();
    }
    None
}
