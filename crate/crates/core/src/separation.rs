//! Vertex-level separations `(G1, G2)`.
//!
//! A separation is stored as its two vertex sets. Edges with both ends in
//! the cut are assigned to the first side; [`Separation::side_graph`]
//! applies that convention when a side is materialised as a graph.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{normalized, Graph, GraphError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparationError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {0} lies on neither side")]
    Uncovered(Vertex),
    #[error("edge {0}-{1} crosses between the private parts of the sides")]
    CrossingEdge(Vertex, Vertex),
    #[error("side {0} is contained in the other side")]
    Contained(u8),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Separation {
    pub side1: Vec<Vertex>,
    pub side2: Vec<Vertex>,
    pub cut: Vec<Vertex>,
}

/// Which side of a separation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

impl Separation {
    /// Validates and normalises a separation of `g`.
    pub fn new(g: &Graph, side1: &[Vertex], side2: &[Vertex]) -> Result<Self, SeparationError> {
        g.check_vertices(side1)?;
        g.check_vertices(side2)?;
        let side1 = normalized(side1);
        let side2 = normalized(side2);
        let in1 = g.mask(&side1);
        let in2 = g.mask(&side2);
        if let Some(v) = g.vertices().find(|&v| !in1[v] && !in2[v]) {
            return Err(SeparationError::Uncovered(v));
        }
        for (u, v) in g.edges() {
            let inside1 = in1[u] && in1[v];
            let inside2 = in2[u] && in2[v];
            if !inside1 && !inside2 {
                return Err(SeparationError::CrossingEdge(u, v));
            }
        }
        if side1.iter().all(|&v| in2[v]) {
            return Err(SeparationError::Contained(1));
        }
        if side2.iter().all(|&v| in1[v]) {
            return Err(SeparationError::Contained(2));
        }
        let cut = side1.iter().copied().filter(|&v| in2[v]).collect();
        Ok(Separation { side1, side2, cut })
    }

    /// Separation with the given cut whose first side is the cut plus
    /// `private1`; everything else goes to the second side.
    pub fn from_cut(g: &Graph, cut: &[Vertex], private1: &[Vertex]) -> Result<Self, SeparationError> {
        let mut side1 = cut.to_vec();
        side1.extend_from_slice(private1);
        let in1 = g.mask(&side1);
        let mut side2: Vec<Vertex> = g.vertices().filter(|&v| !in1[v]).collect();
        side2.extend_from_slice(cut);
        Separation::new(g, &side1, &side2)
    }

    pub fn order(&self) -> usize {
        self.cut.len()
    }

    pub fn side(&self, s: Side) -> &[Vertex] {
        match s {
            Side::First => &self.side1,
            Side::Second => &self.side2,
        }
    }

    /// Vertices of the given side that are not in the cut.
    pub fn private(&self, s: Side) -> Vec<Vertex> {
        self.side(s)
            .iter()
            .copied()
            .filter(|v| self.cut.binary_search(v).is_err())
            .collect()
    }

    pub fn swapped(&self) -> Separation {
        Separation {
            side1: self.side2.clone(),
            side2: self.side1.clone(),
            cut: self.cut.clone(),
        }
    }

    /// The side as a graph on the original ids (vertices outside the side
    /// are left isolated). Cut-internal edges belong to the first side.
    pub fn side_graph(&self, g: &Graph, s: Side) -> Graph {
        let inside = g.mask(self.side(s));
        let in_cut = g.mask(&self.cut);
        let keep: Vec<(Vertex, Vertex)> = g
            .edges()
            .into_iter()
            .filter(|&(u, v)| inside[u] && inside[v])
            .filter(|&(u, v)| s == Side::First || !(in_cut[u] && in_cut[v]))
            .collect();
        Graph::from_edges(g.n(), &keep).expect("subset of valid edges")
    }

    /// The side as a compact graph plus the remap table.
    pub fn side_induced(&self, g: &Graph, s: Side) -> (Graph, Vec<Vertex>) {
        let h = self.side_graph(g, s);
        h.induced(self.side(s)).expect("side vertices are in range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn cycle_split() {
        let c6 = families::cycle(6);
        let s = Separation::new(&c6, &[0, 1, 2, 3], &[3, 4, 5, 0]).unwrap();
        assert_eq!(s.cut, vec![0, 3]);
        assert_eq!(s.order(), 2);
        assert_eq!(s.private(Side::Second), vec![4, 5]);
    }

    #[test]
    fn invalid_separations() {
        let c6 = families::cycle(6);
        assert_eq!(
            Separation::new(&c6, &[0, 1, 2], &[3, 4, 5]),
            Err(SeparationError::CrossingEdge(0, 5))
        );
        assert_eq!(
            Separation::new(&c6, &[0, 1, 2, 3], &[3, 4, 0]),
            Err(SeparationError::Uncovered(5))
        );
        assert_eq!(
            Separation::new(&c6, &[0, 1], &[0, 1, 2, 3, 4, 5]),
            Err(SeparationError::Contained(1))
        );
    }

    #[test]
    fn cut_edges_go_to_first_side() {
        let k4 = families::complete(4);
        let s = Separation::new(&k4.without_edges(&[(0, 3)]), &[0, 1, 2], &[1, 2, 3]).unwrap();
        let g = k4.without_edges(&[(0, 3)]);
        assert!(s.side_graph(&g, Side::First).has_edge(1, 2));
        assert!(!s.side_graph(&g, Side::Second).has_edge(1, 2));
    }
}
