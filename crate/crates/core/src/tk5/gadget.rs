//! The nine-vertex gadget: the 8-cycle `a1 b1 a2 b2 a3 b3 a4 b4`, the
//! 4-cycle `b1 b2 b3 b4`, and an apex `a` joined to every `b_i`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use std::ops::ControlFlow;

use crate::combinatorics::{for_each_subset_of, permutations};
use crate::graph::{normalized, Graph, GraphError, Vertex};
use crate::separation::Separation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GadgetSpec {
    pub a: Vertex,
    pub a_i: [Vertex; 4],
    pub b_i: [Vertex; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("the cut map must list 5 distinct vertices (a, a1..a4), got {0:?}")]
    BadCutMap(Vec<Vertex>),
}

impl GadgetSpec {
    /// The 16 edges of the gadget in terms of this labelling.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let (a, ai, bi) = (self.a, self.a_i, self.b_i);
        let mut e = Vec::with_capacity(16);
        for i in 0..4 {
            e.push((ai[i], bi[i]));
            e.push((bi[i], ai[(i + 1) % 4]));
            e.push((bi[i], bi[(i + 1) % 4]));
            e.push((a, bi[i]));
        }
        e
    }

    pub fn cut(&self) -> [Vertex; 5] {
        [self.a, self.a_i[0], self.a_i[1], self.a_i[2], self.a_i[3]]
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let mut v = self.cut().to_vec();
        v.extend_from_slice(&self.b_i);
        v
    }
}

/// The gadget alone (`a = 0`, `a_i = 1..=4`, `b_i = 5..=8`), or glued to an
/// attachment graph along `cut = [a, a1, a2, a3, a4]`; the `b_i` are then
/// appended after the attachment's vertices.
pub fn build_gadget(attachment: Option<(&Graph, &[Vertex])>) -> Result<(Graph, GadgetSpec), GadgetError> {
    let (base_n, mut edges, cut) = match attachment {
        None => (5, Vec::new(), [0, 1, 2, 3, 4]),
        Some((g1, cut)) => {
            g1.check_vertices(cut)?;
            if cut.len() != 5 || normalized(cut).len() != 5 {
                return Err(GadgetError::BadCutMap(cut.to_vec()));
            }
            (g1.n(), g1.edges(), [cut[0], cut[1], cut[2], cut[3], cut[4]])
        }
    };
    let spec = GadgetSpec {
        a: cut[0],
        a_i: [cut[1], cut[2], cut[3], cut[4]],
        b_i: [base_n, base_n + 1, base_n + 2, base_n + 3],
    };
    edges.extend(spec.edges());
    let g = Graph::from_edges(base_n + 4, &edges)?;
    Ok((g, spec))
}

/// Whether `side` (with `spec`) is exactly the gadget: the vertex set is the
/// nine labelled vertices and the edges of `g` inside it, excluding edges
/// between cut vertices, are exactly the gadget's edges.
pub fn matches_gadget(g: &Graph, spec: &GadgetSpec) -> bool {
    let verts = spec.vertices();
    if normalized(&verts).len() != 9 || verts.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let cut = spec.cut();
    let mut want = normalized_edges(&spec.edges());
    want.sort_unstable();
    let mut have = Vec::new();
    for (i, &u) in verts.iter().enumerate() {
        for &v in &verts[i + 1..] {
            if g.has_edge(u, v) && !(cut.contains(&u) && cut.contains(&v)) {
                have.push((u.min(v), u.max(v)));
            }
        }
    }
    have.sort_unstable();
    // The b_i must have no neighbours outside the gadget.
    let closed = spec
        .b_i
        .iter()
        .all(|&b| g.neighbors(b).iter().all(|w| verts.contains(w)));
    closed && have == want
}

/// A 5-separation whose second side is exactly the gadget with apex `a`:
/// four degree-5 neighbours of `a` close off the rest of the graph. The
/// first labelling found (lowest `b` set, then lowest permutation) wins.
pub fn find_gadget_separation(g: &Graph, a: Vertex) -> Option<(Separation, GadgetSpec)> {
    if a >= g.n() || g.n() < 10 {
        return None;
    }
    let cand: Vec<Vertex> = g.neighbors(a).iter().copied().filter(|&b| g.degree(b) == 5).collect();
    let mut out = None;
    let _ = for_each_subset_of(&cand, 4, &mut |bs| {
        let mut cut: Vec<Vertex> = g.neighborhood(bs);
        cut.retain(|&v| v != a);
        if cut.len() != 4 {
            return ControlFlow::Continue(());
        }
        for pa in permutations4(&cut) {
            for pb in permutations4(bs) {
                let spec = GadgetSpec { a, a_i: pa, b_i: pb };
                if matches_gadget(g, &spec) {
                    let side1: Vec<Vertex> = g.vertices().filter(|v| !bs.contains(v)).collect();
                    if let Ok(sep) = Separation::new(g, &side1, &spec.vertices()) {
                        out = Some((sep, spec));
                        return ControlFlow::Break(());
                    }
                }
            }
        }
        ControlFlow::Continue(())
    });
    out
}

fn permutations4(items: &[Vertex]) -> Vec<[Vertex; 4]> {
    permutations(items).into_iter().map(|p| [p[0], p[1], p[2], p[3]]).collect()
}

fn normalized_edges(e: &[(Vertex, Vertex)]) -> Vec<(Vertex, Vertex)> {
    e.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn standalone_degrees() {
        let (g, s) = build_gadget(None).unwrap();
        assert_eq!((g.n(), g.m()), (9, 16));
        assert_eq!(g.degree(s.a), 4);
        for i in 0..4 {
            assert_eq!(g.degree(s.a_i[i]), 2);
            assert_eq!(g.degree(s.b_i[i]), 5);
        }
        assert!(matches_gadget(&g, &s));
    }

    #[test]
    fn glued_to_k7() {
        let k7 = families::complete(7);
        let (g, s) = build_gadget(Some((&k7, &[0, 1, 2, 3, 4][..]))).unwrap();
        assert_eq!(g.n(), 11);
        for &ai in &s.a_i {
            assert_eq!(g.degree(ai), 8);
        }
        assert_eq!(s.b_i, [7, 8, 9, 10]);
        assert!(matches_gadget(&g, &s));
        assert!(crate::connectivity::is_k_connected(&g, 5).unwrap().holds);
    }

    #[test]
    fn gadget_separation_is_recovered() {
        let k7 = families::complete(7);
        let (g, s) = build_gadget(Some((&k7, &[0, 1, 2, 3, 4][..]))).unwrap();
        let (sep, found) = find_gadget_separation(&g, 0).unwrap();
        assert_eq!(sep.cut, vec![0, 1, 2, 3, 4]);
        assert_eq!(normalized(&found.b_i), normalized(&s.b_i));
        assert!(matches_gadget(&g, &found));
        assert!(find_gadget_separation(&g, 1).is_none());
        assert!(find_gadget_separation(&k7, 0).is_none());
    }

    #[test]
    fn bad_cut_maps() {
        let k7 = families::complete(7);
        assert!(matches!(
            build_gadget(Some((&k7, &[0, 1, 2, 3][..]))),
            Err(GadgetError::BadCutMap(_))
        ));
        assert!(matches!(
            build_gadget(Some((&k7, &[0, 1, 2, 3, 3][..]))),
            Err(GadgetError::BadCutMap(_))
        ));
        assert!(build_gadget(Some((&k7, &[0, 1, 2, 3, 9][..]))).is_err());
    }
}
