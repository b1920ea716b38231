//! Embeddings with prescribed vertices on the outer face, optionally in a
//! prescribed cyclic order, and cofacial cycles.

use thiserror::Error;

use super::{dmp, PlaneEmbedding};
use crate::graph::{normalized, Graph, GraphError, Vertex};

/// Embeds `g` plus extra vertices and edges, then deletes the extra
/// vertices. Returns the pruned rotation and, for every original vertex that
/// lost a neighbour, the original neighbour preceding the deleted block.
fn augmented(g: &Graph, extra: usize, edges: &[(Vertex, Vertex)]) -> Option<(Vec<Vec<Vertex>>, Vec<Option<Vertex>>)> {
    let n = g.n();
    let h = g.with_edges_grown(extra, edges);
    let rot = dmp::rotation_system(&h)?;
    let mut pruned = Vec::with_capacity(n);
    let mut gap = vec![None; n];
    for v in 0..n {
        let r = &rot[v];
        let len = r.len();
        for i in 0..len {
            let prev = r[(i + len - 1) % len];
            if r[i] >= n && prev < n {
                gap[v] = Some(prev);
                break;
            }
        }
        pruned.push(r.iter().copied().filter(|&w| w < n).collect());
    }
    Some((pruned, gap))
}

/// Chooses, in each component holding an anchor, the face that contains the
/// region left by the deleted vertices.
fn with_outer(rotation: Vec<Vec<Vertex>>, gap: &[Option<Vertex>], anchors: &[Vertex]) -> PlaneEmbedding {
    let mut emb = PlaneEmbedding::from_rotation(rotation);
    let mut set = vec![false; emb.num_components()];
    for &a in anchors {
        let c = emb.component[a];
        if set[c] {
            continue;
        }
        let face = match gap[a] {
            Some(x) => emb.face_of_dart(x, a).expect("dart exists"),
            None => emb.face_of_dart(a, a).expect("isolated vertex face"),
        };
        emb.outer[c] = face;
        set[c] = true;
    }
    for &a in anchors {
        assert!(
            emb.is_on_outer_face(a),
            "boundary vertex {a} missing from the outer face"
        );
    }
    emb
}

/// An embedding with every vertex of `a_set` on the outer face (of its
/// component), or `None` when no such embedding exists.
pub fn plane_with_boundary(g: &Graph, a_set: &[Vertex]) -> Result<Option<PlaneEmbedding>, GraphError> {
    g.check_vertices(a_set)?;
    let a_set = normalized(a_set);
    let z = g.n();
    let edges: Vec<_> = a_set.iter().map(|&a| (a, z)).collect();
    Ok(augmented(g, 1, &edges).map(|(rot, gap)| with_outer(rot, &gap, &a_set)))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CofacialError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {0} lies on the outer face")]
    OnOuterFace(Vertex),
    #[error("boundary vertex {0} is repeated")]
    Repeated(Vertex),
}

/// An embedding whose outer face meets `boundary` in the given cyclic order
/// (either orientation), or `None`.
pub fn plane_in_cyclic_order(g: &Graph, boundary: &[Vertex]) -> Result<Option<PlaneEmbedding>, CofacialError> {
    g.check_vertices(boundary)?;
    if let Some(&v) = boundary.iter().enumerate().find(|(i, v)| boundary[..*i].contains(v)).map(|(_, v)| v) {
        return Err(CofacialError::Repeated(v));
    }
    let k = boundary.len();
    if k <= 2 {
        return Ok(plane_with_boundary(g, boundary)?);
    }
    // A subdivided wheel: rim a1 s1 a2 s2 ... ak sk, hub z joined to all.
    let n = g.n();
    let z = n + k;
    let mut edges = Vec::new();
    for i in 0..k {
        let s = n + i;
        edges.push((boundary[i], s));
        edges.push((s, boundary[(i + 1) % k]));
        edges.push((z, boundary[i]));
        edges.push((z, s));
    }
    let Some((rot, gap)) = augmented(g, k + 1, &edges) else {
        return Ok(None);
    };
    let emb = with_outer(rot, &gap, boundary);
    debug_assert!(boundary_order_holds(&emb, boundary));
    Ok(Some(emb))
}

/// Whether, in every component, the boundary vertices it contains appear
/// on its outer face walk in the given cyclic order (either orientation).
pub fn boundary_order_holds(emb: &PlaneEmbedding, boundary: &[Vertex]) -> bool {
    (0..emb.num_components()).all(|c| {
        let order: Vec<Vertex> = boundary.iter().copied().filter(|&v| emb.component[v] == c).collect();
        order.is_empty() || cyclic_subsequence(&emb.faces[emb.outer[c]], &order)
    })
}

/// Whether `order` occurs in the closed walk `walk` as a cyclic subsequence,
/// read forwards or backwards.
pub fn cyclic_subsequence(walk: &[Vertex], order: &[Vertex]) -> bool {
    let reversed: Vec<Vertex> = order.iter().rev().copied().collect();
    [order.to_vec(), reversed].iter().any(|ord| {
        (0..walk.len()).filter(|&p| walk[p] == ord[0]).any(|p| {
            let mut next = 1;
            for step in 1..walk.len() {
                if next == ord.len() {
                    break;
                }
                if walk[(p + step) % walk.len()] == ord[next] {
                    next += 1;
                }
            }
            next == ord.len()
        })
    })
}

/// The cycle induced by the vertices sharing a face with `w`, in cyclic
/// order, or `None` when they do not induce a cycle.
pub fn cofacial_cycle(emb: &PlaneEmbedding, w: Vertex) -> Result<Option<Vec<Vertex>>, CofacialError> {
    if w >= emb.n() {
        return Err(GraphError::VertexOutOfRange { vertex: w, n: emb.n() }.into());
    }
    if emb.is_on_outer_face(w) {
        return Err(CofacialError::OnOuterFace(w));
    }
    let g = emb.graph();
    let mut verts: Vec<Vertex> = emb
        .faces
        .iter()
        .filter(|f| f.contains(&w))
        .flat_map(|f| f.iter().copied())
        .filter(|&v| v != w)
        .collect();
    verts = normalized(&verts);
    Ok(induced_cycle(&g, &verts))
}

/// The vertices of `s` in cycle order when `g[s]` is a cycle.
pub fn induced_cycle(g: &Graph, s: &[Vertex]) -> Option<Vec<Vertex>> {
    if s.len() < 3 {
        return None;
    }
    let inside = g.mask(s);
    let nbrs = |v: Vertex| -> Vec<Vertex> { g.neighbors(v).iter().copied().filter(|&x| inside[x]).collect() };
    if s.iter().any(|&v| nbrs(v).len() != 2) {
        return None;
    }
    let mut order = vec![s[0]];
    let mut prev = s[0];
    let mut cur = nbrs(s[0])[0];
    while cur != s[0] {
        order.push(cur);
        let nx = nbrs(cur);
        let next = if nx[0] == prev { nx[1] } else { nx[0] };
        prev = cur;
        cur = next;
    }
    (order.len() == s.len()).then_some(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::planarity::is_planar;

    fn apex_oracle(g: &Graph, a: &[Vertex]) -> bool {
        let (h, _) = g.with_new_vertex(a).unwrap();
        is_planar(&h)
    }

    #[test]
    fn boundary_examples() {
        let k4 = families::complete(4);
        assert!(plane_with_boundary(&k4, &[0, 1, 2, 3]).unwrap().is_none());
        assert!(!apex_oracle(&k4, &[0, 1, 2, 3]));
        let e = plane_with_boundary(&k4, &[0, 1, 2]).unwrap().unwrap();
        e.validate(&k4).unwrap();
        let ico = families::icosahedron();
        for v in ico.vertices() {
            assert!(plane_with_boundary(&ico, &[v]).unwrap().unwrap().is_on_outer_face(v));
        }
        // The chord can be drawn inside, leaving the hexagon as outer face.
        let chorded = families::cycle(6).with_edges(&[(0, 3)]).unwrap();
        let all: Vec<_> = (0..6).collect();
        let e = plane_with_boundary(&chorded, &all).unwrap().unwrap();
        assert_eq!(e.face_degree[e.outer_face()], 6);
        assert!(apex_oracle(&chorded, &all));
        // Two chords that must cross inside leave no common face.
        let crossed = chorded.with_edges(&[(1, 4), (2, 5)]).unwrap();
        assert!(plane_with_boundary(&crossed, &all).unwrap().is_none());
        assert!(!apex_oracle(&crossed, &all));
    }

    #[test]
    fn cyclic_order_examples() {
        let c4 = families::cycle(4);
        let e = plane_in_cyclic_order(&c4, &[0, 1, 2, 3]).unwrap().unwrap();
        e.validate(&c4).unwrap();
        assert!(plane_in_cyclic_order(&c4, &[0, 2, 1, 3]).unwrap().is_none());
        assert!(plane_in_cyclic_order(&c4, &[3, 2, 1, 0]).unwrap().is_some());
        let (g, s) = crate::tk5::gadget::build_gadget(None).unwrap();
        let (h, map) = g.remove_vertices(&[s.a]).unwrap();
        let ai: Vec<Vertex> = s.a_i.iter().map(|&x| map.iter().position(|&m| m == x).unwrap()).collect();
        let e = plane_in_cyclic_order(&h, &ai).unwrap().unwrap();
        e.validate(&h).unwrap();
        assert_eq!(e.face_degree[e.outer_face()], 8);
    }

    #[test]
    fn disconnected_boundary() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(plane_in_cyclic_order(&g, &[0, 1, 2, 3]).unwrap().is_some());
    }

    #[test]
    fn cofacial_examples() {
        let w5 = families::wheel(5);
        let e = plane_with_boundary(&w5, &[1, 2, 3]).unwrap().unwrap();
        assert_eq!(cofacial_cycle(&e, 0).unwrap().unwrap().len(), 5);
        assert!(matches!(cofacial_cycle(&e, 1), Err(CofacialError::OnOuterFace(1))));
        let oct = families::octahedron();
        let e = plane_with_boundary(&oct, &[0]).unwrap().unwrap();
        let c = cofacial_cycle(&e, 1).unwrap().unwrap();
        assert_eq!(normalized(&c), vec![2, 3, 4, 5]);
        let grid = families::grid(3, 3);
        let e = plane_with_boundary(&grid, &[0, 2, 8]).unwrap().unwrap();
        let c = cofacial_cycle(&e, 4).unwrap().unwrap();
        assert_eq!(normalized(&c), vec![0, 1, 2, 3, 5, 6, 7, 8]);
    }

    #[test]
    fn cofacial_non_cycle() {
        // The rim chord 1-3 has to run outside, so the hub's cofacial set
        // is the rim with a chord.
        let g = families::wheel(5).with_edges(&[(1, 3)]).unwrap();
        let e = plane_with_boundary(&g, &[1, 3, 4]).unwrap().unwrap();
        assert_eq!(cofacial_cycle(&e, 0).unwrap(), None);
    }
}
