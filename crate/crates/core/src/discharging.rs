//! Charge bookkeeping on plane graphs and `K4^-` detection.
//!
//! Every vertex and face `t` starts with `sigma(t) = 4 - d(t)`. Each
//! triangular face then sends `1/2` to two incident vertices picked by a
//! [`RecipientRule`], giving `tau`. Charges are kept doubled so that all
//! arithmetic stays in integers.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{normalized, ContractionSpec, Graph, Vertex};
use crate::planarity::PlaneEmbedding;
use crate::report::{self, Checked, HypothesisError};
use crate::separation::{Separation, Side};

/// An exact half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Half(pub i64);

impl Half {
    pub fn from_int(x: i64) -> Half {
        Half(2 * x)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }
}

impl std::ops::Add for Half {
    type Output = Half;
    fn add(self, o: Half) -> Half {
        Half(self.0 + o.0)
    }
}

impl std::ops::Sub for Half {
    type Output = Half;
    fn sub(self, o: Half) -> Half {
        Half(self.0 - o.0)
    }
}

impl std::iter::Sum for Half {
    fn sum<I: Iterator<Item = Half>>(it: I) -> Half {
        Half(it.map(|h| h.0).sum())
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// How a triangular face picks the two vertices that receive its charge.
/// Every rule is deterministic: preferred vertices first, lowest ids first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum RecipientRule {
    /// The two lowest-id vertices of the face.
    LowestId,
    /// Prefer vertices outside the boundary set.
    AvoidBoundary { boundary: Vec<Vertex> },
    /// Prefer vertices outside the given neighbourhood.
    AvoidNeighbors { neighbors: Vec<Vertex> },
}

impl RecipientRule {
    fn avoided(&self) -> &[Vertex] {
        match self {
            RecipientRule::LowestId => &[],
            RecipientRule::AvoidBoundary { boundary } => boundary,
            RecipientRule::AvoidNeighbors { neighbors } => neighbors,
        }
    }

    /// The two recipients for the triangle `face`, and whether the rule had
    /// to fall back on an avoided vertex.
    pub fn choose(&self, face: &[Vertex]) -> ([Vertex; 2], bool) {
        let avoid = self.avoided();
        let mut sorted = face.to_vec();
        sorted.sort_unstable();
        sorted.sort_by_key(|v| avoid.contains(v));
        let fallback = avoid.contains(&sorted[1]);
        ([sorted[0], sorted[1]], fallback)
    }
}

/// `sigma` and `tau` on the vertices and faces of one plane embedding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeState {
    pub sigma_vertex: Vec<i64>,
    pub sigma_face: Vec<i64>,
    pub tau_vertex: Vec<Half>,
    pub tau_face: Vec<Half>,
    /// Triangular face index and its two recipients.
    pub triangle_assignments: Vec<(usize, [Vertex; 2])>,
    /// Triangles where the rule could not avoid its excluded set.
    pub fallbacks: usize,
}

impl ChargeState {
    pub fn sigma_total(&self) -> i64 {
        self.sigma_vertex.iter().sum::<i64>() + self.sigma_face.iter().sum::<i64>()
    }

    pub fn tau_total(&self) -> Half {
        self.tau_vertex.iter().copied().sum::<Half>() + self.tau_face.iter().copied().sum::<Half>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DischargeError {
    #[error("embedding has {0} components, expected a connected plane graph")]
    Disconnected(usize),
}

pub fn discharge(emb: &PlaneEmbedding, rule: &RecipientRule) -> Result<ChargeState, DischargeError> {
    if emb.num_components() != 1 {
        return Err(DischargeError::Disconnected(emb.num_components()));
    }
    let sigma_vertex: Vec<i64> = emb.rotation.iter().map(|r| 4 - r.len() as i64).collect();
    let sigma_face: Vec<i64> = emb.face_degree.iter().map(|&d| 4 - d as i64).collect();
    let mut tau_vertex: Vec<Half> = sigma_vertex.iter().map(|&s| Half::from_int(s)).collect();
    let mut tau_face: Vec<Half> = sigma_face.iter().map(|&s| Half::from_int(s)).collect();
    let mut triangle_assignments = Vec::new();
    let mut fallbacks = 0;
    for (i, face) in emb.faces.iter().enumerate() {
        if emb.face_degree[i] != 3 {
            continue;
        }
        let (pick, fell_back) = rule.choose(face);
        fallbacks += fell_back as usize;
        for &v in &pick {
            tau_vertex[v] = tau_vertex[v] + Half(1);
        }
        tau_face[i] = tau_face[i] - Half(2);
        triangle_assignments.push((i, pick));
    }
    Ok(ChargeState {
        sigma_vertex,
        sigma_face,
        tau_vertex,
        tau_face,
        triangle_assignments,
        fallbacks,
    })
}

/// Upper bound on `tau(v)` for a vertex of degree `d` in a `K4^-`-free
/// plane graph: `4-3k`, `3-3k`, `5/2-3k`, `3/2-3k` for `d = 4k, .., 4k+3`.
pub fn tau_bound(d: usize) -> Half {
    let k = (d / 4) as i64;
    Half(
        match d % 4 {
            0 => 8,
            1 => 6,
            2 => 5,
            _ => 3,
        } - 6 * k,
    )
}

/// Number of facial triangles incident with each vertex.
pub fn facial_triangle_counts(emb: &PlaneEmbedding) -> Vec<usize> {
    let mut count = vec![0; emb.n()];
    for (i, f) in emb.faces.iter().enumerate() {
        if emb.face_degree[i] == 3 {
            for &v in f {
                count[v] += 1;
            }
        }
    }
    count
}

/// Four vertices spanning `K4` minus one edge: the spine `u v` is adjacent
/// to both tips, and the tips need not be adjacent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct K4MinusWitness {
    pub spine: [Vertex; 2],
    pub tips: [Vertex; 2],
}

impl K4MinusWitness {
    pub fn vertices(&self) -> [Vertex; 4] {
        [self.spine[0], self.spine[1], self.tips[0], self.tips[1]]
    }

    /// The five required edges.
    pub fn edges(&self) -> [(Vertex, Vertex); 5] {
        let [u, v] = self.spine;
        let [x, y] = self.tips;
        [(u, v), (u, x), (v, x), (u, y), (v, y)]
    }

    /// The pair whose adjacency is unconstrained.
    pub fn missing_pair(&self) -> (Vertex, Vertex) {
        (self.tips[0], self.tips[1])
    }

    pub fn validate(&self, g: &Graph) -> bool {
        let vs = self.vertices();
        vs.iter().all(|&v| v < g.n())
            && normalized(&vs).len() == 4
            && self.edges().iter().all(|&(a, b)| g.has_edge(a, b))
    }

    pub fn relabel(&self, map: &[Vertex]) -> K4MinusWitness {
        K4MinusWitness {
            spine: self.spine.map(|v| map[v]),
            tips: self.tips.map(|v| map[v]),
        }
    }
}

/// A `K4^-` in `g - forbidden`: edges in lexicographic order, then the two
/// lowest common neighbours.
pub fn find_k4_minus(g: &Graph, forbidden: &[Vertex]) -> Option<K4MinusWitness> {
    let banned = g.mask(&forbidden.iter().copied().filter(|&v| v < g.n()).collect::<Vec<_>>());
    for (u, v) in g.edges() {
        if banned[u] || banned[v] {
            continue;
        }
        let mut common = g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&x| !banned[x] && g.has_edge(v, x));
        if let (Some(x), Some(y)) = (common.next(), common.next()) {
            return Some(K4MinusWitness { spine: [u, v], tips: [x, y] });
        }
    }
    None
}

/// A `K4^-` in which `a` is a tip, so that `a` has degree 2 in it.
pub fn find_k4_minus_with_tip(g: &Graph, a: Vertex) -> Option<K4MinusWitness> {
    let nbrs = g.neighbors(a);
    for (i, &u) in nbrs.iter().enumerate() {
        for &v in &nbrs[i + 1..] {
            if !g.has_edge(u, v) {
                continue;
            }
            if let Some(&x) = g.neighbors(u).iter().find(|&&x| x != a && g.has_edge(v, x)) {
                return Some(K4MinusWitness { spine: [u, v], tips: [a, x] });
            }
        }
    }
    None
}

/// For a connected `(5, A)`-connected graph with `|A| = 5`, `|V| >= 7` and
/// all of `A` on one face, `G - a` contains `K4^-`.
pub fn verify_planarside(g: &Graph, a_set: &[Vertex], a: Vertex) -> Result<Checked<K4MinusWitness>, HypothesisError> {
    let a_set = report::require_set(g, "A", a_set, 5)?;
    report::require_member(a, &a_set, "A")?;
    report::require_min_vertices(g, 7)?;
    if !g.is_connected() {
        return Err(HypothesisError::NotConnected { k: 1, cut: Vec::new() });
    }
    report::require_ka_connected(g, 5, &a_set)?;
    report::require_cofacial(g, &a_set)?;
    Ok(match find_k4_minus(g, &[a]) {
        Some(w) => Checked::holds(w),
        None => report::violation(g, format!("A={a_set:?} a={a}"), "G - a contains no K4^-"),
    })
}

/// Which disjunct of the six-vertex boundary statement was found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SixCutOutcome {
    /// `G - a` contains `K4^-`.
    K4Minus { witness: K4MinusWitness },
    /// `G` contains a `K4^-` in which `a` has degree 2.
    K4MinusApexTip { witness: K4MinusWitness },
    /// A 5-separation with `a` in the cut, `A` in side1, `|V(G2)| >= 7` and
    /// `(G2 - a, cut - a)` planar.
    Separation { separation: Separation },
}

/// Checks that a 5-separation is one the six-vertex statement accepts.
pub fn six_cut_separation_ok(g: &Graph, a_set: &[Vertex], a: Vertex, sep: &Separation) -> bool {
    if Separation::new(g, &sep.side1, &sep.side2).as_ref() != Ok(sep) {
        return false;
    }
    if sep.order() != 5 || !sep.cut.contains(&a) || sep.side2.len() < 7 {
        return false;
    }
    if a_set.iter().any(|v| !sep.side1.contains(v)) {
        return false;
    }
    apex_side_planar(g, sep, a)
}

/// Whether `(G2 - a, cut - a)` is planar, reading `G2` off `sep`.
pub fn apex_side_planar(g: &Graph, sep: &Separation, a: Vertex) -> bool {
    let (h, map) = sep.side_induced(g, Side::Second);
    let Some(ai) = map.iter().position(|&m| m == a) else {
        return false;
    };
    let (h2, map2) = h.remove_vertices(&[ai]).expect("in range");
    let boundary: Vec<Vertex> = sep
        .cut
        .iter()
        .filter(|&&c| c != a)
        .map(|&c| map2.iter().position(|&m| map[m] == c).expect("cut vertex in side"))
        .collect();
    crate::planarity::plane_with_boundary(&h2, &boundary)
        .expect("valid ids")
        .is_some()
}

/// For `|A| = 6`, `|V| >= 8`, `(G - a, A - a)` planar and `G`
/// `(5, A)`-connected: a `K4^-` in `G - a`, a `K4^-` with `a` at a tip, or
/// an apex-side 5-separation.
pub fn verify_6cut2(
    g: &Graph,
    a_set: &[Vertex],
    a: Vertex,
    cap: usize,
) -> Result<Checked<SixCutOutcome>, HypothesisError> {
    let a_set = report::require_set(g, "A", a_set, 6)?;
    report::require_member(a, &a_set, "A")?;
    report::require_min_vertices(g, 8)?;
    let (ga, map) = g.remove_vertices(&[a])?;
    let rest: Vec<Vertex> = a_set
        .iter()
        .filter(|&&x| x != a)
        .map(|&x| map.iter().position(|&m| m == x).expect("kept"))
        .collect();
    report::require_cofacial(&ga, &rest)?;
    report::require_ka_connected(g, 5, &a_set)?;
    if let Some(w) = find_k4_minus(g, &[a]) {
        return Ok(Checked::holds(SixCutOutcome::K4Minus { witness: w }));
    }
    if let Some(w) = find_k4_minus_with_tip(g, a) {
        return Ok(Checked::holds(SixCutOutcome::K4MinusApexTip { witness: w }));
    }
    let q = crate::connectivity::SeparationQuery::new(5)
        .exact_order(5)
        .cut_contains(&[a])
        .sides(&a_set, &[])
        .side_sizes(0, 7)
        .cap(cap);
    let mut found = None;
    let _ = crate::connectivity::for_each_separation(g, &q, |s| {
        if apex_side_planar(g, s, a) {
            found = Some(s.clone());
            return std::ops::ControlFlow::Break(());
        }
        std::ops::ControlFlow::Continue(())
    })
    .map_err(|_| HypothesisError::Unverified {
        what: "5-separation disjunct".into(),
        n: g.n(),
        cap,
    })?;
    Ok(match found {
        Some(separation) => Checked::holds(SixCutOutcome::Separation { separation }),
        None => report::violation(g, format!("A={a_set:?} a={a}"), "no K4^- and no apex-side 5-separation"),
    })
}

/// For a 5-connected nonplanar `G` and `T` inducing `K2` or `K3` with
/// `G/T` 5-connected and planar, `G - V(T)` contains `K4^-`.
pub fn verify_contraction_prop(g: &Graph, t: &[Vertex]) -> Result<Checked<K4MinusWitness>, HypothesisError> {
    g.check_vertices(t)?;
    let t = normalized(t);
    if !(2..=3).contains(&t.len()) || t.iter().enumerate().any(|(i, &u)| t[i + 1..].iter().any(|&v| !g.has_edge(u, v))) {
        return Err(HypothesisError::structure(format!("{t:?} does not induce K2 or K3")));
    }
    report::require_k_connected(g, 5)?;
    report::require_nonplanar(g, "G")?;
    let c = g.contract(&ContractionSpec::Set(t.clone()))?;
    report::require_k_connected(&c.graph, 5)?;
    report::require_planar(&c.graph, "G/T")?;
    Ok(match find_k4_minus(g, &t) {
        Some(w) => Checked::holds(w),
        None => report::violation(g, format!("T={t:?}"), "G - V(T) contains no K4^-"),
    })
}
