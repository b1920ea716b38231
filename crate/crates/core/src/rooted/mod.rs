//! Rooted topological `H` (the six-vertex tree with two adjacent degree-3
//! vertices): feasibility, the four-way classification of quadruples, and
//! cycles through three prescribed vertices.

mod obstruction;
mod three_cycle;

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::connectivity::{find_separation, Disjointness, PathSystem, SearchError, SeparationQuery, DEFAULT_SEARCH_CAP};
use crate::flow::{FlowSpec, VertexFlow};
use crate::graph::{normalized, Graph, GraphError, Vertex};
use crate::graph6::emit_graph6;
use crate::paths::for_each_induced_path;
use crate::report::Checked;
use crate::separation::Separation;

pub use obstruction::{find_obstruction, ObstructionDecomposition, ObstructionType};
pub use three_cycle::{cycle_through_three, find_cycle_through, ThreeCycleCase, ThreeCycleError, ThreeCycleObstruction, ThreeCycleVerdict};

/// `(G, u1, u2, A)` with `u1 != u2`, `|A| = 4` and `A` avoiding both roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quadruple {
    pub g: Graph,
    pub u1: Vertex,
    pub u2: Vertex,
    pub a_set: [Vertex; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadrupleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("roots must be distinct")]
    SameRoots,
    #[error("A must consist of four distinct vertices other than the roots")]
    BadTerminals,
    #[error(transparent)]
    Search(#[from] SearchError),
}

impl Quadruple {
    pub fn new(g: Graph, u1: Vertex, u2: Vertex, a_set: [Vertex; 4]) -> Result<Self, QuadrupleError> {
        g.check_vertices(&[u1, u2])?;
        g.check_vertices(&a_set)?;
        if u1 == u2 {
            return Err(QuadrupleError::SameRoots);
        }
        let mut a = a_set;
        a.sort_unstable();
        if normalized(&a).len() != 4 || a.contains(&u1) || a.contains(&u2) {
            return Err(QuadrupleError::BadTerminals);
        }
        Ok(Quadruple { g, u1, u2, a_set: a })
    }

    pub fn roots(&self) -> [Vertex; 2] {
        [self.u1, self.u2]
    }

    pub(crate) fn describe(&self) -> String {
        format!("{} u1={} u2={} A={:?}", emit_graph6(&self.g), self.u1, self.u2, self.a_set)
    }
}

/// A rooted `TH`: the `u1-u2` connector and two paths from each root to
/// the terminals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThWitness {
    pub connector: Vec<Vertex>,
    pub u1_paths: [Vec<Vertex>; 2],
    pub u2_paths: [Vec<Vertex>; 2],
}

impl ThWitness {
    /// Checks that the five paths realise `H` rooted at `q`.
    pub fn validate(&self, q: &Quadruple) -> bool {
        let g = &q.g;
        let all: Vec<&Vec<Vertex>> = std::iter::once(&self.connector)
            .chain(self.u1_paths.iter())
            .chain(self.u2_paths.iter())
            .collect();
        for p in &all {
            if p.len() < 2 || p.iter().any(|&v| v >= g.n()) || p.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
                return false;
            }
        }
        if self.connector[0] != q.u1 || *self.connector.last().expect("len >= 2") != q.u2 {
            return false;
        }
        let mut ends = Vec::new();
        for (root, ps) in [(q.u1, &self.u1_paths), (q.u2, &self.u2_paths)] {
            for p in ps.iter() {
                if p[0] != root {
                    return false;
                }
                ends.push(*p.last().expect("len >= 2"));
            }
        }
        ends.sort_unstable();
        if ends != q.a_set {
            return false;
        }
        let mut count = vec![0usize; g.n()];
        for p in &all {
            for &v in p.iter() {
                count[v] += 1;
            }
        }
        g.vertices().all(|v| {
            let want = if v == q.u1 || v == q.u2 { 3 } else { 1 };
            count[v] == 0 || count[v] == want
        }) && count[q.u1] == 3
            && count[q.u2] == 3
    }
}

/// Searches for a rooted `TH`: each induced connector path, then a flow
/// sending two units from each root to distinct terminals.
pub fn th_feasible(q: &Quadruple) -> Option<ThWitness> {
    let g = &q.g;
    let mut blocked = g.mask(&q.a_set);
    blocked[q.u1] = false;
    blocked[q.u2] = false;
    let mut found = None;
    let _ = for_each_induced_path(g, q.u1, q.u2, &blocked, &mut |conn| {
        let mut spec = FlowSpec::new(g.n());
        spec.block(&conn[1..conn.len() - 1]);
        spec.source(q.u1, 2).source(q.u2, 2);
        for &a in &q.a_set {
            spec.terminal(a, 1);
        }
        let mut f = VertexFlow::build(g, &spec);
        if f.run(4) < 4 {
            return ControlFlow::Continue(());
        }
        let paths = f.paths();
        let mut from1: Vec<Vec<Vertex>> = paths.iter().filter(|p| p[0] == q.u1).cloned().collect();
        let mut from2: Vec<Vec<Vertex>> = paths.iter().filter(|p| p[0] == q.u2).cloned().collect();
        from1.sort();
        from2.sort();
        if from1.len() != 2 || from2.len() != 2 {
            return ControlFlow::Continue(());
        }
        found = Some(ThWitness {
            connector: conn.to_vec(),
            u1_paths: [from1[0].clone(), from1[1].clone()],
            u2_paths: [from2[0].clone(), from2[1].clone()],
        });
        ControlFlow::Break(())
    });
    found
}

/// Outcome of [`classify_quadruple`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum QuadrupleVerdict {
    Feasible { witness: ThWitness },
    /// `|K ∩ L| <= 2`, `u_i` in `K - L`, `A` and the other root in `L`
    /// (`K` is side1).
    SmallSideSeparation { root: usize, separation: Separation },
    /// `|K ∩ L| <= 4`, both roots in `K - L`, `A` in `L`.
    FourCutSeparation { separation: Separation },
    /// The same with `V(L) = A`: `L` is `A` plus the edges of `G[A]`, `K`
    /// is `G` minus those edges. Only reported when nothing else applies.
    EdgeSeparation { edges: Vec<(Vertex, Vertex)> },
    Obstruction { decomposition: ObstructionDecomposition },
}

impl QuadrupleVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, QuadrupleVerdict::Feasible { .. })
    }

    /// Independent re-check of the verdict's certificate.
    pub fn validate(&self, q: &Quadruple) -> bool {
        match self {
            QuadrupleVerdict::Feasible { witness } => witness.validate(q),
            QuadrupleVerdict::SmallSideSeparation { root, separation } => {
                let (ui, other) = match root {
                    1 => (q.u1, q.u2),
                    2 => (q.u2, q.u1),
                    _ => return false,
                };
                separation_ok(&q.g, separation, 2)
                    && separation.private(crate::Side::First).contains(&ui)
                    && q.a_set.iter().chain([&other]).all(|v| separation.side2.contains(v))
            }
            QuadrupleVerdict::FourCutSeparation { separation } => {
                let private = separation.private(crate::Side::First);
                separation_ok(&q.g, separation, 4)
                    && private.contains(&q.u1)
                    && private.contains(&q.u2)
                    && q.a_set.iter().all(|v| separation.side2.contains(v))
            }
            QuadrupleVerdict::Obstruction { decomposition } => decomposition.check(q).is_ok(),
            QuadrupleVerdict::EdgeSeparation { edges } => !edges.is_empty() && *edges == inner_edges(&q.g, &q.a_set),
        }
    }
}

fn inner_edges(g: &Graph, a: &[Vertex; 4]) -> Vec<(Vertex, Vertex)> {
    g.edges().into_iter().filter(|(u, v)| a.contains(u) && a.contains(v)).collect()
}

fn separation_ok(g: &Graph, s: &Separation, max_order: usize) -> bool {
    Separation::new(g, &s.side1, &s.side2).as_ref() == Ok(s) && s.order() <= max_order
}

/// Classifies a quadruple: a small-side separation, then feasibility, then a
/// four-cut separation, then an obstruction, then the edge separation. A
/// quadruple matching none of them is reported as a violation.
pub fn classify_quadruple(q: &Quadruple) -> Result<Checked<QuadrupleVerdict>, QuadrupleError> {
    classify_with_cap(q, DEFAULT_SEARCH_CAP)
}

pub fn classify_with_cap(q: &Quadruple, cap: usize) -> Result<Checked<QuadrupleVerdict>, QuadrupleError> {
    let g = &q.g;
    for (root, ui, other) in [(1, q.u1, q.u2), (2, q.u2, q.u1)] {
        let mut l: Vec<Vertex> = q.a_set.to_vec();
        l.push(other);
        let query = SeparationQuery::new(2).private(&[ui], &[]).sides(&[], &l).cap(cap);
        if let Some(separation) = find_separation(g, &query)? {
            return Ok(Checked::holds(QuadrupleVerdict::SmallSideSeparation { root, separation }));
        }
    }
    if let Some(witness) = th_feasible(q) {
        return Ok(Checked::holds(QuadrupleVerdict::Feasible { witness }));
    }
    let query = SeparationQuery::new(4).private(&[q.u1, q.u2], &[]).sides(&[], &q.a_set).cap(cap);
    if let Some(separation) = find_separation(g, &query)? {
        return Ok(Checked::holds(QuadrupleVerdict::FourCutSeparation { separation }));
    }
    let edges = inner_edges(g, &q.a_set);
    Ok(match find_obstruction(q) {
        Some(decomposition) => Checked::holds(QuadrupleVerdict::Obstruction { decomposition }),
        None if !edges.is_empty() => Checked::holds(QuadrupleVerdict::EdgeSeparation { edges }),
        None => Checked::Violation {
            input: q.describe(),
            detail: "infeasible quadruple with no separation and no obstruction".into(),
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanPropertyError {
    #[error("decomposition is not of type IV")]
    NotTypeFour,
    #[error("decomposition fails a defining condition: {0}")]
    BadDecomposition(String),
    #[error("graph is not (4, A)-connected: cut {0:?}")]
    NotConnected(Vec<Vertex>),
    #[error("{0} is not a terminal")]
    NotTerminal(Vertex),
    #[error("root index must be 1 or 2")]
    BadRoot,
    #[error("no such path system exists")]
    Missing,
}

/// For a `(4, A)`-connected type-IV obstruction: independent paths from
/// `u_i` to `a` and from `u_{3-i}` to the other three terminals. The first
/// path is the one from `u_i`.
pub fn type4_fan_property(
    q: &Quadruple,
    decomp: &ObstructionDecomposition,
    i: usize,
    a: Vertex,
) -> Result<PathSystem, FanPropertyError> {
    if decomp.kind != ObstructionType::IV {
        return Err(FanPropertyError::NotTypeFour);
    }
    decomp.check(q).map_err(FanPropertyError::BadDecomposition)?;
    let (ui, uj) = match i {
        1 => (q.u1, q.u2),
        2 => (q.u2, q.u1),
        _ => return Err(FanPropertyError::BadRoot),
    };
    if !q.a_set.contains(&a) {
        return Err(FanPropertyError::NotTerminal(a));
    }
    let report = crate::connectivity::is_ka_connected(&q.g, 4, &q.a_set).expect("valid input");
    if !report.holds {
        return Err(FanPropertyError::NotConnected(report.witness_cut.unwrap_or_default()));
    }
    let g = &q.g;
    let others: Vec<Vertex> = q.a_set.iter().copied().filter(|&x| x != a).collect();
    let mut blocked = g.mask(&others);
    blocked[uj] = true;
    let mut out = None;
    let _ = for_each_induced_path(g, ui, a, &blocked, &mut |p| {
        let mut spec = FlowSpec::new(g.n());
        spec.block(p);
        spec.source(uj, 3);
        for &t in &others {
            spec.terminal(t, 1);
        }
        let mut f = VertexFlow::build(g, &spec);
        if f.run(3) < 3 {
            return ControlFlow::Continue(());
        }
        let mut paths = vec![p.to_vec()];
        let mut rest = f.paths();
        rest.sort_by_key(|q| *q.last().expect("non-empty"));
        paths.extend(rest);
        out = Some(PathSystem {
            paths,
            disjointness: Disjointness::Independent,
            hub: None,
        });
        ControlFlow::Break(())
    });
    out.ok_or(FanPropertyError::Missing)
}
