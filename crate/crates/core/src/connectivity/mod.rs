//! k-connectivity, (k,A)-connectivity, Menger fans and fan rerouting.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::flow::{FlowSpec, Role, VertexFlow, UNBOUNDED};
use crate::graph::{normalized, Graph, GraphError, Vertex};

mod search;
pub use search::*;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectivityError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("connectivity target must be at least 1")]
    ZeroTarget,
    #[error("asked for {count} paths but only {available} targets")]
    TooManyPaths { count: usize, available: usize },
    #[error("start vertex {0} is one of the targets")]
    StartIsTarget(Vertex),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Disjointness {
    /// No vertex of one path is an internal vertex of another.
    Independent,
    /// Pairwise vertex-disjoint.
    FullyDisjoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSystem {
    pub paths: Vec<Vec<Vertex>>,
    pub disjointness: Disjointness,
    /// Common first vertex, when the system is a fan.
    pub hub: Option<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathSystemError {
    #[error("path {0} is empty")]
    EmptyPath(usize),
    #[error("path {path} repeats vertex {vertex}")]
    NotSimple { path: usize, vertex: Vertex },
    #[error("path {path}: {u}-{v} is not an edge")]
    MissingEdge { path: usize, u: Vertex, v: Vertex },
    #[error("vertex {vertex} of path {path} is internal to path {other}")]
    NotIndependent { vertex: Vertex, path: usize, other: usize },
    #[error("paths {0} and {1} share vertex {2}")]
    NotDisjoint(usize, usize, Vertex),
    #[error("path {0} does not start at the hub")]
    WrongHub(usize),
}

impl PathSystem {
    pub fn ends(&self) -> Vec<Vertex> {
        self.paths.iter().map(|p| *p.last().expect("non-empty")).collect()
    }

    /// Re-checks the system against `g` and its declared contract.
    pub fn validate(&self, g: &Graph) -> Result<(), PathSystemError> {
        for (i, p) in self.paths.iter().enumerate() {
            if p.is_empty() {
                return Err(PathSystemError::EmptyPath(i));
            }
            let mut seen = std::collections::HashSet::new();
            for &v in p {
                if v >= g.n() || !seen.insert(v) {
                    return Err(PathSystemError::NotSimple { path: i, vertex: v });
                }
            }
            for w in p.windows(2) {
                if !g.has_edge(w[0], w[1]) {
                    return Err(PathSystemError::MissingEdge { path: i, u: w[0], v: w[1] });
                }
            }
            if let Some(h) = self.hub {
                if p[0] != h {
                    return Err(PathSystemError::WrongHub(i));
                }
            }
        }
        for (i, p) in self.paths.iter().enumerate() {
            for (j, q) in self.paths.iter().enumerate() {
                if i == j {
                    continue;
                }
                match self.disjointness {
                    Disjointness::Independent => {
                        if q.len() > 2 {
                            if let Some(&v) = p.iter().find(|v| q[1..q.len() - 1].contains(v)) {
                                return Err(PathSystemError::NotIndependent { vertex: v, path: i, other: j });
                            }
                        }
                    }
                    Disjointness::FullyDisjoint => {
                        if i < j {
                            if let Some(&v) = p.iter().find(|v| q.contains(v)) {
                                return Err(PathSystemError::NotDisjoint(i, j, v));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Result of a connectivity query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityReport {
    /// The queried `k`.
    pub target: usize,
    pub holds: bool,
    /// Largest `k` for which the property holds. When no cut can violate
    /// the property at all this is the vertex count.
    pub value: usize,
    /// A violating cut of size `value`, when `holds` is false and one exists.
    pub witness_cut: Option<Vec<Vertex>>,
}

/// Minimum number of vertices separating `s` from `t` (non-adjacent), and
/// a cut of that size.
pub fn local_connectivity(g: &Graph, s: Vertex, t: Vertex, limit: usize) -> (usize, Option<Vec<Vertex>>) {
    let mut spec = FlowSpec::new(g.n());
    spec.source(s, UNBOUNDED).terminal(t, UNBOUNDED);
    spec.role[t] = Role::Free;
    let mut f = VertexFlow::build(g, &spec);
    let value = f.run(limit as i32) as usize;
    if value < limit {
        (value, f.min_cut())
    } else {
        (value, None)
    }
}

/// Vertex connectivity and a minimum cut (none for complete graphs).
pub fn vertex_connectivity(g: &Graph) -> (usize, Option<Vec<Vertex>>) {
    let n = g.n();
    if n == 0 {
        return (0, None);
    }
    let mut best = n - 1;
    let mut best_cut = None;
    for s in g.vertices() {
        for t in s + 1..n {
            if g.has_edge(s, t) {
                continue;
            }
            let (k, cut) = local_connectivity(g, s, t, best);
            if k < best {
                best = k;
                best_cut = cut;
                if best == 0 {
                    return (0, best_cut);
                }
            }
        }
    }
    (best, best_cut)
}

/// Whether `g` has more than `k` vertices and no cut of size below `k`.
pub fn is_k_connected(g: &Graph, k: usize) -> Result<ConnectivityReport, ConnectivityError> {
    if k == 0 {
        return Err(ConnectivityError::ZeroTarget);
    }
    let (value, cut) = vertex_connectivity(g);
    let holds = g.n() > k && value >= k;
    Ok(ConnectivityReport {
        target: k,
        holds,
        value,
        witness_cut: if holds { None } else { cut },
    })
}

/// `(k, A)`-connectivity: every cut `T` with `|T| < k` leaves each component
/// of `G - T` meeting `a_set`.
pub fn is_ka_connected(g: &Graph, k: usize, a_set: &[Vertex]) -> Result<ConnectivityReport, ConnectivityError> {
    if k == 0 {
        return Err(ConnectivityError::ZeroTarget);
    }
    g.check_vertices(a_set)?;
    let (value, cut) = ka_connectivity(g, a_set, k);
    let holds = value >= k;
    Ok(ConnectivityReport {
        target: k,
        holds,
        value,
        witness_cut: if holds { None } else { cut },
    })
}

/// Smallest cut isolating an `A`-free component, searched up to `limit`
/// (values at or above `limit` are reported as `limit` unless no candidate
/// pair exists, in which case the vertex count is returned).
fn ka_connectivity(g: &Graph, a_set: &[Vertex], limit: usize) -> (usize, Option<Vec<Vertex>>) {
    let in_a = g.mask(a_set);
    let mut best: Option<(usize, Option<Vec<Vertex>>)> = None;
    for v in g.vertices().filter(|&v| !in_a[v]) {
        for w in g.vertices() {
            if w == v || g.has_edge(v, w) {
                continue;
            }
            let bound = best.as_ref().map_or(limit, |b| b.0);
            let mut spec = FlowSpec::new(g.n());
            spec.source(v, UNBOUNDED);
            spec.role[w] = Role::Free;
            spec.terminal(w, UNBOUNDED);
            for &a in a_set {
                if a != w {
                    spec.terminal(a, 1);
                }
            }
            let mut f = VertexFlow::build(g, &spec);
            let value = f.run(bound as i32) as usize;
            match &best {
                Some((b, _)) if value >= *b => {}
                _ if value >= limit && best.is_none() => {
                    best = Some((limit, None));
                }
                _ => {
                    best = Some((value, f.min_cut()));
                    if value == 0 {
                        return best.expect("just set");
                    }
                }
            }
        }
    }
    best.unwrap_or((g.n(), None))
}

/// Outcome of a fan request: the paths, or a small separating cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fan {
    Paths(PathSystem),
    Cut(Vec<Vertex>),
}

/// `count` independent paths from `u` to distinct vertices of `targets`,
/// internally disjoint from `targets`; or a cut of size below `count`
/// separating `u` from `targets`.
pub fn independent_paths(g: &Graph, u: Vertex, targets: &[Vertex], count: usize) -> Result<Fan, ConnectivityError> {
    g.check_vertex(u)?;
    g.check_vertices(targets)?;
    let targets = normalized(targets);
    if targets.contains(&u) {
        return Err(ConnectivityError::StartIsTarget(u));
    }
    if count > targets.len() {
        return Err(ConnectivityError::TooManyPaths { count, available: targets.len() });
    }
    Ok(fan_in(g, u, &targets, count, &[]))
}

/// Fan computation with extra blocked vertices.
pub(crate) fn fan_in(g: &Graph, u: Vertex, targets: &[Vertex], count: usize, blocked: &[Vertex]) -> Fan {
    let mut spec = FlowSpec::new(g.n());
    spec.block(blocked);
    spec.source(u, UNBOUNDED);
    for &t in targets {
        spec.terminal(t, 1);
    }
    let mut f = VertexFlow::build(g, &spec);
    let value = f.run(count as i32) as usize;
    if value >= count {
        Fan::Paths(PathSystem {
            paths: f.paths(),
            disjointness: Disjointness::Independent,
            hub: Some(u),
        })
    } else {
        Fan::Cut(f.min_cut().unwrap_or_default())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RerouteError {
    #[error(transparent)]
    Input(#[from] ConnectivityError),
    #[error("pinned vertex {0} is not in the target set")]
    PinnedOutsideTargets(Vertex),
    #[error("requested {n} paths but only {k} pinned vertices fit")]
    CountBelowPinned { n: usize, k: usize },
    #[error("no fan to the pinned vertices: only {found} of {k} independent paths avoid the target set")]
    NoPinnedFan { found: usize, k: usize },
    #[error("no fan of size {n}: at most {found} independent paths reach the target set")]
    NoFullFan { found: usize, n: usize },
}

/// Fan of `n` independent paths from `u` into `a_set` whose first paths end
/// at `pinned`, in order (rerouting by augmentation from the pinned fan).
pub fn perfect_reroute(
    g: &Graph,
    u: Vertex,
    a_set: &[Vertex],
    pinned: &[Vertex],
    n: usize,
) -> Result<PathSystem, RerouteError> {
    g.check_vertex(u).map_err(ConnectivityError::from)?;
    g.check_vertices(a_set).map_err(ConnectivityError::from)?;
    let a_set = normalized(a_set);
    if a_set.contains(&u) {
        return Err(ConnectivityError::StartIsTarget(u).into());
    }
    if let Some(&p) = pinned.iter().find(|p| !a_set.contains(p)) {
        return Err(RerouteError::PinnedOutsideTargets(p));
    }
    let k = normalized(pinned).len();
    if n < k || k != pinned.len() {
        return Err(RerouteError::CountBelowPinned { n, k });
    }
    if n > a_set.len() {
        return Err(ConnectivityError::TooManyPaths { count: n, available: a_set.len() }.into());
    }
    let mut spec = FlowSpec::new(g.n());
    spec.source(u, UNBOUNDED);
    for &a in &a_set {
        spec.terminal(a, 1);
    }
    let mut f = VertexFlow::build(g, &spec);
    for &a in &a_set {
        if !pinned.contains(&a) {
            f.set_sink_capacity(a, 0);
        }
    }
    let found = f.run(k as i32) as usize;
    if found < k {
        return Err(RerouteError::NoPinnedFan { found, k });
    }
    for &a in &a_set {
        f.set_sink_capacity(a, 1);
    }
    let found = f.run(n as i32) as usize;
    if found < n {
        return Err(RerouteError::NoFullFan { found, n });
    }
    let mut paths = f.paths();
    let mut ordered = Vec::with_capacity(n);
    for &p in pinned {
        let i = paths
            .iter()
            .position(|path| path.last() == Some(&p))
            .expect("augmentation never releases a used terminal");
        ordered.push(paths.remove(i));
    }
    paths.sort_by_key(|p| *p.last().expect("non-empty"));
    ordered.extend(paths);
    Ok(PathSystem {
        paths: ordered,
        disjointness: Disjointness::Independent,
        hub: Some(u),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    /// Brute force: smallest vertex set whose removal disconnects the graph.
    fn brute_connectivity(g: &Graph) -> usize {
        let n = g.n();
        for size in 0..n.saturating_sub(1) {
            let mut found = false;
            let _ = crate::combinatorics::for_each_subset(n, size, |s| {
                let rm = g.mask(s);
                if g.components_avoiding(&rm).len() > 1 {
                    found = true;
                    return std::ops::ControlFlow::Break(());
                }
                std::ops::ControlFlow::Continue(())
            });
            if found {
                return size;
            }
        }
        n.saturating_sub(1)
    }

    #[test]
    fn k6_is_5_connected() {
        let r = is_k_connected(&families::complete(6), 5).unwrap();
        assert!(r.holds);
        assert_eq!(r.value, 5);
        assert!(!is_k_connected(&families::complete(5), 5).unwrap().holds);
    }

    #[test]
    fn petersen_not_4_connected() {
        let p = families::petersen();
        let r = is_k_connected(&p, 4).unwrap();
        assert!(!r.holds);
        let cut = r.witness_cut.unwrap();
        assert_eq!(cut.len(), 3);
        assert!(p.components_avoiding(&p.mask(&cut)).len() > 1);
    }

    #[test]
    fn icosahedron_is_5_connected_by_brute_force() {
        let ico = families::icosahedron();
        assert_eq!(brute_connectivity(&ico), 5);
        assert!(is_k_connected(&ico, 5).unwrap().holds);
    }

    #[test]
    fn flow_connectivity_matches_brute_force() {
        for seed in 0..60 {
            let g = crate::gen::random_graph(8, 0.5, seed);
            assert_eq!(vertex_connectivity(&g).0, brute_connectivity(&g), "seed {seed}");
        }
    }

    #[test]
    fn ka_trivial_cases() {
        let g = families::petersen();
        let all: Vec<_> = g.vertices().collect();
        assert!(is_ka_connected(&g, 7, &all).unwrap().holds);
        let star = families::star(4);
        assert!(is_ka_connected(&star, 2, &[1, 2, 3, 4]).unwrap().holds);
        assert!(is_ka_connected(&star, 5, &[1, 2, 3, 4]).unwrap().holds);
        // An A-free pendant path is cut off by one vertex.
        let p = families::path(4);
        let r = is_ka_connected(&p, 2, &[0, 1]).unwrap();
        assert!(!r.holds);
        assert_eq!(r.value, 1);
    }

    #[test]
    fn fans() {
        let k5 = families::complete(5);
        match independent_paths(&k5, 0, &[1, 2, 3, 4], 4).unwrap() {
            Fan::Paths(ps) => {
                assert_eq!(ps.paths, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![0, 4]]);
                ps.validate(&k5).unwrap();
            }
            Fan::Cut(c) => panic!("unexpected cut {c:?}"),
        }
        let c6 = families::cycle(6);
        match independent_paths(&c6, 0, &[3], 1).unwrap() {
            Fan::Paths(ps) => assert_eq!(ps.paths.len(), 1),
            Fan::Cut(_) => panic!(),
        }
        assert!(matches!(
            independent_paths(&c6, 0, &[3], 2),
            Err(ConnectivityError::TooManyPaths { .. })
        ));
        // Both arcs of C6 to the antipode and its two neighbours' side.
        match independent_paths(&c6, 0, &[2, 4], 2).unwrap() {
            Fan::Paths(ps) => {
                assert_eq!(ps.paths, vec![vec![0, 1, 2], vec![0, 5, 4]]);
            }
            Fan::Cut(_) => panic!(),
        }
        match independent_paths(&families::path(4), 0, &[2, 3], 2).unwrap() {
            Fan::Cut(c) => assert_eq!(c, vec![1]),
            Fan::Paths(_) => panic!(),
        }
    }

    #[test]
    fn reroute_cases() {
        let k5 = families::complete(5);
        let ps = perfect_reroute(&k5, 0, &[1, 2, 3, 4], &[3], 4).unwrap();
        assert_eq!(ps.paths[0], vec![0, 3]);
        assert_eq!(ps.paths.len(), 4);
        ps.validate(&k5).unwrap();

        let w5 = families::wheel(5);
        let ps = perfect_reroute(&w5, 0, &[1, 2, 3, 4, 5], &[1, 3], 3).unwrap();
        assert_eq!(ps.ends()[..2], [1, 3]);
        ps.validate(&w5).unwrap();

        assert!(matches!(
            perfect_reroute(&families::path(3), 0, &[1, 2], &[2], 1),
            Err(RerouteError::NoPinnedFan { .. })
        ));
        assert!(matches!(
            perfect_reroute(&families::star(2), 0, &[1, 2], &[1], 2),
            Ok(_)
        ));
        assert!(matches!(
            perfect_reroute(&families::path(3), 1, &[0, 2], &[0], 2),
            Ok(_)
        ));
        assert!(matches!(
            perfect_reroute(&families::path(4), 0, &[2, 3], &[2], 2),
            Err(RerouteError::NoFullFan { .. })
        ));
    }

    #[test]
    fn path_system_validation_rejects() {
        let g = families::cycle(5);
        let bad = PathSystem {
            paths: vec![vec![0, 1, 2], vec![3, 2, 1]],
            disjointness: Disjointness::Independent,
            hub: None,
        };
        assert!(matches!(bad.validate(&g), Err(PathSystemError::NotIndependent { .. })));
        let bad = PathSystem {
            paths: vec![vec![0, 2]],
            disjointness: Disjointness::Independent,
            hub: None,
        };
        assert!(matches!(bad.validate(&g), Err(PathSystemError::MissingEdge { .. })));
    }
}
