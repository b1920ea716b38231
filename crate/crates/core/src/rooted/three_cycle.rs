//! Cycles through three prescribed vertices of a 2-connected graph, or a
//! 2-cut obstruction showing none exists.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::subsets;
use crate::graph::{normalized, Graph, GraphError, Vertex};
use crate::paths::bfs_path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThreeCycleCase {
    /// One 2-cut leaves the three vertices in three different parts.
    SingleCut,
    /// Three 2-cuts sharing exactly one vertex.
    SharedVertex,
    /// Three pairwise disjoint 2-cuts whose leftover splits in two.
    DisjointCuts,
}

/// Cuts `S_{y_i}` (one cut repeated three times for a single cut) and parts
/// `D_{y_i}`, each a union of components of `R - S_{y_i}` holding `y_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeCycleObstruction {
    pub case: ThreeCycleCase,
    pub cuts: [Vec<Vertex>; 3],
    pub parts: [Vec<Vertex>; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ThreeCycleVerdict {
    Cycle { cycle: Vec<Vertex> },
    Obstruction { obstruction: ThreeCycleObstruction },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThreeCycleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("the three vertices must be distinct")]
    NotDistinct,
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("no cycle through {0:?} and no obstruction: the characterisation failed")]
    Uncharacterised([Vertex; 3]),
}

/// A cycle through `y1, y2, y3` in a 2-connected graph, or an obstruction.
/// Obstruction cases are tried in the order listed in [`ThreeCycleCase`].
pub fn cycle_through_three(g: &Graph, y1: Vertex, y2: Vertex, y3: Vertex) -> Result<ThreeCycleVerdict, ThreeCycleError> {
    let ys = [y1, y2, y3];
    g.check_vertices(&ys)?;
    if normalized(&ys).len() != 3 {
        return Err(ThreeCycleError::NotDistinct);
    }
    if !crate::connectivity::is_k_connected(g, 2).expect("k = 2").holds {
        return Err(ThreeCycleError::NotTwoConnected);
    }
    if let Some(cycle) = find_cycle_through(g, &ys) {
        return Ok(ThreeCycleVerdict::Cycle { cycle });
    }
    match find_obstruction(g, ys) {
        Some(obstruction) => Ok(ThreeCycleVerdict::Obstruction { obstruction }),
        None => Err(ThreeCycleError::Uncharacterised(ys)),
    }
}

/// A cycle containing every vertex of `must`, by depth-first search over
/// simple paths from `must[0]` with reachability pruning.
pub fn find_cycle_through(g: &Graph, must: &[Vertex]) -> Option<Vec<Vertex>> {
    let start = must[0];
    let mut on = vec![false; g.n()];
    on[start] = true;
    let mut path = vec![start];
    dfs(g, must, &mut path, &mut on)
}

fn dfs(g: &Graph, must: &[Vertex], path: &mut Vec<Vertex>, on: &mut Vec<bool>) -> Option<Vec<Vertex>> {
    let start = path[0];
    let v = *path.last().expect("non-empty");
    let all_in = must.iter().all(|&m| on[m]);
    if all_in && path.len() >= 3 && g.has_edge(v, start) {
        return Some(path.clone());
    }
    // Every missing vertex and the way back must stay reachable.
    let mut blocked = on.clone();
    blocked[v] = false;
    blocked[start] = false;
    for &m in must.iter().filter(|&&m| !on[m]).chain(std::iter::once(&start)) {
        if m != v && bfs_path(g, v, m, &blocked).is_none() {
            return None;
        }
    }
    for &w in g.neighbors(v) {
        if on[w] {
            continue;
        }
        path.push(w);
        on[w] = true;
        if let Some(c) = dfs(g, must, path, on) {
            return Some(c);
        }
        on[w] = false;
        path.pop();
    }
    None
}

/// Components of `g - cut`.
fn components(g: &Graph, cut: &[Vertex]) -> Vec<Vec<Vertex>> {
    g.components_avoiding(&g.mask(cut))
}

fn two_cuts(g: &Graph) -> Vec<Vec<Vertex>> {
    let all: Vec<Vertex> = g.vertices().collect();
    subsets(&all, 2).into_iter().filter(|s| components(g, s).len() >= 2).collect()
}

fn comp_of(comps: &[Vec<Vertex>], v: Vertex) -> Option<usize> {
    comps.iter().position(|c| c.contains(&v))
}

fn find_obstruction(g: &Graph, ys: [Vertex; 3]) -> Option<ThreeCycleObstruction> {
    let cuts = two_cuts(g);
    // Single cut.
    for s in &cuts {
        if ys.iter().any(|y| s.contains(y)) {
            continue;
        }
        let comps = components(g, s);
        let idx: Vec<usize> = ys.iter().map(|&y| comp_of(&comps, y).expect("covered")).collect();
        if normalized(&idx).len() == 3 {
            return Some(ThreeCycleObstruction {
                case: ThreeCycleCase::SingleCut,
                cuts: [s.clone(), s.clone(), s.clone()],
                parts: [comps[idx[0]].clone(), comps[idx[1]].clone(), comps[idx[2]].clone()],
            });
        }
    }
    // Candidate (cut, part) pairs per y; parts are unions of components
    // that contain y's component.
    let mut cands: [Vec<(Vec<Vertex>, Vec<Vertex>)>; 3] = Default::default();
    for (i, &y) in ys.iter().enumerate() {
        for s in &cuts {
            if s.contains(&y) {
                continue;
            }
            let comps = components(g, s);
            let own = comp_of(&comps, y).expect("covered");
            let others: Vec<usize> = (0..comps.len()).filter(|&c| c != own).collect();
            for mask in 0u32..(1u32 << others.len()) {
                let mut part = comps[own].clone();
                for (b, &c) in others.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        part.extend_from_slice(&comps[c]);
                    }
                }
                part.sort_unstable();
                cands[i].push((s.clone(), part));
            }
        }
    }
    let disjoint = |a: &[Vertex], b: &[Vertex]| a.iter().all(|v| !b.contains(v));
    for case in [ThreeCycleCase::SharedVertex, ThreeCycleCase::DisjointCuts] {
        for c0 in &cands[0] {
            for c1 in &cands[1] {
                if !disjoint(&c0.1, &c1.1) {
                    continue;
                }
                for c2 in &cands[2] {
                    if !disjoint(&c0.1, &c2.1) || !disjoint(&c1.1, &c2.1) {
                        continue;
                    }
                    let ob = ThreeCycleObstruction {
                        case,
                        cuts: [c0.0.clone(), c1.0.clone(), c2.0.clone()],
                        parts: [c0.1.clone(), c1.1.clone(), c2.1.clone()],
                    };
                    if ob.validate(g, ys).is_ok() {
                        return Some(ob);
                    }
                }
            }
        }
    }
    None
}

impl ThreeCycleObstruction {
    /// Checks the case conditions from scratch.
    pub fn validate(&self, g: &Graph, ys: [Vertex; 3]) -> Result<(), String> {
        for (i, s) in self.cuts.iter().enumerate() {
            if s.len() != 2 || s[0] == s[1] || s.iter().any(|&v| v >= g.n()) {
                return Err(format!("cut {i} is not a pair of vertices"));
            }
            let comps = components(g, s);
            if comps.len() < 2 {
                return Err(format!("cut {i} does not separate"));
            }
            let part = &self.parts[i];
            if !part.contains(&ys[i]) {
                return Err(format!("part {i} misses y{}", i + 1));
            }
            for c in &comps {
                let inside = c.iter().filter(|v| part.contains(v)).count();
                if inside != 0 && inside != c.len() {
                    return Err(format!("part {i} splits a component of R - S"));
                }
            }
            if part.iter().any(|v| s.contains(v) || *v >= g.n()) {
                return Err(format!("part {i} meets its cut"));
            }
        }
        for i in 0..3 {
            for j in i + 1..3 {
                if self.parts[i].iter().any(|v| self.parts[j].contains(v)) {
                    return Err(format!("parts {i} and {j} intersect"));
                }
            }
        }
        let [s1, s2, s3] = &self.cuts;
        match self.case {
            ThreeCycleCase::SingleCut => {
                if s1 != s2 || s2 != s3 {
                    return Err("single-cut case needs one cut".into());
                }
            }
            ThreeCycleCase::SharedVertex => {
                let common: Vec<Vertex> = s1.iter().copied().filter(|v| s2.contains(v) && s3.contains(v)).collect();
                if common.len() != 1 {
                    return Err("cuts must share exactly one vertex".into());
                }
                let z = common[0];
                let rest: Vec<Vertex> = self.cuts.iter().flat_map(|s| s.iter().copied().filter(|&v| v != z)).collect();
                if normalized(&rest).len() != 3 {
                    return Err("cuts minus the shared vertex must be disjoint".into());
                }
            }
            ThreeCycleCase::DisjointCuts => {
                let all: Vec<Vertex> = self.cuts.iter().flatten().copied().collect();
                if normalized(&all).len() != 6 {
                    return Err("cuts must be pairwise disjoint".into());
                }
                let used: Vec<Vertex> = self.parts.iter().flatten().copied().collect();
                let comps = components(g, &used);
                if comps.len() != 2 {
                    return Err(format!("leftover has {} components", comps.len()));
                }
                for (i, s) in self.cuts.iter().enumerate() {
                    for c in &comps {
                        if s.iter().filter(|v| c.contains(v)).count() != 1 {
                            return Err(format!("cut {i} does not meet each leftover component once"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    /// Oracle: some vertex subset containing the triple induces a graph with a
    /// Hamiltonian cycle that is a cycle of `g`.
    fn brute_cycle(g: &Graph, ys: [Vertex; 3]) -> bool {
        let others: Vec<Vertex> = g.vertices().filter(|v| !ys.contains(v)).collect();
        for mask in 0u32..(1 << others.len()) {
            let mut s: Vec<Vertex> = ys.to_vec();
            for (i, &v) in others.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    s.push(v);
                }
            }
            // Permutations of s fixing s[0].
            let rest: Vec<Vertex> = s[1..].to_vec();
            let mut perm = rest.clone();
            if heap_any(&mut perm, rest.len(), &mut |p| {
                let mut cyc = vec![s[0]];
                cyc.extend_from_slice(p);
                (0..cyc.len()).all(|i| g.has_edge(cyc[i], cyc[(i + 1) % cyc.len()]))
            }) {
                return true;
            }
        }
        false
    }

    fn heap_any(a: &mut Vec<Vertex>, k: usize, f: &mut dyn FnMut(&[Vertex]) -> bool) -> bool {
        if k <= 1 {
            return f(a);
        }
        for i in 0..k {
            if heap_any(a, k - 1, f) {
                return true;
            }
            if k % 2 == 0 {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
        false
    }

    #[test]
    fn k4_has_triangle() {
        match cycle_through_three(&families::complete(4), 0, 1, 2).unwrap() {
            ThreeCycleVerdict::Cycle { cycle } => assert_eq!(cycle.len(), 3),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn theta_midpoints_need_single_cut() {
        let g = families::theta(3);
        // theta: poles 0 and 1, midpoints 2, 3, 4.
        match cycle_through_three(&g, 2, 3, 4).unwrap() {
            ThreeCycleVerdict::Obstruction { obstruction } => {
                assert_eq!(obstruction.case, ThreeCycleCase::SingleCut);
                assert_eq!(obstruction.cuts[0], vec![0, 1]);
                assert!(obstruction.validate(&g, [2, 3, 4]).is_ok());
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn prism_rungs_need_disjoint_cuts() {
        // Triangles 0-1-2 and 3-4-5 joined by rungs i - y - (i + 3), where
        // the rung vertices are 6, 7, 8. Every rung swaps triangles, so an
        // odd number of rungs never closes up.
        let mut edges = vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)];
        for i in 0..3 {
            edges.push((i, 6 + i));
            edges.push((6 + i, 3 + i));
        }
        let g = Graph::from_edges(9, &edges).unwrap();
        let ys = [6, 7, 8];
        assert!(!brute_cycle(&g, ys));
        match cycle_through_three(&g, 6, 7, 8).unwrap() {
            ThreeCycleVerdict::Obstruction { obstruction } => {
                assert_eq!(obstruction.case, ThreeCycleCase::DisjointCuts);
                assert_eq!(obstruction.cuts, [vec![0, 3], vec![1, 4], vec![2, 5]]);
                assert!(obstruction.validate(&g, ys).is_ok());
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn fan_realises_shared_vertex() {
        // Hub 0 with a path 1-2-3-4-5-6; y's are degree-2 vertices 7, 8, 9
        // joining the hub-side cut vertex pairs {0, 2}, {0, 4}, {0, 6}.
        let mut edges = vec![(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (0, 1), (0, 3), (0, 5)];
        edges.extend([(7, 0), (7, 2), (8, 0), (8, 4), (9, 0), (9, 6), (6, 1)]);
        let g = Graph::from_edges(10, &edges).unwrap();
        let ys = [7, 8, 9];
        let oracle = brute_cycle(&g, ys);
        match cycle_through_three(&g, 7, 8, 9).unwrap() {
            ThreeCycleVerdict::Cycle { .. } => assert!(oracle),
            ThreeCycleVerdict::Obstruction { obstruction } => {
                assert!(!oracle);
                assert!(obstruction.validate(&g, ys).is_ok());
                assert_eq!(obstruction.case, ThreeCycleCase::SharedVertex);
            }
        }
    }

    #[test]
    fn dichotomy_on_random_two_connected_graphs() {
        let mut obstructions = 0;
        for seed in 0..500 {
            let n = 5 + (seed % 4) as usize;
            let g = crate::gen::random_graph(n, 0.35, seed);
            if !crate::connectivity::is_k_connected(&g, 2).unwrap().holds {
                continue;
            }
            let ys = [0, 1, 2];
            let oracle = brute_cycle(&g, ys);
            match cycle_through_three(&g, 0, 1, 2).unwrap() {
                ThreeCycleVerdict::Cycle { cycle } => {
                    assert!(oracle, "seed {seed}");
                    assert!(ys.iter().all(|y| cycle.contains(y)));
                    assert!((0..cycle.len()).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % cycle.len()])));
                }
                ThreeCycleVerdict::Obstruction { obstruction } => {
                    assert!(!oracle, "seed {seed}");
                    assert!(obstruction.validate(&g, ys).is_ok());
                    obstructions += 1;
                }
            }
        }
        assert!(obstructions > 0);
    }

    #[test]
    fn refuses_graphs_with_cut_vertices() {
        assert_eq!(cycle_through_three(&families::path(4), 0, 1, 2), Err(ThreeCycleError::NotTwoConnected));
    }
}
