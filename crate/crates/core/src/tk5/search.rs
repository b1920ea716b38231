//! `TK5` certificates and the constrained search.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{normalized, Graph, GraphError, Vertex};
use crate::paths::{bfs_path, for_each_induced_path};

pub const DEFAULT_TK5_CAP: usize = 16;
pub const DEFAULT_TK5_BUDGET: u64 = 20_000_000;

/// Only edges `a v` with `v` in `keep` may be used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApexRestriction {
    pub a: Vertex,
    pub keep: Vec<Vertex>,
}

impl ApexRestriction {
    pub fn allows(&self, u: Vertex, v: Vertex) -> bool {
        !((u == self.a && !self.keep.contains(&v)) || (v == self.a && !self.keep.contains(&u)))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tk5Constraints {
    pub forbidden_branch: Vec<Vertex>,
    pub apex: Option<ApexRestriction>,
}

/// A subdivision of `K5`: `paths[k]` joins the `k`-th pair of branch
/// vertices in the order (0,1), (0,2), ..., (3,4).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tk5Certificate {
    pub branch: [Vertex; 5],
    pub paths: Vec<Vec<Vertex>>,
    pub constraints: Tk5Constraints,
}

/// The ten branch pairs in certificate order.
pub const PAIRS: [(usize, usize); 10] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Tk5Defect {
    #[error("branch vertices {branch:?} are not 5 distinct vertices of the graph")]
    BadBranch { branch: Vec<Vertex> },
    #[error("expected 10 paths, found {count}")]
    PathCount { count: usize },
    #[error("path {index} does not join branch vertices {u} and {v}")]
    WrongEnds { index: usize, u: Vertex, v: Vertex },
    #[error("no path joins branch vertices {u} and {v}")]
    MissingPath { u: Vertex, v: Vertex },
    #[error("branch vertices {u} and {v} are joined by more than one path")]
    DuplicatePath { u: Vertex, v: Vertex },
    #[error("{u}-{v} is not an edge")]
    MissingEdge { u: Vertex, v: Vertex },
    #[error("edge {u}-{v} is excluded by the apex restriction")]
    RestrictedEdge { u: Vertex, v: Vertex },
    #[error("path {index} repeats vertex {vertex}")]
    NotSimple { index: usize, vertex: Vertex },
    #[error("branch vertex {vertex} is internal to path {index}")]
    BranchInterior { vertex: Vertex, index: usize },
    #[error("vertex {vertex} is internal to paths {first} and {second}")]
    SharedVertex { vertex: Vertex, first: usize, second: usize },
    #[error("vertex {vertex} has degree {degree} in the union; more than one path passes through it")]
    Crowded { vertex: Vertex, degree: usize },
    #[error("branch vertex {vertex} has degree {degree} in the union, expected 4")]
    BranchDegree { vertex: Vertex, degree: usize },
    #[error("vertex {vertex} is a dead end of the union")]
    DeadEnd { vertex: Vertex },
    #[error("vertex {vertex} lies on no branch path")]
    Stray { vertex: Vertex },
    #[error("forbidden vertex {vertex} is a branch vertex")]
    ForbiddenBranch { vertex: Vertex },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl Tk5Certificate {
    /// Checks every `TK5` invariant and the recorded constraints against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), Tk5Defect> {
        let b = self.branch;
        if b.iter().any(|&v| v >= g.n()) || normalized(&b).len() != 5 {
            return Err(Tk5Defect::BadBranch { branch: b.to_vec() });
        }
        if self.paths.len() != 10 {
            return Err(Tk5Defect::PathCount { count: self.paths.len() });
        }
        for &v in &self.constraints.forbidden_branch {
            if b.contains(&v) {
                return Err(Tk5Defect::ForbiddenBranch { vertex: v });
            }
        }
        let mut owner = vec![usize::MAX; g.n()];
        for (k, p) in self.paths.iter().enumerate() {
            let (u, v) = (b[PAIRS[k].0], b[PAIRS[k].1]);
            if p.len() < 2 || p[0] != u || p[p.len() - 1] != v {
                return Err(Tk5Defect::WrongEnds { index: k, u, v });
            }
            for w in p.windows(2) {
                if w[0] >= g.n() || w[1] >= g.n() || !g.has_edge(w[0], w[1]) {
                    return Err(Tk5Defect::MissingEdge { u: w[0], v: w[1] });
                }
                if let Some(r) = &self.constraints.apex {
                    if !r.allows(w[0], w[1]) {
                        return Err(Tk5Defect::RestrictedEdge { u: w[0], v: w[1] });
                    }
                }
            }
            for &x in &p[1..p.len() - 1] {
                if b.contains(&x) {
                    return Err(Tk5Defect::BranchInterior { vertex: x, index: k });
                }
                if owner[x] == k {
                    return Err(Tk5Defect::NotSimple { index: k, vertex: x });
                }
                if owner[x] != usize::MAX {
                    return Err(Tk5Defect::SharedVertex { vertex: x, first: owner[x], second: k });
                }
                owner[x] = k;
            }
        }
        Ok(())
    }

    /// All vertices used by the subdivision.
    pub fn vertices(&self) -> Vec<Vertex> {
        normalized(&self.paths.concat())
    }

    /// All edges used by the subdivision, each as `(min, max)`.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut e: Vec<_> = self
            .paths
            .iter()
            .flat_map(|p| p.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))))
            .collect();
        e.sort_unstable();
        e
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Tk5SearchError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph has {n} vertices, above the search cap of {cap}")]
    TooLarge { n: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Tk5Outcome {
    Found { certificate: Tk5Certificate, steps: u64 },
    /// The search finished without finding a subdivision.
    Absent { steps: u64 },
    /// The step budget ran out first; nothing is claimed.
    BudgetExhausted { steps: u64 },
}

impl Tk5Outcome {
    pub fn certificate(&self) -> Option<&Tk5Certificate> {
        match self {
            Tk5Outcome::Found { certificate, .. } => Some(certificate),
            _ => None,
        }
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, Tk5Outcome::Absent { .. })
    }

    pub fn steps(&self) -> u64 {
        match self {
            Tk5Outcome::Found { steps, .. } | Tk5Outcome::Absent { steps } | Tk5Outcome::BudgetExhausted { steps } => *steps,
        }
    }
}

/// Search parameters. Branch sets are tried over vertices of degree at
/// least 4 (highest degree first), and each set is completed by
/// backtracking over induced connecting paths, always extending the pair
/// whose shortest free path is shortest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tk5Search {
    pub constraints: Tk5Constraints,
    pub budget: u64,
    pub cap: usize,
    /// Answer `Absent` for planar graphs without searching.
    pub planarity_prune: bool,
}

impl Default for Tk5Search {
    fn default() -> Self {
        Tk5Search {
            constraints: Tk5Constraints::default(),
            budget: DEFAULT_TK5_BUDGET,
            cap: DEFAULT_TK5_CAP,
            planarity_prune: true,
        }
    }
}

impl Tk5Search {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn forbid(mut self, vs: &[Vertex]) -> Self {
        self.constraints.forbidden_branch = normalized(vs);
        self
    }

    pub fn apex_restriction(mut self, a: Vertex, keep: &[Vertex]) -> Self {
        self.constraints.apex = Some(ApexRestriction { a, keep: normalized(keep) });
        self
    }

    pub fn budget(mut self, steps: u64) -> Self {
        self.budget = steps;
        self
    }

    pub fn cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn planarity_prune(mut self, on: bool) -> Self {
        self.planarity_prune = on;
        self
    }

    pub fn run(&self, g: &Graph) -> Result<Tk5Outcome, Tk5SearchError> {
        g.check_vertices(&self.constraints.forbidden_branch)?;
        if g.n() > self.cap {
            return Err(Tk5SearchError::TooLarge { n: g.n(), cap: self.cap });
        }
        let h = match &self.constraints.apex {
            Some(r) => {
                g.check_vertex(r.a)?;
                g.check_vertices(&r.keep)?;
                g.delete_apex_edges(r.a, &r.keep)?
            }
            None => g.clone(),
        };
        if self.planarity_prune && crate::planarity::is_planar(&h) {
            return Ok(Tk5Outcome::Absent { steps: 0 });
        }
        let mut cand: Vec<Vertex> = h
            .vertices()
            .filter(|&v| h.degree(v) >= 4 && !self.constraints.forbidden_branch.contains(&v))
            .collect();
        cand.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
        let mut st = State {
            g: &h,
            steps: 0,
            budget: self.budget,
            exhausted: false,
            used: vec![false; h.n()],
            paths: vec![Vec::new(); 10],
        };
        let mut found = None;
        let _ = crate::combinatorics::for_each_subset_of(&cand, 5, &mut |s| {
            let mut branch = [s[0], s[1], s[2], s[3], s[4]];
            branch.sort_unstable();
            if st.complete(branch) {
                found = Some(branch);
                return ControlFlow::Break(());
            }
            if st.exhausted {
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        Ok(match found {
            Some(branch) => Tk5Outcome::Found {
                certificate: Tk5Certificate {
                    branch,
                    paths: st.paths.clone(),
                    constraints: self.constraints.clone(),
                },
                steps: st.steps,
            },
            None if st.exhausted => Tk5Outcome::BudgetExhausted { steps: st.steps },
            None => Tk5Outcome::Absent { steps: st.steps },
        })
    }
}

/// `TK5` in `g` with no branch vertex in `forbidden_branch`, with default
/// budget and cap.
pub fn find_tk5(g: &Graph, forbidden_branch: &[Vertex]) -> Result<Tk5Outcome, Tk5SearchError> {
    Tk5Search::new().forbid(forbidden_branch).run(g)
}

struct State<'a> {
    g: &'a Graph,
    steps: u64,
    budget: u64,
    exhausted: bool,
    used: Vec<bool>,
    paths: Vec<Vec<Vertex>>,
}

impl State<'_> {
    fn complete(&mut self, branch: [Vertex; 5]) -> bool {
        self.used.iter_mut().for_each(|u| *u = false);
        for &b in &branch {
            self.used[b] = true;
        }
        let mut open = Vec::new();
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            let (u, v) = (branch[i], branch[j]);
            if self.g.has_edge(u, v) {
                self.paths[k] = vec![u, v];
            } else {
                open.push(k);
            }
        }
        self.extend(&branch, &mut open)
    }

    fn extend(&mut self, branch: &[Vertex; 5], open: &mut Vec<usize>) -> bool {
        if open.is_empty() {
            return true;
        }
        self.steps += 1;
        if self.steps > self.budget {
            self.exhausted = true;
            return false;
        }
        // Every open pair at a branch vertex needs its own free neighbour.
        for (bi, &b) in branch.iter().enumerate() {
            let need = open.iter().filter(|&&k| PAIRS[k].0 == bi || PAIRS[k].1 == bi).count();
            if need > 0 && self.g.neighbors(b).iter().filter(|&&x| !self.used[x]).count() < need {
                return false;
            }
        }
        let mut best: Option<(usize, usize)> = None;
        for (slot, &k) in open.iter().enumerate() {
            let (u, v) = (branch[PAIRS[k].0], branch[PAIRS[k].1]);
            let mut blocked = self.used.clone();
            blocked[u] = false;
            blocked[v] = false;
            match bfs_path(self.g, u, v, &blocked) {
                None => return false,
                Some(p) => {
                    if best.map_or(true, |(_, len)| p.len() < len) {
                        best = Some((slot, p.len()));
                    }
                }
            }
        }
        let (slot, _) = best.expect("open is non-empty");
        let k = open.swap_remove(slot);
        let (u, v) = (branch[PAIRS[k].0], branch[PAIRS[k].1]);
        let mut blocked = self.used.clone();
        blocked[u] = false;
        blocked[v] = false;
        let g = self.g;
        let mut done = false;
        let _ = for_each_induced_path(g, u, v, &blocked, &mut |p| {
            let inner = &p[1..p.len() - 1];
            for &x in inner {
                self.used[x] = true;
            }
            if self.extend(branch, open) {
                self.paths[k] = p.to_vec();
                done = true;
                return ControlFlow::Break(());
            }
            for &x in inner {
                self.used[x] = false;
            }
            if self.exhausted {
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if !done {
            open.push(k);
            let last = open.len() - 1;
            open.swap(slot, last);
        }
        done
    }
}
