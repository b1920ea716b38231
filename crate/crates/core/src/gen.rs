//! Graph generators: seeded random graphs and exhaustive isomorph-free
//! enumeration of small graphs.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Vertex};
use crate::separation::Separation;
use crate::tk5::{build_gadget, GadgetSpec};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi `G(n, p)` from a seed.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    random_graph_with(n, p, &mut rng(seed))
}

pub fn random_graph_with<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generated edges are valid")
}

/// Adjacency rows as bitmasks (n <= 11).
fn rows(g: &Graph) -> Vec<u16> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0u16, |acc, &w| acc | 1 << w))
        .collect()
}

fn refine(rows: &[u16], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let masks: Vec<u16> = cells.iter().map(|c| c.iter().fold(0u16, |a, &v| a | 1 << v)).collect();
        let mut next = Vec::with_capacity(cells.len());
        let mut changed = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| (masks.iter().map(|m| (rows[v] & m).count_ones()).collect(), v))
                .collect();
            keyed.sort();
            let before = next.len();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|k| k.1).collect());
                    start = i;
                }
            }
            if next.len() - before > 1 {
                changed = true;
            }
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}

fn code_of(rows: &[u16], order: &[usize]) -> u64 {
    let mut code = 0u64;
    for j in 1..order.len() {
        for i in 0..j {
            code = (code << 1) | ((rows[order[i]] >> order[j]) & 1) as u64;
        }
    }
    code
}

fn search(rows: &[u16], cells: Vec<Vec<usize>>, best: &mut Option<(u64, Vec<usize>)>) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = code_of(rows, &order);
        if best.as_ref().is_none_or(|b| code > b.0) {
            *best = Some((code, order));
        }
        return;
    };
    let cell = &cells[target];
    let mut tried: Vec<usize> = Vec::new();
    for &v in cell {
        // Twins are interchanged by an automorphism fixing the partition.
        let twin = tried.iter().any(|&u| {
            let mu = rows[u] & !(1 << v);
            let mv = rows[v] & !(1 << u);
            mu == mv
        });
        if twin {
            continue;
        }
        tried.push(v);
        let mut split = cells[..target].to_vec();
        split.push(vec![v]);
        split.push(cell.iter().copied().filter(|&w| w != v).collect());
        split.extend_from_slice(&cells[target + 1..]);
        search(rows, refine(rows, split), best);
    }
}

/// Canonical code (upper triangle bits under the canonical order) and the
/// canonical order itself. Supports `n <= 11`.
pub fn canonical_form(g: &Graph) -> (u64, Vec<Vertex>) {
    assert!(g.n() <= 11, "canonical_form supports at most 11 vertices");
    let rows = rows(g);
    let mut by_degree: Vec<Vec<usize>> = Vec::new();
    let mut verts: Vec<usize> = g.vertices().collect();
    verts.sort_by_key(|&v| (g.degree(v), v));
    for v in verts {
        match by_degree.last_mut() {
            Some(c) if g.degree(c[0]) == g.degree(v) => c.push(v),
            _ => by_degree.push(vec![v]),
        }
    }
    let mut best = None;
    search(&rows, refine(&rows, by_degree), &mut best);
    best.unwrap_or((0, Vec::new()))
}

/// The graph relabelled into canonical order.
pub fn canonical_graph(g: &Graph) -> Graph {
    let (_, order) = canonical_form(g);
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let edges: Vec<_> = g.edges().into_iter().map(|(u, v)| (pos[u], pos[v])).collect();
    Graph::from_edges(g.n(), &edges).expect("relabelled edges are valid")
}

/// All graphs on `n` vertices up to isomorphism whose every induced
/// subgraph on `n - 1` vertices satisfies `hereditary` (the filter must be
/// closed under vertex deletion), in canonical form and sorted by code.
pub fn exhaustive<F>(n: usize, hereditary: F) -> Vec<Vec<Graph>>
where
    F: Fn(&Graph) -> bool + Sync,
{
    use rayon::prelude::*;
    let mut levels: Vec<Vec<Graph>> = vec![vec![Graph::empty(0)]];
    for k in 1..=n {
        let prev = &levels[k - 1];
        let found: HashSet<u64> = prev
            .par_iter()
            .flat_map_iter(|g| {
                let mut local = Vec::new();
                for mask in 0u32..(1 << (k - 1)) {
                    let nbrs: Vec<Vertex> = (0..k - 1).filter(|&i| mask >> i & 1 == 1).collect();
                    let (h, _) = g.with_new_vertex(&nbrs).expect("valid neighbours");
                    if hereditary(&h) {
                        local.push(canonical_form(&h).0);
                    }
                }
                local
            })
            .collect();
        let mut codes: Vec<u64> = found.into_iter().collect();
        codes.sort_unstable();
        levels.push(codes.into_iter().map(|c| from_code(k, c)).collect());
    }
    levels
}

/// Rebuilds a graph from its canonical code.
pub fn from_code(n: usize, code: u64) -> Graph {
    let total = n * n.saturating_sub(1) / 2;
    let mut edges = Vec::new();
    let mut bit = total;
    for j in 1..n {
        for i in 0..j {
            bit -= 1;
            if code >> bit & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("decoded edges are valid")
}

/// Shape of a glued instance. Vertices `0..cut` form the cut, then come
/// the private vertices of side 1, then those of side 2. Cut-internal
/// edges are drawn with side 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlueSpec {
    pub cut: usize,
    pub private1: usize,
    pub private2: usize,
    pub p1: f64,
    pub p2: f64,
    /// Force the triangle `0 1 2` into the cut.
    pub triangle: bool,
    /// Make side 2 minus vertex 0 a maximal graph that is planar with the
    /// rest of the cut on one face; vertex 0 then joins private side-2
    /// vertices with probability `p2`.
    pub apex_side: bool,
    /// Reject edges that would create a `K4^-` avoiding vertex 0.
    pub k4_free: bool,
}

/// One random glued graph and its separation.
pub fn glued<R: Rng>(spec: &GlueSpec, rng: &mut R) -> (Graph, Separation) {
    let n = spec.cut + spec.private1 + spec.private2;
    let side1: Vec<Vertex> = (0..spec.cut + spec.private1).collect();
    let mut side2: Vec<Vertex> = (0..spec.cut).collect();
    side2.extend(spec.cut + spec.private1..n);
    let mut cand = Vec::new();
    for (i, &u) in side1.iter().enumerate() {
        for &v in &side1[i + 1..] {
            let forced = spec.triangle && u < 3 && v < 3;
            if forced || rng.gen_bool(spec.p1) {
                cand.push((u, v));
            }
        }
    }
    let private2 = &side2[spec.cut..];
    if !spec.apex_side {
        for (i, &u) in side2.iter().enumerate() {
            for &v in &side2[i + 1..] {
                if v >= spec.cut && rng.gen_bool(spec.p2) {
                    cand.push((u, v));
                }
            }
        }
    }
    let mut edges = Vec::new();
    if spec.k4_free {
        cand.shuffle(rng);
        if spec.triangle {
            cand.sort_by_key(|&(u, v)| !(u < 3 && v < 3));
        }
        for e in cand {
            push_k4_free(&mut edges, e, n);
        }
    } else {
        edges = cand;
    }
    if spec.apex_side {
        planar_side(spec.cut, private2, n, spec.k4_free, &mut edges, rng);
        edges.extend(private2.iter().filter(|_| rng.gen_bool(spec.p2)).map(|&v| (0, v)));
    }
    let g = Graph::from_edges(n, &edges).expect("generated edges are valid");
    let sep = Separation::new(&g, &side1, &side2).expect("sides cover and do not cross");
    (g, sep)
}

/// Adds `e` unless it would create a `K4^-` avoiding vertex 0.
fn push_k4_free(edges: &mut Vec<(Vertex, Vertex)>, e: (Vertex, Vertex), n: usize) -> bool {
    edges.push(e);
    let g = Graph::from_edges(n, edges).expect("valid edges");
    if e.0 != 0 && e.1 != 0 && crate::discharging::find_k4_minus(&g, &[0]).is_some() {
        edges.pop();
        return false;
    }
    true
}

/// Adds a random maximal edge set on `1..cut` plus `private` such that a
/// vertex adjacent to `1..cut` keeps it planar. Cut pairs are skipped.
fn planar_side<R: Rng>(cut: usize, private: &[Vertex], n: usize, k4_free: bool, edges: &mut Vec<(Vertex, Vertex)>, rng: &mut R) {
    let verts: Vec<Vertex> = (1..cut).chain(private.iter().copied()).collect();
    let mut pairs = Vec::new();
    for (i, &u) in verts.iter().enumerate() {
        for &v in &verts[i + 1..] {
            if v >= cut {
                pairs.push((u, v));
            }
        }
    }
    pairs.shuffle(rng);
    let mut probe: Vec<(Vertex, Vertex)> = (1..cut).map(|c| (c, n)).collect();
    for e in pairs {
        probe.push(e);
        if !crate::planarity::is_planar(&Graph::from_edges(n + 1, &probe).expect("valid edges")) {
            probe.pop();
        } else if k4_free && !push_k4_free(edges, e, n) {
            probe.pop();
        } else if !k4_free {
            edges.push(e);
        }
    }
}

/// Draws glued graphs until one is 5-connected (at most `tries` draws).
pub fn glued_five_connected<R: Rng>(spec: &GlueSpec, rng: &mut R, tries: usize) -> Option<(Graph, Separation)> {
    (0..tries).map(|_| glued(spec, rng)).find(|(g, _)| {
        crate::connectivity::is_k_connected(g, 5).map(|r| r.holds).unwrap_or(false)
    })
}

/// The gadget glued along `0..5` to a random first side with `private1`
/// extra vertices, redrawn until 5-connected and nonplanar.
pub fn gadget_instance<R: Rng>(private1: usize, p: f64, rng: &mut R, tries: usize) -> Option<(Graph, GadgetSpec)> {
    (0..tries).find_map(|_| {
        let g1 = random_graph_with(5 + private1, p, rng);
        let (g, spec) = build_gadget(Some((&g1, &[0, 1, 2, 3, 4][..]))).expect("cut is valid");
        let ok = crate::connectivity::is_k_connected(&g, 5).map(|r| r.holds).unwrap_or(false)
            && !crate::planarity::is_planar(&g);
        ok.then_some((g, spec))
    })
}

/// The gadget glued to `a` plus `a1..a4` plus `k` private vertices, each
/// joined to `a` and all of `a1..a4`; `a` also sees every `a_i`. Then
/// `G - a` has no `K4^-` and the gadget separation is the only disjunct
/// left for the apex statements.
pub fn k4_free_gadget(k: usize) -> (Graph, GadgetSpec) {
    let mut edges: Vec<(Vertex, Vertex)> = (1..5).map(|i| (0, i)).collect();
    for p in 5..5 + k {
        edges.push((0, p));
        edges.extend((1..5).map(|i| (i, p)));
    }
    let g1 = Graph::from_edges(5 + k, &edges).expect("valid edges");
    build_gadget(Some((&g1, &[0, 1, 2, 3, 4][..]))).expect("cut is valid")
}

/// A uniformly random relabelling of `g` and the permutation used.
pub fn relabel<R: Rng>(g: &Graph, rng: &mut R) -> (Graph, Vec<Vertex>) {
    let mut perm: Vec<Vertex> = g.vertices().collect();
    perm.shuffle(rng);
    let edges: Vec<_> = g.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
    (Graph::from_edges(g.n(), &edges).expect("relabelled edges are valid"), perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn graph_counts_match_known_sequence() {
        let levels = exhaustive(7, |_| true);
        let counts: Vec<usize> = levels[1..].iter().map(|l| l.len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156, 1044]);
    }

    #[test]
    fn canonical_form_is_invariant() {
        let p = families::petersen();
        let code = canonical_form(&p).0;
        let mut r = rng(3);
        for _ in 0..20 {
            let mut perm: Vec<usize> = (0..10).collect();
            rand::seq::SliceRandom::shuffle(&mut perm[..], &mut r);
            let e: Vec<_> = p.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
            let q = Graph::from_edges(10, &e).unwrap();
            assert_eq!(canonical_form(&q).0, code);
        }
        assert_ne!(canonical_form(&families::cycle(10)).0, code);
    }

    #[test]
    fn code_round_trip() {
        let g = canonical_graph(&families::wheel(5));
        let (code, _) = canonical_form(&g);
        assert_eq!(canonical_form(&from_code(6, code)).0, code);
    }
}
