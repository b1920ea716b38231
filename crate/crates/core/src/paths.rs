//! Small path utilities shared by the search routines.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use crate::graph::{Graph, Vertex};

/// Shortest `from -> to` path avoiding `blocked` (ties broken by lowest ids).
pub(crate) fn bfs_path(g: &Graph, from: Vertex, to: Vertex, blocked: &[bool]) -> Option<Vec<Vertex>> {
    if blocked[from] || blocked[to] {
        return None;
    }
    let mut prev = vec![usize::MAX; g.n()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
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

/// Calls `f` on every induced `s-t` path avoiding `blocked`, extending by
/// lowest ids first. Branches that can no longer reach `t` are pruned.
pub(crate) fn for_each_induced_path<F>(g: &Graph, s: Vertex, t: Vertex, blocked: &[bool], f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[Vertex]) -> ControlFlow<()>,
{
    if blocked[s] || blocked[t] {
        return ControlFlow::Continue(());
    }
    if s == t {
        return f(&[s]);
    }
    let mut on_path = blocked.to_vec();
    on_path[s] = true;
    let mut path = vec![s];
    extend(g, t, &mut path, &mut on_path, f)
}

fn extend<F>(
    g: &Graph,
    t: Vertex,
    path: &mut Vec<Vertex>,
    on_path: &mut Vec<bool>,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[Vertex]) -> ControlFlow<()>,
{
    let v = *path.last().expect("non-empty");
    if v == t {
        return f(path);
    }
    for &x in g.neighbors(v) {
        if on_path[x] || path[..path.len() - 1].iter().any(|&p| g.has_edge(p, x)) {
            continue;
        }
        // Chordless: once t is adjacent we must step to it.
        if g.has_edge(v, t) && x != t {
            continue;
        }
        path.push(x);
        on_path[x] = true;
        let mut cut = on_path.clone();
        cut[x] = false;
        for &p in &path[..path.len() - 1] {
            for &w in g.neighbors(p) {
                if w != x {
                    cut[w] = true;
                }
            }
        }
        if x == t || bfs_path(g, x, t, &cut).is_some() {
            extend(g, t, path, on_path, f)?;
        }
        on_path[x] = false;
        path.pop();
    }
    ControlFlow::Continue(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn collect(g: &Graph, s: Vertex, t: Vertex) -> Vec<Vec<Vertex>> {
        let mut out = Vec::new();
        let _ = for_each_induced_path(g, s, t, &vec![false; g.n()], &mut |p| {
            out.push(p.to_vec());
            ControlFlow::Continue(())
        });
        out
    }

    #[test]
    fn induced_paths_in_cycle_and_grid() {
        let c6 = families::cycle(6);
        assert_eq!(collect(&c6, 0, 3), vec![vec![0, 1, 2, 3], vec![0, 5, 4, 3]]);
        let k4 = families::complete(4);
        assert_eq!(collect(&k4, 0, 3), vec![vec![0, 3]]);
        let grid = families::grid(3, 3);
        for p in collect(&grid, 0, 8) {
            for i in 0..p.len() {
                for j in i + 2..p.len() {
                    assert!(!grid.has_edge(p[i], p[j]));
                }
            }
        }
    }

    #[test]
    fn induced_paths_match_filtered_simple_paths() {
        for seed in 0..60 {
            let g = crate::gen::random_graph(7, 0.4, seed);
            let mut simple = Vec::new();
            let mut stack = vec![vec![0usize]];
            while let Some(p) = stack.pop() {
                let v = *p.last().unwrap();
                if v == 6 {
                    let induced = (0..p.len()).all(|i| (i + 2..p.len()).all(|j| !g.has_edge(p[i], p[j])));
                    if induced {
                        simple.push(p);
                    }
                    continue;
                }
                for &w in g.neighbors(v) {
                    if !p.contains(&w) {
                        let mut q = p.clone();
                        q.push(w);
                        stack.push(q);
                    }
                }
            }
            simple.sort();
            let mut got = collect(&g, 0, 6);
            got.sort();
            assert_eq!(got, simple, "seed {seed}");
        }
    }
}
