//! Named small graphs used by tests, examples and the CLI.

use crate::graph::{Graph, Vertex};

fn build(n: usize, edges: Vec<(Vertex, Vertex)>) -> Graph {
    Graph::from_edges(n, &edges).expect("family edges are valid")
}

pub fn complete(n: usize) -> Graph {
    let mut e = Vec::new();
    for j in 0..n {
        for i in 0..j {
            e.push((i, j));
        }
    }
    build(n, e)
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    build(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i)).collect())
}

/// `K_{p,q}` with parts `0..p` and `p..p+q`.
pub fn complete_bipartite(p: usize, q: usize) -> Graph {
    let mut e = Vec::new();
    for i in 0..p {
        for j in 0..q {
            e.push((i, p + j));
        }
    }
    build(p + q, e)
}

/// Star with centre 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    build(leaves + 1, (1..=leaves).map(|i| (0, i)).collect())
}

/// Outer 5-cycle `0..5`, spokes `i - i+5`, inner pentagram.
pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    build(10, e)
}

/// Hub 0 joined to the rim cycle `1..=k`.
pub fn wheel(k: usize) -> Graph {
    let mut e: Vec<_> = (1..=k).map(|i| (0, i)).collect();
    for i in 1..=k {
        e.push((i, i % k + 1));
    }
    build(k + 1, e)
}

/// `rows x cols` grid; vertex `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut e = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                e.push((v, v + 1));
            }
            if r + 1 < rows {
                e.push((v, v + cols));
            }
        }
    }
    build(rows * cols, e)
}

/// `K_{2,2,2}`; the antipodal pairs are `{0,1}`, `{2,3}`, `{4,5}`.
pub fn octahedron() -> Graph {
    let mut e = Vec::new();
    for j in 0..6 {
        for i in 0..j {
            if i / 2 != j / 2 {
                e.push((i, j));
            }
        }
    }
    build(6, e)
}

/// Top 0, upper ring `1..=5`, lower ring `6..=10`, bottom 11.
pub fn icosahedron() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        let up = 1 + i;
        let up_next = 1 + (i + 1) % 5;
        let low = 6 + i;
        let low_next = 6 + (i + 1) % 5;
        e.push((0, up));
        e.push((up, up_next));
        e.push((low, low_next));
        e.push((up, low));
        e.push((up, low_next));
        e.push((11, low));
    }
    build(12, e)
}

/// Two poles `0` and `1` joined by `k` internally disjoint paths of
/// length two through `2..2+k`.
pub fn theta(k: usize) -> Graph {
    let mut e = Vec::new();
    for i in 0..k {
        e.push((0, 2 + i));
        e.push((1, 2 + i));
    }
    build(k + 2, e)
}

/// Replaces every edge `(u, v)` listed in `subdivide` by a path with `times`
/// new internal vertices. New vertices are appended.
pub fn subdivide(g: &Graph, subdivide: &[(Vertex, Vertex)], times: usize) -> Graph {
    let mut n = g.n();
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        let hit = subdivide.iter().any(|&(a, b)| (a, b) == (u, v) || (b, a) == (u, v));
        if !hit || times == 0 {
            edges.push((u, v));
            continue;
        }
        let mut prev = u;
        for _ in 0..times {
            edges.push((prev, n));
            prev = n;
            n += 1;
        }
        edges.push((prev, v));
    }
    build(n, edges)
}
