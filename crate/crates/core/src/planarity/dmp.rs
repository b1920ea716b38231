//! Demoucron–Malgrange–Pertuiset embedding of 2-connected graphs, plus the
//! block decomposition used to embed arbitrary graphs.

use std::collections::VecDeque;

use crate::graph::{Graph, Vertex};

/// Biconnected components as edge lists (bridges are two-vertex blocks).
pub(crate) fn blocks(g: &Graph) -> Vec<Vec<(Vertex, Vertex)>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut out = Vec::new();
    for root in g.vertices() {
        if disc[root] != usize::MAX {
            continue;
        }
        // Iterative DFS: (vertex, parent, next neighbour index).
        let mut dfs: Vec<(Vertex, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(&mut (v, parent, ref mut idx)) = dfs.last_mut() {
            if *idx < g.degree(v) {
                let w = g.neighbors(v)[*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    dfs.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                dfs.pop();
                if let Some(&(p, _, _)) = dfs.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = stack.pop() {
                            block.push(e);
                            if e == (p, v) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

fn find_cycle(g: &Graph) -> Vec<Vertex> {
    // Any 2-connected graph: DFS until a back edge closes a cycle.
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(0usize, 0usize)];
    depth[0] = 0;
    while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
        if *idx >= g.degree(v) {
            stack.pop();
            continue;
        }
        let w = g.neighbors(v)[*idx];
        *idx += 1;
        if depth[w] == usize::MAX {
            depth[w] = depth[v] + 1;
            parent[w] = v;
            stack.push((w, 0));
        } else if w != parent[v] && depth[w] < depth[v] {
            let mut cyc = vec![v];
            let mut x = v;
            while x != w {
                x = parent[x];
                cyc.push(x);
            }
            return cyc;
        }
    }
    unreachable!("2-connected graphs contain cycles")
}

/// Faces (oriented vertex cycles) of a planar embedding of a 2-connected
/// graph with at least three vertices, or `None` when it is not planar.
pub(crate) fn embed_biconnected(g: &Graph) -> Option<Vec<Vec<Vertex>>> {
    let n = g.n();
    if n >= 3 && g.m() > 3 * n - 6 {
        return None;
    }
    let cycle = find_cycle(g);
    let mut in_h = vec![false; n];
    let mut edge_in_h = std::collections::HashSet::new();
    for i in 0..cycle.len() {
        let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        in_h[u] = true;
        edge_in_h.insert((u.min(v), u.max(v)));
    }
    let mut faces = vec![cycle.clone(), cycle.iter().rev().copied().collect::<Vec<_>>()];
    while edge_in_h.len() < g.m() {
        let fragments = fragments(g, &in_h, &edge_in_h);
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| frag.attachments.iter().all(|a| f.contains(a)))
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("a fragment exists while edges remain");
        let path = fragment_path(g, &in_h, &fragments[fi]);
        let face = faces.swap_remove(face_idx);
        let (x, y) = (path[0], *path.last().expect("path"));
        let i = face.iter().position(|&v| v == x).expect("attachment on face");
        let j = face.iter().position(|&v| v == y).expect("attachment on face");
        let len = face.len();
        let arc = |from: usize, to: usize| -> Vec<Vertex> {
            let mut out = Vec::new();
            let mut k = from;
            loop {
                out.push(face[k]);
                if k == to {
                    break;
                }
                k = (k + 1) % len;
            }
            out
        };
        let inner = &path[1..path.len() - 1];
        let mut first = arc(i, j);
        first.extend(inner.iter().rev());
        let mut second = arc(j, i);
        second.extend(inner.iter());
        faces.push(first);
        faces.push(second);
        for w in path.windows(2) {
            edge_in_h.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in &path {
            in_h[v] = true;
        }
    }
    Some(faces)
}

struct Fragment {
    /// Interior vertices (empty for a chord).
    interior: Vec<Vertex>,
    attachments: Vec<Vertex>,
    chord: Option<(Vertex, Vertex)>,
}

fn fragments(
    g: &Graph,
    in_h: &[bool],
    edge_in_h: &std::collections::HashSet<(Vertex, Vertex)>,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        if in_h[u] && in_h[v] && !edge_in_h.contains(&(u, v)) {
            out.push(Fragment {
                interior: Vec::new(),
                attachments: vec![u, v],
                chord: Some((u, v)),
            });
        }
    }
    for comp in g.components_avoiding(in_h) {
        let mut att: Vec<Vertex> = comp
            .iter()
            .flat_map(|&v| g.neighbors(v).iter().copied())
            .filter(|&w| in_h[w])
            .collect();
        att.sort_unstable();
        att.dedup();
        out.push(Fragment {
            interior: comp,
            attachments: att,
            chord: None,
        });
    }
    out
}

fn fragment_path(g: &Graph, in_h: &[bool], frag: &Fragment) -> Vec<Vertex> {
    if let Some((u, v)) = frag.chord {
        return vec![u, v];
    }
    let x = frag.attachments[0];
    let mut interior = vec![false; g.n()];
    for &v in &frag.interior {
        interior[v] = true;
    }
    let mut prev = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    for &w in g.neighbors(x) {
        if interior[w] && prev[w] == usize::MAX {
            prev[w] = x;
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if in_h[w] && w != x {
                let mut path = vec![w, v];
                let mut c = v;
                while prev[c] != x {
                    c = prev[c];
                    path.push(c);
                }
                path.push(x);
                path.reverse();
                return path;
            }
            if interior[w] && prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragments of a 2-connected graph have two attachments")
}

/// Planar rotation system for `g`, or `None` when `g` is not planar.
pub(crate) fn rotation_system(g: &Graph) -> Option<Vec<Vec<Vertex>>> {
    let n = g.n();
    if n >= 3 && g.m() > 3 * n - 6 {
        return None;
    }
    let mut rotation: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for block in blocks(g) {
        let mut verts: Vec<Vertex> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        if verts.len() == 2 {
            rotation[verts[0]].push(verts[1]);
            rotation[verts[1]].push(verts[0]);
            continue;
        }
        let local: Vec<(Vertex, Vertex)> = block
            .iter()
            .map(|&(u, v)| {
                (
                    verts.binary_search(&u).expect("in block"),
                    verts.binary_search(&v).expect("in block"),
                )
            })
            .collect();
        let h = Graph::from_edges(verts.len(), &local).expect("block edges are valid");
        let faces = embed_biconnected(&h)?;
        let mut succ: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); h.n()];
        for f in &faces {
            let len = f.len();
            for i in 0..len {
                let (u, v, w) = (f[(i + len - 1) % len], f[i], f[(i + 1) % len]);
                succ[v].push((u, w));
            }
        }
        for v in h.vertices() {
            let start = *h.neighbors(v).first().expect("degree >= 2 in a block");
            let mut cur = start;
            let mut order = Vec::with_capacity(h.degree(v));
            loop {
                order.push(verts[cur]);
                cur = succ[v]
                    .iter()
                    .find(|&&(u, _)| u == cur)
                    .map(|&(_, w)| w)
                    .expect("rotation successor");
                if cur == start {
                    break;
                }
            }
            rotation[verts[v]].extend(order);
        }
    }
    Some(rotation)
}
