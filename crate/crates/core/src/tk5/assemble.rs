//! Turning a union of path pieces into a validated `TK5` certificate.

use std::collections::BTreeSet;

use super::search::{Tk5Certificate, Tk5Constraints, Tk5Defect, PAIRS};
use crate::graph::{normalized, Graph, Vertex};

/// Builds a certificate from `parts`, each a walk given as a vertex
/// sequence. Their edge union must be exactly a subdivision of `K5` with
/// the given branch vertices: branch vertices of degree 4, every other
/// vertex of degree 2, and each branch pair joined by one thread.
pub fn assemble_tk5(
    host: &Graph,
    parts: &[Vec<Vertex>],
    branch: &[Vertex],
    constraints: Tk5Constraints,
) -> Result<Tk5Certificate, Tk5Defect> {
    host.check_vertices(parts.iter().flatten())?;
    let b = normalized(branch);
    if b.len() != 5 || branch.len() != 5 || b.iter().any(|&v| v >= host.n()) {
        return Err(Tk5Defect::BadBranch { branch: branch.to_vec() });
    }
    let mut edges = BTreeSet::new();
    for p in parts {
        for w in p.windows(2) {
            if !host.has_edge(w[0], w[1]) {
                return Err(Tk5Defect::MissingEdge { u: w[0], v: w[1] });
            }
            edges.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    let mut adj = vec![Vec::new(); host.n()];
    for &(u, v) in &edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for (v, nb) in adj.iter().enumerate() {
        let d = nb.len();
        if b.contains(&v) {
            if d != 4 {
                return Err(Tk5Defect::BranchDegree { vertex: v, degree: d });
            }
        } else if d == 1 {
            return Err(Tk5Defect::DeadEnd { vertex: v });
        } else if d > 2 {
            return Err(Tk5Defect::Crowded { vertex: v, degree: d });
        }
    }
    let idx = |v: Vertex| b.iter().position(|&x| x == v);
    let mut paths: Vec<Option<Vec<Vertex>>> = vec![None; 10];
    let mut seen = vec![false; host.n()];
    for (i, &s) in b.iter().enumerate() {
        seen[s] = true;
        for &first in &adj[s] {
            let mut walk = vec![s, first];
            let (mut prev, mut cur) = (s, first);
            while idx(cur).is_none() {
                seen[cur] = true;
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = next;
                walk.push(cur);
            }
            let j = idx(cur).expect("loop ends at a branch vertex");
            if j == i {
                return Err(Tk5Defect::Crowded { vertex: s, degree: 4 });
            }
            if i > j {
                continue;
            }
            let k = PAIRS.iter().position(|&p| p == (i, j)).expect("ordered pair");
            if paths[k].is_some() {
                return Err(Tk5Defect::DuplicatePath { u: b[i], v: b[j] });
            }
            paths[k] = Some(walk);
        }
    }
    if let Some(v) = (0..host.n()).find(|&v| !adj[v].is_empty() && !seen[v]) {
        return Err(Tk5Defect::Stray { vertex: v });
    }
    let mut out = Vec::with_capacity(10);
    for (k, p) in paths.into_iter().enumerate() {
        match p {
            Some(p) => out.push(p),
            None => {
                return Err(Tk5Defect::MissingPath { u: b[PAIRS[k].0], v: b[PAIRS[k].1] });
            }
        }
    }
    let cert = Tk5Certificate {
        branch: [b[0], b[1], b[2], b[3], b[4]],
        paths: out,
        constraints,
    };
    cert.validate(host)?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn k5_edges_as_trivial_paths() {
        let g = families::complete(5);
        let parts: Vec<Vec<Vertex>> = g.edges().into_iter().map(|(u, v)| vec![u, v]).collect();
        let c = assemble_tk5(&g, &parts, &[0, 1, 2, 3, 4], Tk5Constraints::default()).unwrap();
        assert_eq!(c.paths.len(), 10);
        assert_eq!(c.paths[9], vec![3, 4]);
    }

    #[test]
    fn walks_are_split_at_branch_vertices() {
        let g = families::subdivide(&families::complete(5), &[(0, 1)], 1);
        // Vertex 5 subdivides 0-1.
        let parts = vec![vec![0, 5, 1, 2, 3, 4, 0], vec![0, 2, 4, 1, 3, 0]];
        let c = assemble_tk5(&g, &parts, &[4, 3, 2, 1, 0], Tk5Constraints::default()).unwrap();
        assert_eq!(c.paths[0], vec![0, 5, 1]);
        assert_eq!(c.branch, [0, 1, 2, 3, 4]);
    }

    #[test]
    fn shared_internal_vertex_is_named() {
        // Two threads through vertex 6.
        let g = families::complete(7);
        let mut parts: Vec<Vec<Vertex>> = families::complete(5)
            .edges()
            .into_iter()
            .filter(|&e| e != (0, 1) && e != (2, 3))
            .map(|(u, v)| vec![u, v])
            .collect();
        parts.push(vec![0, 6, 1]);
        parts.push(vec![2, 6, 3]);
        let err = assemble_tk5(&g, &parts, &[0, 1, 2, 3, 4], Tk5Constraints::default()).unwrap_err();
        assert_eq!(err, Tk5Defect::Crowded { vertex: 6, degree: 4 });
    }

    #[test]
    fn missing_pair_and_extra_pieces() {
        let g = families::complete(7);
        let parts: Vec<Vec<Vertex>> = families::complete(5)
            .edges()
            .into_iter()
            .filter(|&e| e != (1, 2))
            .map(|(u, v)| vec![u, v])
            .collect();
        assert!(matches!(
            assemble_tk5(&g, &parts, &[0, 1, 2, 3, 4], Tk5Constraints::default()),
            Err(Tk5Defect::BranchDegree { vertex: 1, degree: 3 })
        ));
        let mut with_cycle = parts.clone();
        with_cycle.push(vec![1, 2]);
        with_cycle.push(vec![5, 6, 5]);
        assert!(matches!(
            assemble_tk5(&g, &with_cycle, &[0, 1, 2, 3, 4], Tk5Constraints::default()),
            Err(Tk5Defect::DeadEnd { .. })
        ));
        let mut pendant = parts;
        pendant.push(vec![1, 5, 2]);
        pendant.push(vec![5, 6]);
        assert!(matches!(
            assemble_tk5(&g, &pendant, &[0, 1, 2, 3, 4], Tk5Constraints::default()),
            Err(Tk5Defect::Crowded { vertex: 5, degree: 3 })
        ));
    }

    #[test]
    fn non_edges_are_rejected() {
        let g = families::cycle(5);
        let parts = vec![vec![0, 2]];
        assert_eq!(
            assemble_tk5(&g, &parts, &[0, 1, 2, 3, 4], Tk5Constraints::default()),
            Err(Tk5Defect::MissingEdge { u: 0, v: 2 })
        );
    }
}
