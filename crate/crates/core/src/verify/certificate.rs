//! The certificate format (schema version 1) and its independent checker.
//!
//! The checker decodes graph6 itself and works on a raw edge set; it does
//! not call any search, flow or planarity routine of the crate.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::{Disjunct, HypothesisReport, Status, TheoremId, Verdict};
use crate::graph::Vertex;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tk5Data {
    pub branch: [Vertex; 5],
    /// `paths[k]` joins the `k`-th branch pair (0,1), (0,2), ..., (3,4).
    pub paths: Vec<Vec<Vertex>>,
    /// Union of the path edges, sorted.
    pub edges: Vec<[Vertex; 2]>,
    pub forbidden_branch: Vec<Vertex>,
    /// Apex whose edges are restricted to `keep`.
    pub apex: Option<Vertex>,
    pub keep: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K4MinusData {
    pub vertices: [Vertex; 4],
    /// The five edges, sorted.
    pub edges: Vec<[Vertex; 2]>,
    /// The one pair of `vertices` not listed in `edges`.
    pub missing: [Vertex; 2],
    /// Vertices the subgraph must avoid.
    pub avoids: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tk5Member {
    pub pair: [Vertex; 2],
    pub tk5: Tk5Data,
}

/// Every three independent paths in `G1 - x` from `x_i` (two) and
/// `x_other` (one) to the three terminals use `x_other -> target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathConditionData {
    /// 1 or 2: which triangle vertex plays `x_i`.
    pub side: usize,
    pub x_i: Vertex,
    pub x_other: Vertex,
    pub terminals: [Vertex; 3],
    /// 1-based index of `target` in `terminals`.
    pub target_index: usize,
    pub target: Vertex,
    /// `N(x_i)`, sorted.
    pub neighbourhood: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Tk5(Tk5Data),
    K4Minus(K4MinusData),
    GadgetSeparation {
        a: Vertex,
        a_i: [Vertex; 4],
        b_i: [Vertex; 4],
        side1: Vec<Vertex>,
        side2: Vec<Vertex>,
        /// The sixteen gadget edges, sorted.
        edges: Vec<[Vertex; 2]>,
    },
    Neighbour {
        x: Vertex,
        neighbour: Vertex,
        edge: [Vertex; 2],
    },
    /// One `TK5` per pair `y1 < y2` of `N(x) - {x1, x2, x3}`.
    Tk5Family {
        x3: Vertex,
        members: Vec<Tk5Member>,
    },
    PathCondition(PathConditionData),
}

/// One JSON line of the certificate stream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub schema_version: u32,
    pub graph6: String,
    pub theorem: TheoremId,
    pub status: Status,
    pub disjunct: Option<Disjunct>,
    pub certificate: Option<Certificate>,
    pub hypothesis_report: HypothesisReport,
    pub budget: u64,
    pub steps: u64,
    pub detail: Option<String>,
}

impl CertificateRecord {
    pub fn from_verdict(graph6: String, v: &Verdict, budget: u64) -> Self {
        CertificateRecord {
            schema_version: SCHEMA_VERSION,
            graph6,
            theorem: v.theorem,
            status: v.status,
            disjunct: v.disjunct,
            certificate: v.certificate.clone(),
            hypothesis_report: v.report.clone(),
            budget,
            steps: v.steps,
            detail: v.detail.clone(),
        }
    }
}

struct Raw {
    n: usize,
    edges: HashSet<(Vertex, Vertex)>,
}

impl Raw {
    fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    fn neighbours(&self, v: Vertex) -> Vec<Vertex> {
        (0..self.n).filter(|&w| w != v && self.adjacent(v, w)).collect()
    }
}

fn decode(s: &str) -> Result<Raw, String> {
    let b: Vec<u8> = s.trim().bytes().map(|c| c.wrapping_sub(63)).collect();
    if b.is_empty() || b.iter().any(|&x| x > 63) {
        return Err("malformed graph6".into());
    }
    let (n, rest) = if b[0] < 63 {
        (b[0] as usize, &b[1..])
    } else if b.len() >= 4 && b[1] < 63 {
        (((b[1] as usize) << 12) | ((b[2] as usize) << 6) | b[3] as usize, &b[4..])
    } else {
        return Err("unsupported graph6 size".into());
    };
    let bits = n * n.saturating_sub(1) / 2;
    if rest.len() != bits.div_ceil(6) {
        return Err("graph6 length mismatch".into());
    }
    let mut edges = HashSet::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if rest[k / 6] >> (5 - k % 6) & 1 == 1 {
                edges.insert((u, v));
            }
            k += 1;
        }
    }
    Ok(Raw { n, edges })
}

fn label(rep: &HypothesisReport, key: &str) -> Result<Vertex, String> {
    rep.labels.get(key).copied().ok_or_else(|| format!("report lacks label {key}"))
}

fn sorted(mut v: Vec<Vertex>) -> Vec<Vertex> {
    v.sort_unstable();
    v.dedup();
    v
}

fn pair(u: Vertex, v: Vertex) -> [Vertex; 2] {
    [u.min(v), u.max(v)]
}

/// Re-checks a record against its graph: the certificate must prove the
/// recorded disjunct for the recorded labels. Records without a positive
/// status must carry no certificate.
pub fn validate_record(rec: &CertificateRecord) -> Result<(), String> {
    if rec.schema_version != SCHEMA_VERSION {
        return Err(format!("unknown schema version {}", rec.schema_version));
    }
    let g = decode(&rec.graph6)?;
    let rep = &rec.hypothesis_report;
    if rec.status != Status::Holds {
        return match (&rec.certificate, rec.disjunct) {
            (None, None) => Ok(()),
            _ => Err("only a positive verdict may carry a certificate".into()),
        };
    }
    let cert = rec.certificate.as_ref().ok_or("positive verdict without certificate")?;
    let d = rec.disjunct.ok_or("positive verdict without disjunct")?;
    use Certificate as C;
    use Disjunct as D;
    use TheoremId as T;
    match (rec.theorem, d, cert) {
        (T::ApexSide | T::ApexVertex | T::TriangleCut, D::Ii, C::K4Minus(k)) => {
            check_k4(&g, k, &[label(rep, "a")?])
        }
        (T::SixCut, D::Ii, C::K4Minus(k)) => check_k4(&g, k, &[]),
        (T::Contraction, D::Conclusion, C::K4Minus(k)) => {
            let t: Vec<Vertex> = ["t0", "t1", "t2"].iter().filter_map(|k| rep.labels.get(*k).copied()).collect();
            check_k4(&g, k, &sorted(t))
        }
        (T::ApexSide | T::ApexVertex | T::TriangleCut, D::Iii, C::GadgetSeparation { a, a_i, b_i, side1, side2, edges }) => {
            if *a != label(rep, "a")? {
                return Err("gadget apex differs from a".into());
            }
            check_gadget(&g, *a, a_i, b_i, side1, side2, edges)
        }
        (T::ApexSide | T::ApexVertex | T::TriangleCut, D::I, C::Tk5(t)) => check_tk5(&g, t, &[label(rep, "a")?], None),
        (T::SixCut, D::I, C::Tk5(t)) => check_tk5(&g, t, &[label(rep, "x")?], None),
        (T::Tk5, D::Conclusion, C::Tk5(t)) => check_tk5(&g, t, &[], None),
        (T::TriangleCut, D::Iv, C::Tk5(t)) => {
            let mut keep = vec![label(rep, "a1")?, label(rep, "a2")?];
            if rep.choice.len() != 3 {
                return Err("disjunct (iv) needs three chosen neighbours".into());
            }
            keep.extend_from_slice(&rep.choice);
            check_tk5(&g, t, &[], Some((label(rep, "a")?, sorted(keep))))
        }
        (T::Gadget, D::Conclusion, C::Tk5(t)) => {
            let a = label(rep, "a")?;
            let [b1, b2, b3, u1, u2] = ["b1", "b2", "b3", "u1", "u2"].map(|k| label(rep, k));
            let (b1, b2, b3, u1, u2) = (b1?, b2?, b3?, u1?, u2?);
            if sorted(vec![a, b1, b2, b3, u1]) != t.branch.to_vec() {
                return Err("gadget TK5 must branch at a, b1, b2, b3, u1".into());
            }
            check_tk5(&g, t, &[], Some((a, sorted(vec![b1, b2, b3, u1, u2]))))
        }
        (T::SixCut, D::Neighbour, C::Neighbour { x, neighbour, edge }) => {
            let sep = rep.separation.as_ref().ok_or("report lacks the separation")?;
            check_separation(&g, &sep.side1, &sep.side2)?;
            if *x != label(rep, "x")? || *edge != pair(*x, *neighbour) || !g.adjacent(*x, *neighbour) {
                return Err("neighbour edge does not match x".into());
            }
            if !sep.side1.contains(neighbour) || sep.side2.contains(neighbour) {
                return Err("neighbour is not inside G1 - G2".into());
            }
            Ok(())
        }
        (T::SixCut, D::Iii, C::Tk5Family { x3, members }) => {
            let (x, x1, x2) = (label(rep, "x")?, label(rep, "x1")?, label(rep, "x2")?);
            if !g.adjacent(x, *x3) || *x3 == x1 || *x3 == x2 {
                return Err("x3 is not in N(x) - {x1, x2}".into());
            }
            let ys: Vec<Vertex> = g.neighbours(x).into_iter().filter(|&y| y != x1 && y != x2 && y != *x3).collect();
            let mut want = Vec::new();
            for i in 0..ys.len() {
                for j in i + 1..ys.len() {
                    want.push([ys[i], ys[j]]);
                }
            }
            let got: Vec<[Vertex; 2]> = members.iter().map(|m| m.pair).collect();
            if got != want {
                return Err("family does not cover exactly the pairs of N(x) - {x1, x2, x3}".into());
            }
            for m in members {
                let keep = sorted(vec![x1, x2, *x3, m.pair[0], m.pair[1]]);
                check_tk5(&g, &m.tk5, &[], Some((x, keep)))?;
            }
            Ok(())
        }
        (T::SixCut, D::Iv, C::PathCondition(p)) => check_path_condition(&g, rep, p),
        (t, d, _) => Err(format!("certificate kind does not fit {} disjunct {}", t.name(), d.label())),
    }
}

fn check_k4(g: &Raw, k: &K4MinusData, avoids: &[Vertex]) -> Result<(), String> {
    if k.avoids != avoids {
        return Err("avoided set differs from the statement".into());
    }
    let vs = sorted(k.vertices.to_vec());
    if vs.len() != 4 || vs != k.vertices.to_vec() || vs.iter().any(|&v| v >= g.n || avoids.contains(&v)) {
        return Err("K4^- vertices invalid".into());
    }
    let mut all = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            all.push([vs[i], vs[j]]);
        }
    }
    let mut listed = k.edges.clone();
    if listed.windows(2).any(|w| w[0] >= w[1]) || listed.len() != 5 {
        return Err("K4^- edge list must be five sorted distinct pairs".into());
    }
    listed.push(k.missing);
    listed.sort_unstable();
    if listed != all {
        return Err("edges and missing pair do not partition the pairs of the four vertices".into());
    }
    if let Some(e) = k.edges.iter().find(|e| !g.adjacent(e[0], e[1])) {
        return Err(format!("{}-{} is not an edge", e[0], e[1]));
    }
    Ok(())
}

fn check_tk5(g: &Raw, t: &Tk5Data, forbidden: &[Vertex], apex: Option<(Vertex, Vec<Vertex>)>) -> Result<(), String> {
    if t.forbidden_branch != forbidden {
        return Err("forbidden branch set differs from the statement".into());
    }
    match (&apex, t.apex) {
        (None, None) if t.keep.is_empty() => {}
        (Some((a, keep)), Some(b)) if *a == b && *keep == t.keep => {}
        _ => return Err("apex restriction differs from the statement".into()),
    }
    let b = t.branch;
    if sorted(b.to_vec()) != b.to_vec() || b.iter().any(|&v| v >= g.n) {
        return Err("branch vertices must be 5 sorted distinct vertices".into());
    }
    if let Some(v) = b.iter().find(|v| forbidden.contains(v)) {
        return Err(format!("forbidden vertex {v} is a branch vertex"));
    }
    if t.paths.len() != 10 {
        return Err("a TK5 needs 10 paths".into());
    }
    let mut k = 0;
    let mut interior = HashSet::new();
    let mut union = BTreeSet::new();
    for i in 0..5 {
        for j in i + 1..5 {
            let p = &t.paths[k];
            k += 1;
            if p.len() < 2 || p[0] != b[i] || p[p.len() - 1] != b[j] {
                return Err(format!("path {k} does not join {} and {}", b[i], b[j]));
            }
            for w in p.windows(2) {
                if w[0] >= g.n || w[1] >= g.n || !g.adjacent(w[0], w[1]) {
                    return Err(format!("{}-{} is not an edge", w[0], w[1]));
                }
                if let Some((a, keep)) = &apex {
                    let other = if w[0] == *a { Some(w[1]) } else if w[1] == *a { Some(w[0]) } else { None };
                    if other.is_some_and(|o| !keep.contains(&o)) {
                        return Err(format!("edge {}-{} is deleted by the apex restriction", w[0], w[1]));
                    }
                }
                union.insert(pair(w[0], w[1]));
            }
            for &v in &p[1..p.len() - 1] {
                if b.contains(&v) || !interior.insert(v) {
                    return Err(format!("vertex {v} is reused"));
                }
            }
        }
    }
    if union.into_iter().collect::<Vec<_>>() != t.edges {
        return Err("edge list differs from the union of the paths".into());
    }
    Ok(())
}

fn check_separation(g: &Raw, side1: &[Vertex], side2: &[Vertex]) -> Result<(), String> {
    let s1: HashSet<_> = side1.iter().copied().collect();
    let s2: HashSet<_> = side2.iter().copied().collect();
    if (0..g.n).any(|v| !s1.contains(&v) && !s2.contains(&v)) || side1.iter().chain(side2).any(|&v| v >= g.n) {
        return Err("sides do not cover the vertex set".into());
    }
    if g.edges.iter().any(|&(u, v)| !(s1.contains(&u) && s1.contains(&v)) && !(s2.contains(&u) && s2.contains(&v))) {
        return Err("an edge crosses the separation".into());
    }
    if s1.is_subset(&s2) || s2.is_subset(&s1) {
        return Err("one side contains the other".into());
    }
    Ok(())
}

fn check_gadget(
    g: &Raw,
    a: Vertex,
    ai: &[Vertex; 4],
    bi: &[Vertex; 4],
    side1: &[Vertex],
    side2: &[Vertex],
    edges: &[[Vertex; 2]],
) -> Result<(), String> {
    let mut want = Vec::new();
    for i in 0..4 {
        want.push(pair(ai[i], bi[i]));
        want.push(pair(bi[i], ai[(i + 1) % 4]));
        want.push(pair(bi[i], bi[(i + 1) % 4]));
        want.push(pair(a, bi[i]));
    }
    want.sort_unstable();
    if want != edges || want.windows(2).any(|w| w[0] == w[1]) {
        return Err("edge list is not the gadget on the given labels".into());
    }
    let mut nine = vec![a];
    nine.extend_from_slice(ai);
    nine.extend_from_slice(bi);
    if sorted(nine.clone()).len() != 9 || nine.iter().any(|&v| v >= g.n) {
        return Err("gadget labels must be 9 distinct vertices".into());
    }
    if side2 != sorted(nine.clone()) {
        return Err("second side is not the gadget's vertex set".into());
    }
    let s1: Vec<Vertex> = (0..g.n).filter(|v| !bi.contains(v)).collect();
    if side1 != s1 {
        return Err("first side must be everything but the b_i".into());
    }
    check_separation(g, side1, side2)?;
    let cut = [a, ai[0], ai[1], ai[2], ai[3]];
    let mut have = Vec::new();
    for (i, &u) in nine.iter().enumerate() {
        for &v in &nine[i + 1..] {
            if g.adjacent(u, v) && !(cut.contains(&u) && cut.contains(&v)) {
                have.push(pair(u, v));
            }
        }
    }
    have.sort_unstable();
    if have != want {
        return Err("second side has edges outside the gadget".into());
    }
    Ok(())
}

fn check_path_condition(g: &Raw, rep: &HypothesisReport, p: &PathConditionData) -> Result<(), String> {
    let sep = rep.separation.as_ref().ok_or("report lacks the separation")?;
    check_separation(g, &sep.side1, &sep.side2)?;
    let (x, x1, x2) = (label(rep, "x")?, label(rep, "x1")?, label(rep, "x2")?);
    let (xi, xo) = match p.side {
        1 => (x1, x2),
        2 => (x2, x1),
        _ => return Err("side must be 1 or 2".into()),
    };
    if p.x_i != xi || p.x_other != xo {
        return Err("x_i and x_other do not match the triangle".into());
    }
    let cut: Vec<Vertex> = sep.side1.iter().copied().filter(|v| sep.side2.contains(v)).collect();
    let terms: Vec<Vertex> = cut.iter().copied().filter(|&v| v != x && v != x1 && v != x2).collect();
    if terms != p.terminals.to_vec() {
        return Err("terminals are not the rest of the cut".into());
    }
    if !(1..=3).contains(&p.target_index) || p.terminals[p.target_index - 1] != p.target {
        return Err("target does not match its index".into());
    }
    if p.neighbourhood != g.neighbours(xi) {
        return Err("neighbourhood list is not N(x_i)".into());
    }
    let inside: HashSet<Vertex> = sep.side1.iter().copied().filter(|v| !sep.side2.contains(v)).collect();
    if p.neighbourhood.iter().any(|&v| v != x && v != xo && !inside.contains(&v)) {
        return Err("x_i has a neighbour outside G1 - G2 + {x, x_other}".into());
    }
    let s1: HashSet<Vertex> = sep.side1.iter().copied().collect();
    let allowed = |v: Vertex| s1.contains(&v) && v != x;
    for (k, &vk) in p.terminals.iter().enumerate() {
        if vk == p.target {
            continue;
        }
        let rest: Vec<Vertex> = p.terminals.iter().copied().filter(|&v| v != vk).collect();
        if bad_triple(g, &allowed, xo, vk, xi, &rest) {
            return Err(format!("a triple sends x_other to terminal {}", k + 1));
        }
    }
    Ok(())
}

/// Brute force: independent paths `xo -> vk`, `xi -> rest[0]`, `xi -> rest[1]`.
fn bad_triple(g: &Raw, allowed: &dyn Fn(Vertex) -> bool, xo: Vertex, vk: Vertex, xi: Vertex, rest: &[Vertex]) -> bool {
    let mut found = false;
    let mut banned: HashSet<Vertex> = [xi, rest[0], rest[1]].into_iter().collect();
    simple_paths(g, allowed, xo, vk, &mut banned.clone(), &mut vec![xo], &mut |p| {
        let mut ban: HashSet<Vertex> = p.iter().copied().collect();
        ban.insert(rest[1]);
        let mut hit = false;
        simple_paths(g, allowed, xi, rest[0], &mut ban.clone(), &mut vec![xi], &mut |q| {
            let mut ban2 = ban.clone();
            ban2.remove(&rest[1]);
            ban2.extend(q.iter().copied().filter(|&v| v != xi));
            if reach(g, allowed, xi, rest[1], &ban2) {
                hit = true;
            }
            hit
        });
        found = hit;
        found
    });
    banned.clear();
    found
}

fn simple_paths(
    g: &Raw,
    allowed: &dyn Fn(Vertex) -> bool,
    from: Vertex,
    to: Vertex,
    banned: &mut HashSet<Vertex>,
    path: &mut Vec<Vertex>,
    f: &mut dyn FnMut(&[Vertex]) -> bool,
) -> bool {
    let v = *path.last().expect("non-empty");
    if v == to {
        return f(path);
    }
    for w in 0..g.n {
        if w == from || path.contains(&w) || !g.adjacent(v, w) || !allowed(w) || banned.contains(&w) && w != to {
            continue;
        }
        path.push(w);
        let stop = simple_paths(g, allowed, from, to, banned, path, f);
        path.pop();
        if stop {
            return true;
        }
    }
    false
}

fn reach(g: &Raw, allowed: &dyn Fn(Vertex) -> bool, from: Vertex, to: Vertex, banned: &HashSet<Vertex>) -> bool {
    let mut seen = HashSet::from([from]);
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        if v == to {
            return true;
        }
        for w in 0..g.n {
            if g.adjacent(v, w) && allowed(w) && !banned.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::verify::{verify_tk5, VerifyOptions};

    #[test]
    fn decoder_agrees_with_the_parser() {
        for g in [families::petersen(), families::complete(7), families::grid(3, 4), families::complete(70)] {
            let raw = decode(&crate::emit_graph6(&g)).unwrap();
            let want: HashSet<(Vertex, Vertex)> = g.edges().into_iter().collect();
            assert_eq!((raw.n, raw.edges), (g.n(), want));
        }
        assert!(decode("").is_err());
        assert!(decode("D?").is_err());
    }

    fn k5_record() -> CertificateRecord {
        let g = families::complete(5);
        let v = verify_tk5(&g, &VerifyOptions::default());
        CertificateRecord::from_verdict(crate::emit_graph6(&g), &v, 7)
    }

    #[test]
    fn record_round_trips_and_validates() {
        let rec = k5_record();
        validate_record(&rec).unwrap();
        let text = serde_json::to_string(&rec).unwrap();
        assert!(text.contains("\"kind\":\"tk5\""));
        let back: CertificateRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rec);
    }

    #[test]
    fn tampering_is_caught() {
        let rec = k5_record();
        let mut wrong_kind = rec.clone();
        wrong_kind.disjunct = Some(Disjunct::Ii);
        assert!(validate_record(&wrong_kind).is_err());
        let mut stray = rec.clone();
        stray.status = Status::Violation;
        assert!(validate_record(&stray).is_err());
        let mut version = rec.clone();
        version.schema_version = 2;
        assert!(validate_record(&version).is_err());
        let Some(Certificate::Tk5(t)) = &rec.certificate else { unreachable!() };
        let mut swapped = t.clone();
        swapped.paths.swap(0, 1);
        let mut r = rec.clone();
        r.certificate = Some(Certificate::Tk5(swapped));
        assert!(validate_record(&r).is_err());
        let mut extra = t.clone();
        extra.keep.push(0);
        r.certificate = Some(Certificate::Tk5(extra));
        assert!(validate_record(&r).is_err());
    }
}
