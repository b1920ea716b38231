//! The theorem verifiers. Each one checks its hypotheses, then tries the
//! disjuncts in a fixed order and wraps the first hit in a certificate.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::certificate::{Certificate, K4MinusData, PathConditionData, Tk5Data, Tk5Member};
use super::{Disjunct, HypothesisReport, Status, TheoremId, Verdict};
use crate::combinatorics::subsets;
use crate::connectivity::{fan_in, for_each_separation, Fan, SeparationQuery, DEFAULT_SEARCH_CAP};
use crate::discharging::{apex_side_planar, find_k4_minus, verify_contraction_prop, K4MinusWitness};
use crate::graph::{normalized, Graph, Vertex};
use crate::paths::for_each_induced_path;
use crate::report::{self, Checked, HypothesisError};
use crate::separation::{Separation, Side};
use crate::tk5::{find_gadget_separation, gadget_tk5, GadgetSpec, Tk5Certificate, Tk5Outcome, Tk5Search};
use crate::tk5::{DEFAULT_TK5_BUDGET, DEFAULT_TK5_CAP};

/// Limits handed to every oracle call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Step budget of each `TK5` search.
    pub tk5_budget: u64,
    pub tk5_cap: usize,
    /// Vertex cap of exhaustive separation searches.
    pub search_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tk5_budget: DEFAULT_TK5_BUDGET,
            tk5_cap: DEFAULT_TK5_CAP,
            search_cap: DEFAULT_SEARCH_CAP,
        }
    }
}

/// A graph with a separation and the labelled cut vertices: `apex` is `a`
/// (or `x` for six-cuts) and `triangle` holds `a1, a2` (or `x1, x2`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremInstance {
    pub g: Graph,
    pub separation: Separation,
    pub apex: Vertex,
    pub triangle: Option<[Vertex; 2]>,
}

enum Search {
    Found(Tk5Data),
    Absent,
    Stopped(String),
}

fn tk5_data(c: &Tk5Certificate) -> Tk5Data {
    Tk5Data {
        branch: c.branch,
        paths: c.paths.clone(),
        edges: c.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        forbidden_branch: c.constraints.forbidden_branch.clone(),
        apex: c.constraints.apex.as_ref().map(|r| r.a),
        keep: c.constraints.apex.as_ref().map(|r| r.keep.clone()).unwrap_or_default(),
    }
}

fn k4_data(w: &K4MinusWitness, avoids: &[Vertex]) -> K4MinusData {
    let mut vertices = w.vertices();
    vertices.sort_unstable();
    let mut edges: Vec<[Vertex; 2]> = w.edges().iter().map(|&(u, v)| [u.min(v), u.max(v)]).collect();
    edges.sort_unstable();
    let (p, q) = w.missing_pair();
    K4MinusData {
        vertices,
        edges,
        missing: [p.min(q), p.max(q)],
        avoids: normalized(avoids),
    }
}

fn gadget_data(sep: &Separation, spec: &GadgetSpec) -> Certificate {
    let mut edges: Vec<[Vertex; 2]> = spec.edges().iter().map(|&(u, v)| [u.min(v), u.max(v)]).collect();
    edges.sort_unstable();
    Certificate::GadgetSeparation {
        a: spec.a,
        a_i: spec.a_i,
        b_i: spec.b_i,
        side1: sep.side1.clone(),
        side2: sep.side2.clone(),
        edges,
    }
}

fn search(g: &Graph, s: Tk5Search, opts: &VerifyOptions, steps: &mut u64) -> Search {
    match s.budget(opts.tk5_budget).cap(opts.tk5_cap).run(g) {
        Ok(o) => {
            *steps += o.steps();
            match o {
                Tk5Outcome::Found { certificate, .. } => Search::Found(tk5_data(&certificate)),
                Tk5Outcome::Absent { .. } => Search::Absent,
                Tk5Outcome::BudgetExhausted { .. } => Search::Stopped("TK5 search ran out of budget".into()),
            }
        }
        Err(e) => Search::Stopped(e.to_string()),
    }
}

fn check(rep: &mut HypothesisReport, what: &str, r: Result<(), HypothesisError>) -> Result<(), HypothesisError> {
    r?;
    rep.checked.push(what.into());
    Ok(())
}

fn check_separation(g: &Graph, sep: &Separation, order: usize) -> Result<Separation, HypothesisError> {
    let s = Separation::new(g, &sep.side1, &sep.side2).map_err(|e| HypothesisError::structure(e.to_string()))?;
    if s.order() != order {
        return Err(HypothesisError::SetSize { what: "cut".into(), need: order, have: s.order() });
    }
    if s.side1.len() < 7 || s.side2.len() < 7 {
        return Err(HypothesisError::structure(format!(
            "sides have {} and {} vertices, need at least 7 each",
            s.side1.len(),
            s.side2.len()
        )));
    }
    Ok(s)
}

fn check_triangle(g: &Graph, sep: &Separation, t: [Vertex; 3]) -> Result<(), HypothesisError> {
    for v in t {
        report::require_member(v, &sep.cut, "the cut")?;
    }
    if normalized(&t).len() != 3 || !(g.has_edge(t[0], t[1]) && g.has_edge(t[1], t[2]) && g.has_edge(t[0], t[2])) {
        return Err(HypothesisError::structure(format!("{t:?} is not a triangle")));
    }
    Ok(())
}

/// Disjuncts (ii), (iii), (i) for statements centred at `a`. Returns the
/// verdict with the disjunct that fired, or gives it back with the reason
/// a search stopped early, if any.
fn apex_disjuncts(g: &Graph, a: Vertex, mut v: Verdict, opts: &VerifyOptions) -> Result<Verdict, (Verdict, Option<String>)> {
    if let Some(w) = find_k4_minus(g, &[a]) {
        return Ok(v.holds(Disjunct::Ii, Certificate::K4Minus(k4_data(&w, &[a]))));
    }
    if let Some((sep, spec)) = find_gadget_separation(g, a) {
        return Ok(v.holds(Disjunct::Iii, gadget_data(&sep, &spec)));
    }
    match search(g, Tk5Search::new().forbid(&[a]), opts, &mut v.steps) {
        Search::Found(t) => Ok(v.holds(Disjunct::I, Certificate::Tk5(t))),
        Search::Absent => Err((v, None)),
        Search::Stopped(r) => Err((v, Some(r))),
    }
}

fn unresolved(v: Verdict, stopped: Option<String>) -> Verdict {
    match stopped {
        Some(r) => v.ended(Status::Inconclusive, r),
        None => v.ended(Status::Violation, "no disjunct holds"),
    }
}

fn labelled(pairs: &[(&str, Vertex)]) -> HypothesisReport {
    HypothesisReport {
        labels: pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        ..HypothesisReport::default()
    }
}

/// 5-separation with an apex side: (i) a `TK5` avoiding `a` as a branch
/// vertex, (ii) `K4^-` in `G - a`, or (iii) a gadget separation at `a`.
pub fn verify_apexside1(inst: &TheoremInstance, opts: &VerifyOptions) -> Verdict {
    let (g, a) = (&inst.g, inst.apex);
    let mut v = Verdict::new(TheoremId::ApexSide, labelled(&[("a", a)]));
    let hyp = |rep: &mut HypothesisReport| -> Result<Separation, HypothesisError> {
        g.check_vertex(a)?;
        let sep = check_separation(g, &inst.separation, 5)?;
        rep.checked.push("5-separation with sides of at least 7 vertices".into());
        check(rep, "a in the cut", report::require_member(a, &sep.cut, "the cut"))?;
        check(rep, "5-connected", report::require_k_connected(g, 5))?;
        check(rep, "nonplanar", report::require_nonplanar(g, "G"))?;
        if !apex_side_planar(g, &sep, a) {
            return Err(HypothesisError::BoundaryNotCofacial { boundary: sep.cut.iter().copied().filter(|&c| c != a).collect() });
        }
        rep.checked.push("(G2 - a, cut - a) planar".into());
        Ok(sep)
    };
    match hyp(&mut v.report) {
        Ok(sep) => v.report.separation = Some(sep),
        Err(e) => return v.failed(e),
    }
    apex_disjuncts(g, a, v, opts).unwrap_or_else(|(v, r)| unresolved(v, r))
}

/// 5-separation whose cut holds the triangle `a a1 a2`. `choice` gives
/// `u1, u2, u3` for disjunct (iv); by default the three lowest members of
/// `N(a) - {a1, a2}`.
pub fn verify_5cut_triangle(inst: &TheoremInstance, choice: Option<[Vertex; 3]>, opts: &VerifyOptions) -> Verdict {
    let (g, a) = (&inst.g, inst.apex);
    let [a1, a2] = inst.triangle.unwrap_or([a, a]);
    let mut v = Verdict::new(TheoremId::TriangleCut, labelled(&[("a", a), ("a1", a1), ("a2", a2)]));
    let hyp = |rep: &mut HypothesisReport| -> Result<Separation, HypothesisError> {
        g.check_vertices(&[a, a1, a2])?;
        let sep = check_separation(g, &inst.separation, 5)?;
        rep.checked.push("5-separation with sides of at least 7 vertices".into());
        check(rep, "triangle a a1 a2 in the cut", check_triangle(g, &sep, [a, a1, a2]))?;
        check(rep, "5-connected", report::require_k_connected(g, 5))?;
        Ok(sep)
    };
    match hyp(&mut v.report) {
        Ok(sep) => v.report.separation = Some(sep),
        Err(e) => return v.failed(e),
    }
    let pool: Vec<Vertex> = g.neighbors(a).iter().copied().filter(|&u| u != a1 && u != a2).collect();
    let us = match choice {
        Some(us) => {
            if normalized(&us).len() != 3 || us.iter().any(|u| !pool.contains(u)) {
                return v.failed(HypothesisError::structure(format!(
                    "u1, u2, u3 = {us:?} must be distinct members of N(a) - {{a1, a2}}"
                )));
            }
            Some(us.to_vec())
        }
        None if pool.len() >= 3 => Some(pool[..3].to_vec()),
        None => {
            v.report.notes.push(format!(
                "N(a) - {{a1, a2}} has {} vertices; disjunct (iv) is inapplicable",
                pool.len()
            ));
            None
        }
    };
    if let Some(us) = &us {
        v.report.choice = us.clone();
    }
    let (mut v, stopped) = match apex_disjuncts(g, a, v, opts) {
        Ok(v) => return v,
        Err(x) => x,
    };
    let Some(us) = us else {
        return unresolved(v, stopped);
    };
    let mut keep = vec![a1, a2];
    keep.extend_from_slice(&us);
    match search(g, Tk5Search::new().apex_restriction(a, &keep), opts, &mut v.steps) {
        Search::Found(t) => v.holds(Disjunct::Iv, Certificate::Tk5(t)),
        Search::Absent => unresolved(v, stopped),
        Search::Stopped(r) => unresolved(v, Some(stopped.unwrap_or(r))),
    }
}

/// Whether disjunct (iv) of the six-cut statement holds for side `i` (1 or
/// 2) and terminal `j` (1-based): `N(x_i)` stays inside `G1 - G2` plus
/// `x, x_{3-i}`, and no three independent paths in `G1 - x` (two from
/// `x_i`, one from `x_{3-i}`) send `x_{3-i}` to a terminal other than
/// `v_j`.
pub fn path_condition(g: &Graph, sep: &Separation, x: Vertex, pair: [Vertex; 2], i: usize, j: usize) -> Option<PathConditionData> {
    let (xi, xo) = match i {
        1 => (pair[0], pair[1]),
        2 => (pair[1], pair[0]),
        _ => return None,
    };
    let terms: Vec<Vertex> = sep.cut.iter().copied().filter(|&c| c != x && c != xi && c != xo).collect();
    if terms.len() != 3 || !(1..=3).contains(&j) {
        return None;
    }
    let inside = sep.private(Side::First);
    if g.neighbors(xi).iter().any(|&w| w != x && w != xo && !inside.contains(&w)) {
        return None;
    }
    let g1 = sep.side_graph(g, Side::First);
    for k in (0..3).filter(|&k| k != j - 1) {
        let rest: Vec<Vertex> = (0..3).filter(|&l| l != k).map(|l| terms[l]).collect();
        let blocked = g1.mask(&[x, xi, rest[0], rest[1]]);
        // Shortening the single path inside itself keeps the triple
        // independent, so induced paths suffice.
        let hit = for_each_induced_path(&g1, xo, terms[k], &blocked, &mut |p: &[Vertex]| {
            let mut bl = vec![x];
            bl.extend_from_slice(p);
            match fan_in(&g1, xi, &rest, 2, &bl) {
                Fan::Paths(_) => ControlFlow::Break(()),
                Fan::Cut(_) => ControlFlow::Continue(()),
            }
        });
        if hit.is_break() {
            return None;
        }
    }
    Some(PathConditionData {
        side: i,
        x_i: xi,
        x_other: xo,
        terminals: [terms[0], terms[1], terms[2]],
        target_index: j,
        target: terms[j - 1],
        neighbourhood: g.neighbors(xi).to_vec(),
    })
}

fn check_minimal(g: &Graph, sep: &Separation, t: [Vertex; 3], cap: usize) -> Result<(), HypothesisError> {
    let outside: Vec<Vertex> = g.vertices().filter(|v| sep.side1.binary_search(v).is_err()).collect();
    let q = SeparationQuery::new(6)
        .exact_order(6)
        .cut_contains(&t)
        .private(&[], &outside)
        .side_sizes(7, 7)
        .cap(cap);
    let mut smaller = None;
    let _ = for_each_separation(g, &q, |s| {
        if s.side1.len() < sep.side1.len() && s.side1.iter().all(|v| sep.side1.binary_search(v).is_ok()) {
            smaller = Some(s.side1.clone());
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    })
    .map_err(|_| HypothesisError::Unverified { what: "minimality of G1".into(), n: g.n(), cap })?;
    match smaller {
        Some(s) => Err(HypothesisError::structure(format!("G1 is not minimal: {s:?} is a smaller first side"))),
        None => Ok(()),
    }
}

/// 6-separation with the triangle `x x1 x2` in the cut and `G1` minimal:
/// `x` has a neighbour in `G1 - G2`, or one of disjuncts (i)-(iv) holds.
pub fn verify_n_x1_cap_a(inst: &TheoremInstance, opts: &VerifyOptions) -> Verdict {
    let (g, x) = (&inst.g, inst.apex);
    let [x1, x2] = inst.triangle.unwrap_or([x, x]);
    let mut v = Verdict::new(TheoremId::SixCut, labelled(&[("x", x), ("x1", x1), ("x2", x2)]));
    let hyp = |rep: &mut HypothesisReport| -> Result<Separation, HypothesisError> {
        g.check_vertices(&[x, x1, x2])?;
        let sep = check_separation(g, &inst.separation, 6)?;
        rep.checked.push("6-separation with sides of at least 7 vertices".into());
        check(rep, "triangle x x1 x2 in the cut", check_triangle(g, &sep, [x, x1, x2]))?;
        check(rep, "5-connected", report::require_k_connected(g, 5))?;
        check(rep, "G1 minimal", check_minimal(g, &sep, [x, x1, x2], opts.search_cap))?;
        Ok(sep)
    };
    let sep = match hyp(&mut v.report) {
        Ok(sep) => sep,
        Err(e) => return v.failed(e),
    };
    v.report.separation = Some(sep.clone());
    let terms: Vec<Vertex> = sep.cut.iter().copied().filter(|&c| c != x && c != x1 && c != x2).collect();
    for (k, &t) in terms.iter().enumerate() {
        v.report.labels.insert(format!("v{}", k + 1), t);
    }
    let inside = sep.private(Side::First);
    if let Some(&nb) = g.neighbors(x).iter().find(|w| inside.contains(w)) {
        return v.holds(Disjunct::Neighbour, Certificate::Neighbour { x, neighbour: nb, edge: [x.min(nb), x.max(nb)] });
    }
    if let Some(w) = find_k4_minus(g, &[]) {
        return v.holds(Disjunct::Ii, Certificate::K4Minus(k4_data(&w, &[])));
    }
    let mut stopped = None;
    let cands: Vec<Vertex> = g.neighbors(x).iter().copied().filter(|&u| u != x1 && u != x2).collect();
    'x3: for &x3 in &cands {
        let ys: Vec<Vertex> = cands.iter().copied().filter(|&y| y != x3).collect();
        let mut members = Vec::new();
        for p in subsets(&ys, 2) {
            match search(g, Tk5Search::new().apex_restriction(x, &[x1, x2, x3, p[0], p[1]]), opts, &mut v.steps) {
                Search::Found(tk5) => members.push(Tk5Member { pair: [p[0], p[1]], tk5 }),
                Search::Absent => {
                    v.report.notes.push(format!("x3 = {x3} fails at y1, y2 = {}, {}", p[0], p[1]));
                    continue 'x3;
                }
                Search::Stopped(r) => {
                    v.report.notes.push(format!("x3 = {x3} undecided at y1, y2 = {}, {}", p[0], p[1]));
                    stopped.get_or_insert(r);
                    continue 'x3;
                }
            }
        }
        v.report.notes.push(format!("x3 = {x3} succeeds"));
        return v.holds(Disjunct::Iii, Certificate::Tk5Family { x3, members });
    }
    match search(g, Tk5Search::new().forbid(&[x]), opts, &mut v.steps) {
        Search::Found(t) => return v.holds(Disjunct::I, Certificate::Tk5(t)),
        Search::Absent => {}
        Search::Stopped(r) => {
            stopped.get_or_insert(r);
        }
    }
    for i in 1..=2 {
        for j in 1..=3 {
            if let Some(p) = path_condition(g, &sep, x, [x1, x2], i, j) {
                return v.holds(Disjunct::Iv, Certificate::PathCondition(p));
            }
        }
    }
    unresolved(v, stopped)
}

/// 5-connected nonplanar `G` with `G - a` planar: (i), (ii) or (iii) as
/// for the apex-side statement.
pub fn verify_apexvertex(g: &Graph, a: Vertex, opts: &VerifyOptions) -> Verdict {
    let mut v = Verdict::new(TheoremId::ApexVertex, labelled(&[("a", a)]));
    let hyp = |rep: &mut HypothesisReport| -> Result<(), HypothesisError> {
        g.check_vertex(a)?;
        check(rep, "5-connected", report::require_k_connected(g, 5))?;
        check(rep, "nonplanar", report::require_nonplanar(g, "G"))?;
        let (ga, _) = g.remove_vertices(&[a])?;
        check(rep, "G - a planar", report::require_planar(&ga, "G - a").map(|_| ()))
    };
    if let Err(e) = hyp(&mut v.report) {
        return v.failed(e);
    }
    apex_disjuncts(g, a, v, opts).unwrap_or_else(|(v, r)| unresolved(v, r))
}

/// The constructive gadget statement for one `(u1, u2)` choice.
pub fn verify_gadget(g: &Graph, spec: &GadgetSpec, u1: Vertex, u2: Vertex) -> Verdict {
    let mut pairs = vec![("a", spec.a)];
    let names = [["a1", "a2", "a3", "a4"], ["b1", "b2", "b3", "b4"]];
    for i in 0..4 {
        pairs.push((names[0][i], spec.a_i[i]));
        pairs.push((names[1][i], spec.b_i[i]));
    }
    pairs.push(("u1", u1));
    pairs.push(("u2", u2));
    let mut v = Verdict::new(TheoremId::Gadget, labelled(&pairs));
    match gadget_tk5(g, spec, u1, u2) {
        Err(e) => v.failed(e),
        Ok(Checked::Violation { detail, .. }) => v.ended(Status::Violation, detail),
        Ok(Checked::Holds { certificate: t }) => {
            v.report.checked = vec!["gadget spans G2".into(), "at least 11 vertices".into(), "5-connected".into(), "nonplanar".into()];
            if t.u1 != u1 {
                v.report.notes.push("u1 = b4, so u1 and u2 were swapped".into());
                v.report.labels.insert("u1".into(), t.u1);
                v.report.labels.insert("u2".into(), t.u2);
            }
            v.report.notes.push(format!("case {:?}", t.case).to_lowercase());
            v.holds(Disjunct::Conclusion, Certificate::Tk5(tk5_data(&t.certificate)))
        }
    }
}

/// `T` inducing `K2` or `K3` with `G / T` 5-connected and planar: a `K4^-`
/// in `G - V(T)`.
pub fn verify_contraction(g: &Graph, t: &[Vertex]) -> Verdict {
    let t = normalized(t);
    let pairs: Vec<(&str, Vertex)> = ["t0", "t1", "t2"].into_iter().zip(t.iter().copied()).collect();
    let mut v = Verdict::new(TheoremId::Contraction, labelled(&pairs));
    match verify_contraction_prop(g, &t) {
        Err(e) => v.failed(e),
        Ok(Checked::Violation { detail, .. }) => v.ended(Status::Violation, detail),
        Ok(Checked::Holds { certificate: w }) => {
            v.report.checked = vec!["T induces K2 or K3".into(), "5-connected".into(), "nonplanar".into(), "G / T 5-connected and planar".into()];
            v.holds(Disjunct::Conclusion, Certificate::K4Minus(k4_data(&w, &t)))
        }
    }
}

/// Plain `TK5` search; absence is an answer, not a violation.
pub fn verify_tk5(g: &Graph, opts: &VerifyOptions) -> Verdict {
    let mut v = Verdict::new(TheoremId::Tk5, HypothesisReport::default());
    match search(g, Tk5Search::new(), opts, &mut v.steps) {
        Search::Found(t) => v.holds(Disjunct::Conclusion, Certificate::Tk5(t)),
        Search::Absent => v.ended(Status::Absent, "no TK5"),
        Search::Stopped(r) => v.ended(Status::Inconclusive, r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::gen::{self, GlueSpec};
    use crate::tk5::build_gadget;
    use crate::verify::{validate_record, CertificateRecord};

    fn valid(g: &Graph, v: &Verdict) {
        let rec = CertificateRecord::from_verdict(crate::emit_graph6(g), v, 0);
        validate_record(&rec).unwrap_or_else(|e| panic!("{e}: {v:?}"));
    }

    fn k7_gadget() -> TheoremInstance {
        let (g, spec) = build_gadget(Some((&families::complete(7), &[0, 1, 2, 3, 4][..]))).unwrap();
        let side1: Vec<Vertex> = (0..7).collect();
        let separation = Separation::new(&g, &side1, &spec.vertices()).unwrap();
        TheoremInstance { g, separation, apex: spec.a, triangle: None }
    }

    fn spec(cut: usize, private1: usize, private2: usize) -> GlueSpec {
        GlueSpec { cut, private1, private2, p1: 0.9, p2: 0.9, triangle: true, apex_side: false, k4_free: false }
    }

    #[test]
    fn gadget_on_k7_gives_k4_minus() {
        let inst = k7_gadget();
        let v = verify_apexside1(&inst, &VerifyOptions::default());
        assert_eq!(v.key(), "holds/ii");
        assert!(v.report.checked.iter().any(|c| c.contains("planar")));
        valid(&inst.g, &v);
    }

    #[test]
    fn k4_free_side_leaves_the_gadget() {
        let (g, s) = gen::k4_free_gadget(2);
        let side1: Vec<Vertex> = g.vertices().filter(|v| !s.b_i.contains(v)).collect();
        let separation = Separation::new(&g, &side1, &s.vertices()).unwrap();
        let inst = TheoremInstance { g, separation, apex: s.a, triangle: None };
        let v = verify_apexside1(&inst, &VerifyOptions::default());
        assert_eq!(v.key(), "holds/iii");
        match v.certificate.as_ref().unwrap() {
            Certificate::GadgetSeparation { a_i, b_i, .. } => {
                assert_eq!(normalized(a_i), normalized(&s.a_i));
                assert_eq!(normalized(b_i), normalized(&s.b_i));
            }
            c => panic!("{c:?}"),
        }
        valid(&inst.g, &v);
    }

    #[test]
    fn apex_side_hypotheses_are_reported() {
        let mut r = gen::rng(5);
        let mut small = spec(5, 4, 1);
        small.triangle = false;
        small.p1 = 1.0;
        let (g, separation) = gen::glued(&small, &mut r);
        let v = verify_apexside1(&TheoremInstance { g, separation, apex: 0, triangle: None }, &VerifyOptions::default());
        assert_eq!(v.status, Status::HypothesisFailed);

        let mut dense = spec(5, 3, 4);
        (dense.p1, dense.p2) = (1.0, 1.0);
        let (g, separation) = gen::glued(&dense, &mut r);
        let v = verify_apexside1(&TheoremInstance { g, separation, apex: 0, triangle: None }, &VerifyOptions::default());
        assert!(matches!(v.report.failure, Some(HypothesisError::BoundaryNotCofacial { .. })), "{v:?}");
        assert!(v.certificate.is_none());
    }

    #[test]
    fn triangle_cut_and_choice() {
        let mut r = gen::rng(11);
        let (g, separation) = gen::glued_five_connected(&spec(5, 3, 3), &mut r, 100).unwrap();
        let inst = TheoremInstance { g, separation, apex: 0, triangle: Some([1, 2]) };
        let v = verify_5cut_triangle(&inst, None, &VerifyOptions::default());
        assert_eq!(v.key(), "holds/ii");
        assert_eq!(v.report.choice.len(), 3);
        valid(&inst.g, &v);
        let bad = verify_5cut_triangle(&inst, Some([1, 3, 4]), &VerifyOptions::default());
        assert_eq!(bad.status, Status::HypothesisFailed);
        let not_tri = TheoremInstance { triangle: Some([1, 1]), ..inst };
        assert_eq!(verify_5cut_triangle(&not_tri, None, &VerifyOptions::default()).status, Status::HypothesisFailed);
    }

    #[test]
    fn restricted_tk5_certificate_validates_as_disjunct_iv() {
        let inst = k7_gadget();
        let g = &inst.g;
        let a = 0;
        let us: Vec<Vertex> = g.neighbors(a).iter().copied().filter(|&u| u != 1 && u != 2).take(3).collect();
        let mut keep = vec![1, 2];
        keep.extend_from_slice(&us);
        let mut steps = 0;
        let Search::Found(t) = search(g, Tk5Search::new().apex_restriction(a, &keep), &VerifyOptions::default(), &mut steps) else {
            panic!("K7 side has a TK5 with few apex edges");
        };
        let mut rep = labelled(&[("a", a), ("a1", 1), ("a2", 2)]);
        rep.choice = us;
        let v = Verdict::new(TheoremId::TriangleCut, rep.clone()).holds(Disjunct::Iv, Certificate::Tk5(t.clone()));
        valid(g, &v);
        rep.choice.swap(0, 1);
        rep.choice[0] = 1;
        let wrong = Verdict::new(TheoremId::TriangleCut, rep).holds(Disjunct::Iv, Certificate::Tk5(t));
        assert!(validate_record(&CertificateRecord::from_verdict(crate::emit_graph6(g), &wrong, 0)).is_err());
    }

    fn six_cut(seed: u64, private1: usize, private2: usize) -> TheoremInstance {
        let mut r = gen::rng(seed);
        let (g, separation) = gen::glued_five_connected(&spec(6, private1, private2), &mut r, 200).unwrap();
        TheoremInstance { g, separation, apex: 0, triangle: Some([1, 2]) }
    }

    #[test]
    fn six_cut_neighbour_and_k4_minus() {
        let inst = six_cut(3, 3, 3);
        let v = verify_n_x1_cap_a(&inst, &VerifyOptions::default());
        assert_eq!(v.key(), "holds/neighbour");
        valid(&inst.g, &v);
        // Move x's side-1 neighbours away: x keeps its cut neighbours.
        let inside = inst.separation.private(Side::First);
        let drop: Vec<(Vertex, Vertex)> = inside.iter().map(|&p| (0, p)).collect();
        let g = inst.g.without_edges(&drop);
        if crate::connectivity::is_k_connected(&g, 5).unwrap().holds {
            let inst = TheoremInstance { g, ..inst };
            let v = verify_n_x1_cap_a(&inst, &VerifyOptions::default());
            assert_eq!(v.key(), "holds/ii");
            valid(&inst.g, &v);
        }
    }

    #[test]
    fn six_cut_minimality_is_enforced() {
        let inst = six_cut(4, 3, 3);
        let mut opts = VerifyOptions::default();
        opts.search_cap = 8;
        let v = verify_n_x1_cap_a(&inst, &opts);
        assert!(matches!(v.report.failure, Some(HypothesisError::Unverified { .. })));
    }

    /// Independent oracle: every triple of paths, by brute force, through
    /// the certificate checker.
    #[test]
    fn path_condition_matches_brute_force() {
        let mut r = gen::rng(8);
        let mut seen = [0; 3];
        for k in 0..80 {
            let mut s = spec(6, 3, 2);
            s.p1 = [0.3, 0.45, 0.6, 0.8][k % 4];
            let (g, sep) = gen::glued(&s, &mut r);
            // Keep x1 inside G1 so the neighbourhood clause can hold.
            let outside: Vec<(Vertex, Vertex)> = g.neighbors(1).iter().filter(|&&w| w > 2 && !sep.private(Side::First).contains(&w)).map(|&w| (1, w)).collect();
            let g = g.without_edges(&outside);
            let mut rep = labelled(&[("x", 0), ("x1", 1), ("x2", 2)]);
            rep.separation = Some(sep.clone());
            for i in 1..=2 {
                for j in 1..=3 {
                    let got = path_condition(&g, &sep, 0, [1, 2], i, j);
                    let data = got.clone().unwrap_or_else(|| {
                        let (xi, xo) = if i == 1 { (1, 2) } else { (2, 1) };
                        PathConditionData {
                            side: i,
                            x_i: xi,
                            x_other: xo,
                            terminals: [3, 4, 5],
                            target_index: j,
                            target: 2 + j,
                            neighbourhood: g.neighbors(xi).to_vec(),
                        }
                    });
                    let v = Verdict::new(TheoremId::SixCut, rep.clone()).holds(Disjunct::Iv, Certificate::PathCondition(data.clone()));
                    let ok = validate_record(&CertificateRecord::from_verdict(crate::emit_graph6(&g), &v, 0)).is_ok();
                    assert_eq!(ok, got.is_some(), "{} i={i} j={j}", crate::emit_graph6(&g));
                    let nbr_ok = g.neighbors(data.x_i).iter().all(|&w| w == 0 || w == data.x_other || sep.private(Side::First).contains(&w));
                    match (ok, nbr_ok) {
                        (true, _) => seen[0] += 1,
                        (false, true) => seen[1] += 1,
                        (false, false) => seen[2] += 1,
                    }
                }
            }
        }
        assert!(seen.iter().all(|&c| c > 0), "{seen:?}");
    }

    #[test]
    fn apex_vertex_cases() {
        let opts = VerifyOptions::default();
        assert_eq!(verify_apexvertex(&families::complete(6), 0, &opts).status, Status::HypothesisFailed);
        let ico = families::icosahedron();
        let (g, a) = ico.with_new_vertex(&(0..12).collect::<Vec<_>>()).unwrap();
        let v = verify_apexvertex(&g, a, &opts);
        assert_eq!(v.key(), "holds/ii");
        valid(&g, &v);
    }

    #[test]
    fn gadget_and_contraction_wrappers() {
        let inst = k7_gadget();
        let (g, s) = build_gadget(Some((&families::complete(7), &[0, 1, 2, 3, 4][..]))).unwrap();
        let v = verify_gadget(&g, &s, s.b_i[3], 5);
        assert_eq!(v.key(), "holds/conclusion");
        assert_eq!(v.report.labels["u1"], 5);
        valid(&inst.g, &v);
        assert_eq!(verify_gadget(&g, &s, s.b_i[0], 5).status, Status::HypothesisFailed);
        assert_eq!(verify_contraction(&families::complete(6), &[0, 1]).status, Status::HypothesisFailed);
    }

    #[test]
    fn plain_tk5_job() {
        let opts = VerifyOptions::default();
        let v = verify_tk5(&families::complete(5), &opts);
        assert_eq!(v.key(), "holds/conclusion");
        valid(&families::complete(5), &v);
        assert_eq!(verify_tk5(&families::icosahedron(), &opts).status, Status::Absent);
        assert_eq!(verify_tk5(&families::complete(20), &opts).status, Status::Inconclusive);
    }
}
