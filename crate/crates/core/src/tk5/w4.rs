//! Spoke configurations: a hub `w`, a cycle `C_w` around it, and paths
//! from `w` to a five-vertex set `A` that meet `C_w` once each and
//! otherwise share only `w`.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::gadget::{matches_gadget, GadgetSpec};
use crate::combinatorics::{for_each_subset_of, permutations};
use crate::connectivity::{find_separation, SeparationQuery, DEFAULT_SEARCH_CAP};
use crate::graph::{normalized, Graph, Vertex};
use crate::planarity::{cofacial_cycle, plane_in_cyclic_order, plane_with_boundary, PlaneEmbedding};
use crate::report::{self, HypothesisError};

pub const DEFAULT_W4_BUDGET: u64 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum W4Variant {
    /// `A` is given in its cyclic boundary order; two of its members must
    /// end spokes (usually the first and the last).
    Plain { ends: [Vertex; 2] },
    /// Three spokes in `G - a` into `A - a`, hub `w` adjacent to `a` and off
    /// the outer face of `G - a`. Without `w` every eligible hub is tried.
    Apex1 { a: Vertex, w: Option<Vertex> },
    /// Four spokes in `G` into `A`, `C_w` disjoint from the outer cycle of
    /// `G - a`.
    Apex2 { a: Vertex },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct W4Configuration {
    pub hub: Vertex,
    pub cycle: Vec<Vertex>,
    /// Paths from the hub into `A`.
    pub spokes: Vec<Vec<Vertex>>,
    /// Apex variant with `a` on a spoke: `spokes[0]` ends at `a`, and
    /// `labels = [a1, a2, a3, a4]` with `a_i` ending `spokes[i - 1]` for
    /// `i >= 2` and `a1` on no spoke.
    pub labels: Option<[Vertex; 4]>,
    /// Outer cycle of `G - a` used for the order clause (apex2 only).
    pub outer: Option<Vec<Vertex>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum W4Outcome {
    Found { configuration: W4Configuration },
    /// The apex2 exception: `G` is the gadget with the cut `A`.
    Gadget { spec: GadgetSpec },
    NotFound,
    BudgetExhausted,
}

impl W4Configuration {
    pub fn ends(&self) -> Vec<Vertex> {
        self.spokes.iter().map(|p| *p.last().expect("non-empty")).collect()
    }

    /// Checks the configuration's clauses for `variant` against `g`.
    pub fn validate(&self, g: &Graph, a_set: &[Vertex], variant: &W4Variant) -> Result<(), String> {
        let in_a = |v: Vertex| a_set.contains(&v);
        let w = self.hub;
        if w >= g.n() || in_a(w) {
            return Err(format!("hub {w} is not a vertex outside A"));
        }
        let c = &self.cycle;
        if c.len() < 3 || normalized(c).len() != c.len() || c.iter().any(|&v| v >= g.n()) {
            return Err("C_w is not a cycle".into());
        }
        for i in 0..c.len() {
            if !g.has_edge(c[i], c[(i + 1) % c.len()]) {
                return Err(format!("C_w edge {}-{} missing", c[i], c[(i + 1) % c.len()]));
            }
        }
        if let Some(&v) = c.iter().find(|&&v| v == w || in_a(v)) {
            return Err(format!("C_w contains {v}"));
        }
        let want = if matches!(variant, W4Variant::Apex1 { .. }) { 3 } else { 4 };
        if self.spokes.len() != want {
            return Err(format!("{} spokes, expected {want}", self.spokes.len()));
        }
        let mut owner = vec![usize::MAX; g.n()];
        for (i, p) in self.spokes.iter().enumerate() {
            if p.len() < 2 || p[0] != w {
                return Err(format!("spoke {i} does not start at the hub"));
            }
            for e in p.windows(2) {
                if e[0] >= g.n() || e[1] >= g.n() || !g.has_edge(e[0], e[1]) {
                    return Err(format!("spoke {i}: {}-{} is not an edge", e[0], e[1]));
                }
            }
            let end = p[p.len() - 1];
            if !in_a(end) || p[..p.len() - 1].iter().any(|&v| in_a(v)) {
                return Err(format!("spoke {i} must meet A exactly at its end"));
            }
            if p.iter().filter(|v| c.contains(v)).count() != 1 {
                return Err(format!("spoke {i} must meet C_w exactly once"));
            }
            for &v in &p[1..] {
                if owner[v] != usize::MAX {
                    return Err(format!("spokes {} and {i} share {v}", owner[v]));
                }
                owner[v] = i;
            }
        }
        let ends = self.ends();
        match *variant {
            W4Variant::Plain { ends: [x, y] } => {
                if !ends.contains(&x) || !ends.contains(&y) {
                    return Err(format!("{x} and {y} must both end spokes"));
                }
            }
            W4Variant::Apex1 { a, .. } => {
                if self.spokes.iter().flatten().any(|&v| v == a) {
                    return Err("a spoke uses a".into());
                }
            }
            W4Variant::Apex2 { a } => {
                let Some(d) = &self.outer else {
                    return Err("missing outer cycle".into());
                };
                if let Some(&v) = c.iter().find(|v| d.contains(v)) {
                    return Err(format!("C_w meets the outer cycle at {v}"));
                }
                if ends.contains(&a) {
                    let Some(labels) = self.labels else {
                        return Err("a is on a spoke but no labelling is given".into());
                    };
                    if !apex_order_holds(&self.spokes, d, a, &labels) {
                        return Err(format!("labels {labels:?} violate the outer-cycle order"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn apex_order_holds(spokes: &[Vec<Vertex>], d: &[Vertex], a: Vertex, labels: &[Vertex; 4]) -> bool {
    if *spokes[0].last().expect("non-empty") != a {
        return false;
    }
    for i in 1..4 {
        if *spokes[i].last().expect("non-empty") != labels[i] {
            return false;
        }
    }
    if spokes.iter().any(|p| p.contains(&labels[0])) {
        return false;
    }
    let x: Vec<Vertex> = spokes[0].iter().copied().filter(|v| d.contains(v)).collect();
    let len = d.len();
    let Some(start) = d.iter().position(|&v| v == labels[0]) else {
        return false;
    };
    [false, true].iter().any(|&rev| {
        let pos = |v: Vertex| {
            d.iter().position(|&u| u == v).map(|p| {
                let off = (p + len - start) % len;
                if rev && off != 0 {
                    len - off
                } else {
                    off
                }
            })
        };
        let (Some(p2), Some(p3), Some(p4)) = (pos(labels[1]), pos(labels[2]), pos(labels[3])) else {
            return false;
        };
        p2 < p3 && p3 < p4 && x.iter().all(|&v| pos(v).is_some_and(|p| p3 < p && p < p4))
    })
}

/// Searches for a configuration with default budget and separation cap.
pub fn find_w4_configuration(g: &Graph, a_set: &[Vertex], variant: W4Variant) -> Result<W4Outcome, HypothesisError> {
    find_w4_configuration_with(g, a_set, variant, DEFAULT_W4_BUDGET, DEFAULT_SEARCH_CAP)
}

/// Checks the variant's hypotheses, then searches hubs in increasing id.
/// For the plain variant the cofacial cycle of the hub is tried first,
/// then every cycle of `(G - A) - w`; the apex variants use the cofacial
/// cycle of the embedding found for `G - a`.
pub fn find_w4_configuration_with(
    g: &Graph,
    a_set: &[Vertex],
    variant: W4Variant,
    budget: u64,
    cap: usize,
) -> Result<W4Outcome, HypothesisError> {
    g.check_vertices(a_set)?;
    if a_set.len() != 5 || normalized(a_set).len() != 5 {
        return Err(HypothesisError::SetSize { what: "A".into(), need: 5, have: normalized(a_set).len() });
    }
    report::require_min_vertices(g, 7)?;
    let mut search = Spokes::new(g, budget);
    match variant {
        W4Variant::Plain { ends } => {
            for e in ends {
                report::require_member(e, a_set, "A")?;
            }
            report::require_ka_connected(g, 5, a_set)?;
            let emb = plane_in_cyclic_order(g, a_set)
                .map_err(|e| HypothesisError::Input { message: e.to_string() })?
                .ok_or_else(|| HypothesisError::BoundaryNotCofacial { boundary: a_set.to_vec() })?;
            let mut in_a = g.mask(a_set);
            let outside: Vec<Vertex> = g.vertices().filter(|&w| !in_a[w]).collect();
            for w in outside {
                in_a[w] = true;
                let mut cycles = Vec::new();
                if !emb.is_on_outer_face(w) {
                    if let Ok(Some(c)) = cofacial_cycle(&emb, w) {
                        if c.iter().all(|&v| !in_a[v]) {
                            cycles.push(c);
                        }
                    }
                }
                cycles.extend(all_cycles(g, &in_a));
                in_a[w] = false;
                for c in cycles {
                    if let Some(spokes) = search.run(w, &c, a_set, 4, &ends, &[]) {
                        return Ok(found(w, c, spokes, None, None));
                    }
                    if search.exhausted {
                        return Ok(W4Outcome::BudgetExhausted);
                    }
                }
            }
            Ok(W4Outcome::NotFound)
        }
        W4Variant::Apex1 { a, w } => {
            report::require_member(a, a_set, "A")?;
            let (emb, map) = apex_hypotheses(g, a_set, a, false, cap)?;
            let rest: Vec<Vertex> = a_set.iter().copied().filter(|&x| x != a).collect();
            let hubs: Vec<Vertex> = match w {
                Some(w) => {
                    g.check_vertex(w)?;
                    if !g.has_edge(a, w) || emb.is_on_outer_face(local(&map, w)) {
                        return Err(HypothesisError::structure(format!(
                            "w={w} must be a neighbour of a off the outer face of G - a"
                        )));
                    }
                    vec![w]
                }
                None => g
                    .neighbors(a)
                    .iter()
                    .copied()
                    .filter(|&v| !emb.is_on_outer_face(local(&map, v)))
                    .collect(),
            };
            for w in hubs {
                let Ok(Some(c)) = cofacial_cycle(&emb, local(&map, w)) else {
                    continue;
                };
                let c: Vec<Vertex> = c.into_iter().map(|v| map[v]).collect();
                if let Some(spokes) = search.run(w, &c, &rest, 3, &[], &[a]) {
                    return Ok(found(w, c, spokes, None, None));
                }
                if search.exhausted {
                    return Ok(W4Outcome::BudgetExhausted);
                }
            }
            Ok(W4Outcome::NotFound)
        }
        W4Variant::Apex2 { a } => {
            report::require_member(a, a_set, "A")?;
            if let Some(k) = crate::discharging::find_k4_minus(g, &[a]) {
                return Err(HypothesisError::structure(format!("G - a contains K4^- on {:?}", k.vertices())));
            }
            let (emb, map) = apex_hypotheses(g, a_set, a, true, cap)?;
            if let Some(spec) = gadget_labelling(g, a_set, a) {
                return Ok(W4Outcome::Gadget { spec });
            }
            let outer: Vec<Vertex> = emb.faces[emb.outer_face()].iter().map(|&v| map[v]).collect();
            for w in g.vertices().filter(|v| !a_set.contains(v)) {
                let lw = local(&map, w);
                if emb.is_on_outer_face(lw) {
                    continue;
                }
                let Ok(Some(c)) = cofacial_cycle(&emb, lw) else {
                    continue;
                };
                let c: Vec<Vertex> = c.into_iter().map(|v| map[v]).collect();
                if c.iter().any(|v| outer.contains(v)) {
                    continue;
                }
                let mut hit = None;
                let _ = search.each(w, &c, a_set, 4, &[], &[], &mut |spokes| {
                    if !spokes.iter().any(|p| p.contains(&a)) {
                        hit = Some((spokes.to_vec(), None));
                        return ControlFlow::Break(());
                    }
                    if let Some((sp, labels)) = apex_labelling(spokes, &outer, a, a_set) {
                        hit = Some((sp, Some(labels)));
                        return ControlFlow::Break(());
                    }
                    ControlFlow::Continue(())
                });
                if let Some((spokes, labels)) = hit {
                    return Ok(found(w, c, spokes, labels, Some(outer)));
                }
                if search.exhausted {
                    return Ok(W4Outcome::BudgetExhausted);
                }
            }
            Ok(W4Outcome::NotFound)
        }
    }
}

fn found(
    hub: Vertex,
    cycle: Vec<Vertex>,
    spokes: Vec<Vec<Vertex>>,
    labels: Option<[Vertex; 4]>,
    outer: Option<Vec<Vertex>>,
) -> W4Outcome {
    W4Outcome::Found {
        configuration: W4Configuration { hub, cycle, spokes, labels, outer },
    }
}

fn local(map: &[Vertex], v: Vertex) -> Vertex {
    map.iter().position(|&m| m == v).expect("vertex kept")
}

/// Connectivity, planarity of `G - a` with the boundary on one face, and
/// the absence of a large 5-separation away from `A`. Returns the
/// embedding of `G - a` and its vertex map.
fn apex_hypotheses(
    g: &Graph,
    a_set: &[Vertex],
    a: Vertex,
    with_neighbours: bool,
    cap: usize,
) -> Result<(PlaneEmbedding, Vec<Vertex>), HypothesisError> {
    if !g.is_connected() {
        return Err(HypothesisError::structure("G is not connected"));
    }
    report::require_ka_connected(g, 5, a_set)?;
    let (ga, map) = g.remove_vertices(&[a])?;
    let mut boundary: Vec<Vertex> = a_set.iter().copied().filter(|&x| x != a).collect();
    if with_neighbours {
        boundary.extend_from_slice(g.neighbors(a));
    }
    let boundary = normalized(&boundary);
    let local_boundary: Vec<Vertex> = boundary.iter().map(|&v| local(&map, v)).collect();
    let emb = plane_with_boundary(&ga, &local_boundary)?
        .ok_or(HypothesisError::BoundaryNotCofacial { boundary })?;
    let q = SeparationQuery::new(5).exact_order(5).sides(a_set, &[]).side_sizes(0, 7).cap(cap);
    match find_separation(g, &q) {
        Ok(None) => {}
        Ok(Some(s)) => {
            return Err(HypothesisError::structure(format!(
                "5-separation with A in G1 and |V(G2)| >= 7: cut {:?}",
                s.cut
            )))
        }
        Err(_) => {
            return Err(HypothesisError::Unverified {
                what: "no 5-separation with A in G1 and |V(G2)| >= 7".into(),
                n: g.n(),
                cap,
            })
        }
    }
    Ok((emb, map))
}

/// A labelling under which `g` is exactly the gadget with cut `A`.
fn gadget_labelling(g: &Graph, a_set: &[Vertex], a: Vertex) -> Option<GadgetSpec> {
    if g.n() != 9 || g.m() != 16 {
        return None;
    }
    let rest: Vec<Vertex> = a_set.iter().copied().filter(|&x| x != a).collect();
    let bs: Vec<Vertex> = g.vertices().filter(|v| !a_set.contains(v)).collect();
    for pa in permutations(&rest) {
        for pb in permutations(&bs) {
            let spec = GadgetSpec {
                a,
                a_i: [pa[0], pa[1], pa[2], pa[3]],
                b_i: [pb[0], pb[1], pb[2], pb[3]],
            };
            if matches_gadget(g, &spec) {
                return Some(spec);
            }
        }
    }
    None
}

/// Reorders spokes so the one ending at `a` comes first and finds labels
/// satisfying the outer-cycle order clause.
fn apex_labelling(
    spokes: &[Vec<Vertex>],
    outer: &[Vertex],
    a: Vertex,
    a_set: &[Vertex],
) -> Option<(Vec<Vec<Vertex>>, [Vertex; 4])> {
    let first = spokes.iter().position(|p| *p.last().expect("non-empty") == a)?;
    let others: Vec<Vec<Vertex>> = spokes.iter().enumerate().filter(|&(i, _)| i != first).map(|(_, p)| p.clone()).collect();
    let ends: Vec<Vertex> = spokes.iter().map(|p| *p.last().expect("non-empty")).collect();
    let a1 = *a_set.iter().find(|&&x| x != a && !ends.contains(&x))?;
    for perm in permutations(&[0, 1, 2]) {
        let mut sp = vec![spokes[first].clone()];
        sp.extend(perm.iter().map(|&i| others[i].clone()));
        let labels = [
            a1,
            *sp[1].last().expect("non-empty"),
            *sp[2].last().expect("non-empty"),
            *sp[3].last().expect("non-empty"),
        ];
        if apex_order_holds(&sp, outer, a, &labels) {
            return Some((sp, labels));
        }
    }
    None
}

/// Every cycle of `g` avoiding `blocked`, once each, shortest first.
fn all_cycles(g: &Graph, blocked: &[bool]) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    for s in g.vertices().filter(|&v| !blocked[v]) {
        let mut path = vec![s];
        let mut on = blocked.to_vec();
        on[s] = true;
        cycles_from(g, s, &mut path, &mut on, &mut out);
    }
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    out
}

fn cycles_from(g: &Graph, s: Vertex, path: &mut Vec<Vertex>, on: &mut Vec<bool>, out: &mut Vec<Vec<Vertex>>) {
    let v = *path.last().expect("non-empty");
    for &x in g.neighbors(v) {
        if x == s && path.len() >= 3 && path[1] < v {
            out.push(path.clone());
        }
        if x > s && !on[x] {
            on[x] = true;
            path.push(x);
            cycles_from(g, s, path, on, out);
            path.pop();
            on[x] = false;
        }
    }
}

/// Backtracking over spoke systems: paths from the hub, each meeting the
/// cycle once and `A` only at its end, pairwise sharing only the hub.
struct Spokes<'a> {
    g: &'a Graph,
    steps: u64,
    budget: u64,
    exhausted: bool,
}

impl<'a> Spokes<'a> {
    fn new(g: &'a Graph, budget: u64) -> Self {
        Spokes { g, steps: 0, budget, exhausted: false }
    }

    fn run(
        &mut self,
        hub: Vertex,
        cycle: &[Vertex],
        targets: &[Vertex],
        count: usize,
        must_end: &[Vertex],
        avoid: &[Vertex],
    ) -> Option<Vec<Vec<Vertex>>> {
        let mut out = None;
        let _ = self.each(hub, cycle, targets, count, must_end, avoid, &mut |s| {
            out = Some(s.to_vec());
            ControlFlow::Break(())
        });
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn each(
        &mut self,
        hub: Vertex,
        cycle: &[Vertex],
        targets: &[Vertex],
        count: usize,
        must_end: &[Vertex],
        avoid: &[Vertex],
        f: &mut dyn FnMut(&[Vec<Vertex>]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let n = self.g.n();
        if cycle.len() < count || self.g.degree(hub) < count {
            return ControlFlow::Continue(());
        }
        let on_cycle = self.g.mask(cycle);
        let is_target = self.g.mask(targets);
        let targets = normalized(targets);
        let mut used = vec![false; n];
        used[hub] = true;
        for &v in avoid {
            used[v] = true;
        }
        let g = self.g;
        for_each_subset_of(&targets, count, &mut |ends| {
            if must_end.iter().any(|e| !ends.contains(e)) {
                return ControlFlow::Continue(());
            }
            let mut acc = Vec::new();
            self.spoke(g, hub, ends, &on_cycle, &is_target, &mut used, &mut acc, f)
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn spoke(
        &mut self,
        g: &Graph,
        hub: Vertex,
        ends: &[Vertex],
        on_cycle: &[bool],
        is_target: &[bool],
        used: &mut Vec<bool>,
        acc: &mut Vec<Vec<Vertex>>,
        f: &mut dyn FnMut(&[Vec<Vertex>]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let i = acc.len();
        if i == ends.len() {
            return f(acc);
        }
        let mut path = vec![hub];
        self.walk(g, ends, on_cycle, is_target, used, acc, &mut path, false, f)
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        &mut self,
        g: &Graph,
        ends: &[Vertex],
        on_cycle: &[bool],
        is_target: &[bool],
        used: &mut Vec<bool>,
        acc: &mut Vec<Vec<Vertex>>,
        path: &mut Vec<Vertex>,
        hit: bool,
        f: &mut dyn FnMut(&[Vec<Vertex>]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        self.steps += 1;
        if self.steps > self.budget {
            self.exhausted = true;
            return ControlFlow::Break(());
        }
        let end = ends[acc.len()];
        let v = *path.last().expect("non-empty");
        for &x in g.neighbors(v) {
            if used[x] {
                continue;
            }
            let on_c = on_cycle[x];
            if on_c && hit {
                continue;
            }
            if is_target[x] {
                if x == end && (hit || on_c) {
                    path.push(x);
                    used[x] = true;
                    acc.push(path.clone());
                    let hub = path[0];
                    let r = self.spoke(g, hub, ends, on_cycle, is_target, used, acc, f);
                    acc.pop();
                    used[x] = false;
                    path.pop();
                    r?;
                }
                continue;
            }
            used[x] = true;
            path.push(x);
            let r = self.walk(g, ends, on_cycle, is_target, used, acc, path, hit || on_c, f);
            path.pop();
            used[x] = false;
            r?;
        }
        ControlFlow::Continue(())
    }
}
