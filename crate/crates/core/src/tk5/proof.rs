//! The constructive `TK5` through the gadget: for `u1, u2` in
//! `N(a) - {b1, b2, b3}`, a subdivision of `K5` with branch vertices
//! `a, b1, b2, b3, u1` that uses only the apex edges `a b1, a b2, a b3,
//! a u1, a u2`.

use serde::{Deserialize, Serialize};

use super::assemble::assemble_tk5;
use super::gadget::{matches_gadget, GadgetSpec};
use super::search::{ApexRestriction, Tk5Certificate, Tk5Constraints};
use crate::connectivity::{fan_in, Fan};
use crate::graph::{Graph, Vertex};
use crate::report::{self, Checked, HypothesisError};

/// Where `u1` sits, which decides the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetCase {
    /// `u1` lies in `G1` outside the cut: four independent paths from `u1`
    /// to `a1..a4` in `G1 - a`, three of them used.
    Interior,
    /// `u1` is `a2` or `a3`: one path to the other of the two.
    Middle,
    /// `u1` is `a1` or `a4`: two independent paths to `a2, a3`.
    End,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetTk5 {
    pub case: GadgetCase,
    /// `u1` after the swap that keeps it away from `b4`.
    pub u1: Vertex,
    pub u2: Vertex,
    pub certificate: Tk5Certificate,
}

/// Checks the hypotheses and builds the subdivision case by case. A
/// missing `G1`-path is reported as a violation.
pub fn gadget_tk5(
    g: &Graph,
    spec: &GadgetSpec,
    u1: Vertex,
    u2: Vertex,
) -> Result<Checked<GadgetTk5>, HypothesisError> {
    g.check_vertices(&spec.vertices())?;
    g.check_vertices(&[u1, u2])?;
    if !matches_gadget(g, spec) {
        return Err(HypothesisError::structure("labelled vertices do not span the gadget"));
    }
    report::require_min_vertices(g, 11)?;
    report::require_k_connected(g, 5)?;
    report::require_nonplanar(g, "G")?;
    let (a, ai, bi) = (spec.a, spec.a_i, spec.b_i);
    let allowed = |u: Vertex| g.has_edge(a, u) && !bi[..3].contains(&u);
    if u1 == u2 || !allowed(u1) || !allowed(u2) {
        return Err(HypothesisError::structure(format!(
            "u1={u1}, u2={u2} must be distinct members of N(a) - {{b1,b2,b3}}"
        )));
    }
    let (u1, u2) = if u1 == bi[3] { (u2, u1) } else { (u1, u2) };
    let input = || format!("a={a} a_i={ai:?} b_i={bi:?} u1={u1} u2={u2}");

    // Paths inside G1 - a avoid the gadget and a.
    let blocked = [a, bi[0], bi[1], bi[2], bi[3]];
    let fan = |from: Vertex, to: &[Vertex]| match fan_in(g, from, to, to.len(), &blocked) {
        Fan::Paths(ps) => {
            let mut paths = ps.paths;
            paths.sort_by_key(|p| to.iter().position(|&t| t == *p.last().expect("non-empty")));
            Some(paths)
        }
        Fan::Cut(_) => None,
    };
    let mut parts: Vec<Vec<Vertex>> = vec![
        vec![a, bi[0]],
        vec![a, bi[1]],
        vec![a, bi[2]],
        vec![a, u1],
        vec![bi[0], bi[1]],
        vec![bi[1], bi[2]],
        vec![bi[0], bi[3], bi[2]],
    ];
    let case = if let Some(pos) = ai.iter().position(|&x| x == u1) {
        match pos {
            1 | 2 => {
                // a2 sees b1, b2; a3 sees b2, b3.
                let (other, far_b, near) = if pos == 1 { (ai[2], bi[2], [bi[0], bi[1]]) } else { (ai[1], bi[0], [bi[1], bi[2]]) };
                let Some(r) = fan(u1, &[other]) else {
                    return Ok(report::violation(g, input(), "no path between a2 and a3 in G1 - a"));
                };
                parts.push(vec![u1, near[0]]);
                parts.push(vec![u1, near[1]]);
                let mut p = r[0].clone();
                p.push(far_b);
                parts.push(p);
                GadgetCase::Middle
            }
            _ => {
                // a1 sees b1 and reaches b2, b3 through a2, a3; a4 mirrors it.
                let (direct, via) = if pos == 0 {
                    (bi[0], [(ai[1], bi[1]), (ai[2], bi[2])])
                } else {
                    (bi[2], [(ai[2], bi[1]), (ai[1], bi[0])])
                };
                let Some(rs) = fan(u1, &[via[0].0, via[1].0]) else {
                    return Ok(report::violation(g, input(), "no two independent paths from the end of the cut"));
                };
                parts.push(vec![u1, direct]);
                for (mut p, (_, b)) in rs.into_iter().zip(via) {
                    p.push(b);
                    parts.push(p);
                }
                GadgetCase::End
            }
        }
    } else {
        let Some(qs) = fan(u1, &ai) else {
            return Ok(report::violation(g, input(), "no four independent paths from u1 to a1..a4"));
        };
        for (mut q, b) in qs.into_iter().zip(bi).take(3) {
            q.push(b);
            parts.push(q);
        }
        GadgetCase::Interior
    };
    let constraints = Tk5Constraints {
        forbidden_branch: Vec::new(),
        apex: Some(ApexRestriction {
            a,
            keep: crate::graph::normalized(&[bi[0], bi[1], bi[2], u1, u2]),
        }),
    };
    let branch = [a, bi[0], bi[1], bi[2], u1];
    Ok(match assemble_tk5(g, &parts, &branch, constraints) {
        Ok(certificate) => Checked::holds(GadgetTk5 { case, u1, u2, certificate }),
        Err(e) => report::violation(g, input(), &format!("assembled union is not a TK5: {e}")),
    })
}
