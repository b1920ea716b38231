//! Running a verifier over a graph6 corpus: instance discovery, parallel
//! order-stable evaluation and the disjunct histogram.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::certificate::CertificateRecord;
use super::theorems::{
    verify_5cut_triangle, verify_apexside1, verify_apexvertex, verify_contraction, verify_gadget, verify_n_x1_cap_a,
    verify_tk5, TheoremInstance, VerifyOptions,
};
use super::{HypothesisReport, Status, TheoremId, Verdict};
use crate::connectivity::{find_separation, for_each_separation, is_k_connected, Minimize, SeparationQuery};
use crate::discharging::apex_side_planar;
use crate::graph::{ContractionSpec, Graph, Vertex};
use crate::graph6::parse_graph6;
use crate::planarity::is_planar;
use crate::report::HypothesisError;
use crate::separation::Separation;
use crate::tk5::{find_gadget_separation, GadgetSpec};

/// A verifier with its limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Job {
    pub theorem: TheoremId,
    pub opts: VerifyOptions,
    /// Graphs above this size are skipped.
    pub max_n: Option<usize>,
}

impl Job {
    pub fn new(theorem: TheoremId) -> Self {
        Job { theorem, opts: VerifyOptions::default(), max_n: None }
    }
}

/// A concrete input for one verifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    ApexSide(TheoremInstance),
    TriangleCut(TheoremInstance),
    SixCut(TheoremInstance),
    ApexVertex { g: Graph, a: Vertex },
    Contraction { g: Graph, t: Vec<Vertex> },
    Gadget { g: Graph, spec: GadgetSpec, u1: Vertex, u2: Vertex },
    Tk5(Graph),
}

impl Instance {
    pub fn verify(&self, opts: &VerifyOptions) -> Verdict {
        match self {
            Instance::ApexSide(i) => verify_apexside1(i, opts),
            Instance::TriangleCut(i) => verify_5cut_triangle(i, None, opts),
            Instance::SixCut(i) => verify_n_x1_cap_a(i, opts),
            Instance::ApexVertex { g, a } => verify_apexvertex(g, *a, opts),
            Instance::Contraction { g, t } => verify_contraction(g, t),
            Instance::Gadget { g, spec, u1, u2 } => verify_gadget(g, spec, *u1, *u2),
            Instance::Tk5(g) => verify_tk5(g, opts),
        }
    }

    pub fn graph(&self) -> &Graph {
        match self {
            Instance::ApexSide(i) | Instance::TriangleCut(i) | Instance::SixCut(i) => &i.g,
            Instance::ApexVertex { g, .. }
            | Instance::Contraction { g, .. }
            | Instance::Gadget { g, .. }
            | Instance::Tk5(g) => g,
        }
    }
}

fn triangles_in(g: &Graph, vs: &[Vertex]) -> Vec<[Vertex; 3]> {
    let mut out = Vec::new();
    for (i, &p) in vs.iter().enumerate() {
        for (j, &q) in vs.iter().enumerate().skip(i + 1) {
            for &r in &vs[j + 1..] {
                if g.has_edge(p, q) && g.has_edge(q, r) && g.has_edge(p, r) {
                    out.push([p, q, r]);
                }
            }
        }
    }
    out
}

/// The first instance `g` offers for `theorem`, scanning separations,
/// labels and vertices in lexicographic order. Graphs that are not
/// 5-connected offer none (except to the plain `TK5` search).
pub fn discover_instance(g: &Graph, theorem: TheoremId, opts: &VerifyOptions) -> Result<Option<Instance>, HypothesisError> {
    if theorem == TheoremId::Tk5 {
        return Ok(Some(Instance::Tk5(g.clone())));
    }
    if g.n() < 6 || !is_k_connected(g, 5).expect("k >= 1").holds {
        return Ok(None);
    }
    let too_large = |what: &str| HypothesisError::Unverified { what: what.into(), n: g.n(), cap: opts.search_cap };
    let seps5 = |f: &mut dyn FnMut(&Separation) -> ControlFlow<()>| {
        let q = SeparationQuery::new(5).exact_order(5).side_sizes(7, 7).cap(opts.search_cap);
        for_each_separation(g, &q, f).map(|_| ()).map_err(|_| too_large("5-separation search"))
    };
    let mut found = None;
    match theorem {
        TheoremId::ApexSide => {
            if is_planar(g) {
                return Ok(None);
            }
            seps5(&mut |s| {
                for &a in &s.cut {
                    if apex_side_planar(g, s, a) {
                        found = Some(Instance::ApexSide(TheoremInstance { g: g.clone(), separation: s.clone(), apex: a, triangle: None }));
                        return ControlFlow::Break(());
                    }
                }
                ControlFlow::Continue(())
            })?;
        }
        TheoremId::TriangleCut => {
            seps5(&mut |s| match triangles_in(g, &s.cut).first() {
                Some(&[a, a1, a2]) => {
                    found = Some(Instance::TriangleCut(TheoremInstance {
                        g: g.clone(),
                        separation: s.clone(),
                        apex: a,
                        triangle: Some([a1, a2]),
                    }));
                    ControlFlow::Break(())
                }
                None => ControlFlow::Continue(()),
            })?;
        }
        TheoremId::SixCut => {
            let all: Vec<Vertex> = g.vertices().collect();
            for t in triangles_in(g, &all) {
                for (x, x1, x2) in [(t[0], t[1], t[2]), (t[1], t[0], t[2]), (t[2], t[0], t[1])] {
                    let q = SeparationQuery::new(6)
                        .exact_order(6)
                        .cut_contains(&[x, x1, x2])
                        .side_sizes(7, 7)
                        .minimize(Minimize::Side1)
                        .cap(opts.search_cap);
                    if let Some(s) = find_separation(g, &q).map_err(|_| too_large("6-separation search"))? {
                        return Ok(Some(Instance::SixCut(TheoremInstance { g: g.clone(), separation: s, apex: x, triangle: Some([x1, x2]) })));
                    }
                }
            }
        }
        TheoremId::ApexVertex => {
            if !is_planar(g) {
                found = g
                    .vertices()
                    .find(|&a| is_planar(&g.remove_vertices(&[a]).expect("in range").0))
                    .map(|a| Instance::ApexVertex { g: g.clone(), a });
            }
        }
        TheoremId::Contraction => {
            if is_planar(g) {
                return Ok(None);
            }
            let all: Vec<Vertex> = g.vertices().collect();
            let mut ts: Vec<Vec<Vertex>> = g.edges().into_iter().map(|(u, v)| vec![u, v]).collect();
            ts.extend(triangles_in(g, &all).into_iter().map(|t| t.to_vec()));
            found = ts
                .into_iter()
                .find(|t| {
                    let c = g.contract(&ContractionSpec::Set(t.clone())).expect("valid set");
                    is_planar(&c.graph) && is_k_connected(&c.graph, 5).expect("k >= 1").holds
                })
                .map(|t| Instance::Contraction { g: g.clone(), t });
        }
        TheoremId::Gadget => {
            found = g.vertices().find_map(|a| {
                let (_, spec) = find_gadget_separation(g, a)?;
                let us: Vec<Vertex> = g.neighbors(a).iter().copied().filter(|u| !spec.b_i[..3].contains(u)).take(2).collect();
                (us.len() == 2).then(|| Instance::Gadget { g: g.clone(), spec, u1: us[0], u2: us[1] })
            });
        }
        TheoremId::Tk5 => unreachable!(),
    }
    Ok(found)
}

/// Discovers an instance in `g` and verifies it.
pub fn run_graph(g: &Graph, job: &Job) -> Verdict {
    match discover_instance(g, job.theorem, &job.opts) {
        Ok(Some(inst)) => inst.verify(&job.opts),
        Ok(None) => Verdict::new(job.theorem, HypothesisReport::default()).ended(Status::NoInstance, "no instance in this graph"),
        Err(e) => Verdict::new(job.theorem, HypothesisReport::default()).failed(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "entry", rename_all = "snake_case")]
pub enum CorpusEntry {
    Record(Box<CertificateRecord>),
    ParseError { line: usize, message: String },
    Skipped { line: usize, n: usize },
}

/// Counts per verdict key (`holds/ii`, `violation`, ...).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub graphs: usize,
    pub parse_errors: usize,
    pub skipped: usize,
    pub histogram: BTreeMap<String, usize>,
}

impl Summary {
    pub fn violations(&self) -> usize {
        self.histogram.get("violation").copied().unwrap_or(0)
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.violations() > 0)
    }
}

/// Verifies every graph6 line of `input` with `threads` workers (0 means
/// the rayon default). Entries come back in input order.
pub fn run_corpus(input: &str, job: &Job, threads: usize) -> (Vec<CorpusEntry>, Summary) {
    let lines: Vec<(usize, &str)> = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim().trim_start_matches(">>graph6<<")))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let work = || -> Vec<CorpusEntry> {
        lines
            .par_iter()
            .map(|&(line, text)| match parse_graph6(text) {
                Err(e) => CorpusEntry::ParseError { line, message: e.to_string() },
                Ok(g) if job.max_n.is_some_and(|m| g.n() > m) => CorpusEntry::Skipped { line, n: g.n() },
                Ok(g) => {
                    let v = run_graph(&g, job);
                    CorpusEntry::Record(Box::new(CertificateRecord::from_verdict(text.to_string(), &v, job.opts.tk5_budget)))
                }
            })
            .collect()
    };
    let entries = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    };
    let mut s = Summary::default();
    for e in &entries {
        match e {
            CorpusEntry::Record(r) => {
                s.graphs += 1;
                let key = match r.disjunct {
                    Some(d) => format!("{}/{}", r.status.label(), d.label()),
                    None => r.status.label().to_string(),
                };
                *s.histogram.entry(key).or_default() += 1;
            }
            CorpusEntry::ParseError { .. } => s.parse_errors += 1,
            CorpusEntry::Skipped { .. } => s.skipped += 1,
        }
    }
    (entries, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{emit_graph6, families, gen};

    #[test]
    fn empty_stream() {
        let (entries, s) = run_corpus("", &Job::new(TheoremId::Tk5), 1);
        assert!(entries.is_empty());
        assert_eq!((s.graphs, s.exit_code()), (0, 0));
    }

    #[test]
    fn planar_graphs_have_no_tk5() {
        let input: String = [families::icosahedron(), families::grid(3, 3), families::octahedron(), families::wheel(6)]
            .iter()
            .map(|g| emit_graph6(g) + "\n")
            .collect();
        let (entries, s) = run_corpus(&input, &Job::new(TheoremId::Tk5), 2);
        assert_eq!(entries.len(), 4);
        assert_eq!(s.histogram, BTreeMap::from([("absent".to_string(), 4)]));
    }

    #[test]
    fn bad_lines_are_reported_in_order() {
        let input = format!(">>graph6<<{}\n???\n\n{}\n", emit_graph6(&families::complete(5)), emit_graph6(&families::complete(6)));
        let mut job = Job::new(TheoremId::Tk5);
        job.max_n = Some(5);
        let (entries, s) = run_corpus(&input, &job, 3);
        assert!(matches!(&entries[0], CorpusEntry::Record(r) if r.graph6 == emit_graph6(&families::complete(5))));
        assert!(matches!(entries[1], CorpusEntry::ParseError { line: 2, .. }));
        assert!(matches!(entries[2], CorpusEntry::Skipped { line: 4, n: 6 }));
        assert_eq!((s.graphs, s.parse_errors, s.skipped), (1, 1, 1));
    }

    #[test]
    fn discovery_finds_the_gadget_instances() {
        let (g, _) = gen::k4_free_gadget(2);
        for (th, key) in [(TheoremId::ApexSide, "holds/iii"), (TheoremId::Gadget, "holds/conclusion"), (TheoremId::ApexVertex, "no_instance")] {
            let v = run_graph(&g, &Job::new(th));
            assert_eq!(v.key(), key, "{th:?}");
        }
    }

    #[test]
    fn six_cut_discovery_yields_a_minimal_instance() {
        let mut r = gen::rng(21);
        let spec = gen::GlueSpec { cut: 6, private1: 3, private2: 3, p1: 0.9, p2: 0.9, triangle: true, apex_side: false, k4_free: false };
        let (g, _) = gen::glued_five_connected(&spec, &mut r, 200).unwrap();
        let v = run_graph(&g, &Job::new(TheoremId::SixCut));
        assert_eq!(v.status, Status::Holds, "{v:?}");
        assert!(v.report.checked.iter().any(|c| c == "G1 minimal"));
    }

    #[test]
    fn corpus_output_is_deterministic() {
        let mut r = gen::rng(2);
        let spec = gen::GlueSpec { cut: 5, private1: 3, private2: 3, p1: 0.8, p2: 0.8, triangle: true, apex_side: false, k4_free: false };
        let input: String = (0..6)
            .filter_map(|_| gen::glued_five_connected(&spec, &mut r, 100))
            .map(|(g, _)| emit_graph6(&g) + "\n")
            .collect();
        let job = Job::new(TheoremId::TriangleCut);
        let one = serde_json::to_string(&run_corpus(&input, &job, 1)).unwrap();
        let many = serde_json::to_string(&run_corpus(&input, &job, 4)).unwrap();
        assert_eq!(one, many);
    }
}
