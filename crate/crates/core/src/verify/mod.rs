//! Theorem-level verifiers, the certificate format and the corpus runner.
//!
//! Every verifier checks its hypotheses mechanically, then looks for the
//! disjuncts in the fixed order (ii), (iii), (i), (iv) and emits a
//! [`Verdict`] whose certificate can be re-checked by
//! [`validate_record`] from the graph6 string alone.

mod certificate;
mod corpus;
mod theorems;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::Vertex;
use crate::report::HypothesisError;
use crate::separation::Separation;

pub use certificate::{validate_record, Certificate, CertificateRecord, K4MinusData, PathConditionData, Tk5Data, Tk5Member, SCHEMA_VERSION};
pub use corpus::{discover_instance, run_corpus, run_graph, CorpusEntry, Instance, Job, Summary};
pub use theorems::{
    path_condition, verify_5cut_triangle, verify_apexside1, verify_apexvertex, verify_contraction, verify_gadget,
    verify_n_x1_cap_a, verify_tk5, TheoremInstance, VerifyOptions,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    /// 5-separation with an apex side.
    ApexSide,
    /// 5-separation whose cut holds a triangle through `a`.
    TriangleCut,
    /// The `TK5` through the gadget.
    Gadget,
    /// 6-separation with a triangle through `x` in the cut.
    SixCut,
    /// Contracting `K2` or `K3` to a planar 5-connected graph.
    Contraction,
    /// A vertex whose deletion leaves a planar graph.
    ApexVertex,
    /// Plain `TK5` search.
    Tk5,
}

impl TheoremId {
    pub fn name(self) -> &'static str {
        match self {
            TheoremId::ApexSide => "apex_side",
            TheoremId::TriangleCut => "triangle_cut",
            TheoremId::Gadget => "gadget",
            TheoremId::SixCut => "six_cut",
            TheoremId::Contraction => "contraction",
            TheoremId::ApexVertex => "apex_vertex",
            TheoremId::Tk5 => "tk5",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Disjunct {
    I,
    Ii,
    Iii,
    Iv,
    /// The six-cut statement's escape clause: `x` has a neighbour inside `G1`.
    Neighbour,
    /// Statements with a single conclusion.
    Conclusion,
}

impl Disjunct {
    pub fn label(self) -> &'static str {
        match self {
            Disjunct::I => "i",
            Disjunct::Ii => "ii",
            Disjunct::Iii => "iii",
            Disjunct::Iv => "iv",
            Disjunct::Neighbour => "neighbour",
            Disjunct::Conclusion => "conclusion",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// A disjunct fired and its certificate is attached.
    Holds,
    /// Hypotheses hold but no disjunct was found: a counterexample or a bug.
    Violation,
    /// A search ran out of budget or exceeded its size cap first.
    Inconclusive,
    /// A hypothesis failed; see the report.
    HypothesisFailed,
    /// The corpus graph offers no instance of the statement.
    NoInstance,
    /// A plain search finished without finding anything.
    Absent,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Violation => "violation",
            Status::Inconclusive => "inconclusive",
            Status::HypothesisFailed => "hypothesis_failed",
            Status::NoInstance => "no_instance",
            Status::Absent => "absent",
        }
    }
}

/// What was checked, the instance labels, and any failure or caveat.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub labels: BTreeMap<String, Vertex>,
    /// Chosen neighbour tuples (`u1, u2, u3`).
    pub choice: Vec<Vertex>,
    pub separation: Option<Separation>,
    pub checked: Vec<String>,
    pub notes: Vec<String>,
    pub failure: Option<HypothesisError>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub theorem: TheoremId,
    pub status: Status,
    pub disjunct: Option<Disjunct>,
    pub certificate: Option<Certificate>,
    pub report: HypothesisReport,
    /// Search steps spent, summed over every oracle call.
    pub steps: u64,
    pub detail: Option<String>,
}

impl Verdict {
    pub(crate) fn new(theorem: TheoremId, report: HypothesisReport) -> Self {
        Verdict {
            theorem,
            status: Status::Inconclusive,
            disjunct: None,
            certificate: None,
            report,
            steps: 0,
            detail: None,
        }
    }

    pub(crate) fn holds(mut self, disjunct: Disjunct, certificate: Certificate) -> Self {
        self.status = Status::Holds;
        self.disjunct = Some(disjunct);
        self.certificate = Some(certificate);
        self
    }

    pub(crate) fn failed(mut self, e: HypothesisError) -> Self {
        self.status = Status::HypothesisFailed;
        self.report.failure = Some(e);
        self
    }

    pub(crate) fn ended(mut self, status: Status, detail: impl Into<String>) -> Self {
        self.status = status;
        self.detail = Some(detail.into());
        self
    }

    /// Histogram key, e.g. `holds/ii` or `violation`.
    pub fn key(&self) -> String {
        match self.disjunct {
            Some(d) => format!("{}/{}", self.status.label(), d.label()),
            None => self.status.label().to_string(),
        }
    }
}
