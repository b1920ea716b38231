//! Hypothesis failures and violation outcomes shared by the verifiers.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, Vertex};
use crate::planarity::KuratowskiWitness;

/// A failed precondition, carrying whatever witnesses the check produced.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[serde(tag = "hypothesis", rename_all = "snake_case")]
pub enum HypothesisError {
    #[error("invalid input: {message}")]
    Input { message: String },
    #[error("needs at least {need} vertices, has {have}")]
    TooFewVertices { need: usize, have: usize },
    #[error("{what} must have {need} vertices, has {have}")]
    SetSize { what: String, need: usize, have: usize },
    #[error("vertex {vertex} must belong to {what}")]
    NotMember { vertex: Vertex, what: String },
    #[error("not {k}-connected: cut {cut:?}")]
    NotConnected { k: usize, cut: Vec<Vertex> },
    #[error("not ({k}, A)-connected: cut {cut:?}")]
    NotKaConnected { k: usize, cut: Vec<Vertex> },
    #[error("no plane drawing with {boundary:?} on one face")]
    BoundaryNotCofacial { boundary: Vec<Vertex> },
    #[error("{what} is planar")]
    Planar { what: String },
    #[error("{what} is not planar")]
    NonPlanar { what: String, witness: Option<KuratowskiWitness> },
    #[error("{message}")]
    Structure { message: String },
    #[error("graph has {n} vertices, above the exhaustive cap of {cap}; {what} left unverified")]
    Unverified { what: String, n: usize, cap: usize },
}

impl From<GraphError> for HypothesisError {
    fn from(e: GraphError) -> Self {
        HypothesisError::Input { message: e.to_string() }
    }
}

impl HypothesisError {
    pub fn structure(message: impl Into<String>) -> Self {
        HypothesisError::Structure { message: message.into() }
    }
}

/// Result of running a check whose positive outcome a theorem guarantees.
/// A violation is not an error: it means the claimed conclusion was not
/// found, which points at a bug or a counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Checked<T> {
    Holds { certificate: T },
    Violation { input: String, detail: String },
}

impl<T> Checked<T> {
    pub fn holds(certificate: T) -> Self {
        Checked::Holds { certificate }
    }

    pub fn is_violation(&self) -> bool {
        matches!(self, Checked::Violation { .. })
    }

    pub fn certificate(&self) -> Option<&T> {
        match self {
            Checked::Holds { certificate } => Some(certificate),
            Checked::Violation { .. } => None,
        }
    }
}

pub(crate) fn violation<T>(g: &crate::Graph, params: String, detail: &str) -> Checked<T> {
    Checked::Violation {
        input: format!("{} {}", crate::emit_graph6(g), params),
        detail: detail.into(),
    }
}

pub(crate) fn require_min_vertices(g: &crate::Graph, need: usize) -> Result<(), HypothesisError> {
    if g.n() < need {
        return Err(HypothesisError::TooFewVertices { need, have: g.n() });
    }
    Ok(())
}

pub(crate) fn require_set(g: &crate::Graph, what: &str, set: &[Vertex], need: usize) -> Result<Vec<Vertex>, HypothesisError> {
    g.check_vertices(set)?;
    let s = crate::graph::normalized(set);
    if s.len() != need {
        return Err(HypothesisError::SetSize { what: what.into(), need, have: s.len() });
    }
    Ok(s)
}

pub(crate) fn require_member(vertex: Vertex, set: &[Vertex], what: &str) -> Result<(), HypothesisError> {
    if !set.contains(&vertex) {
        return Err(HypothesisError::NotMember { vertex, what: what.into() });
    }
    Ok(())
}

pub(crate) fn require_k_connected(g: &crate::Graph, k: usize) -> Result<(), HypothesisError> {
    let r = crate::connectivity::is_k_connected(g, k).expect("k >= 1");
    if !r.holds {
        return Err(HypothesisError::NotConnected { k, cut: r.witness_cut.unwrap_or_default() });
    }
    Ok(())
}

pub(crate) fn require_ka_connected(g: &crate::Graph, k: usize, a_set: &[Vertex]) -> Result<(), HypothesisError> {
    let r = crate::connectivity::is_ka_connected(g, k, a_set)?;
    if !r.holds {
        return Err(HypothesisError::NotKaConnected { k, cut: r.witness_cut.unwrap_or_default() });
    }
    Ok(())
}

pub(crate) fn require_cofacial(
    g: &crate::Graph,
    boundary: &[Vertex],
) -> Result<crate::planarity::PlaneEmbedding, HypothesisError> {
    crate::planarity::plane_with_boundary(g, boundary)?
        .ok_or_else(|| HypothesisError::BoundaryNotCofacial { boundary: boundary.to_vec() })
}

pub(crate) fn require_nonplanar(g: &crate::Graph, what: &str) -> Result<(), HypothesisError> {
    if crate::planarity::is_planar(g) {
        return Err(HypothesisError::Planar { what: what.into() });
    }
    Ok(())
}

pub(crate) fn require_planar(g: &crate::Graph, what: &str) -> Result<crate::planarity::PlaneEmbedding, HypothesisError> {
    match crate::planarity::embed_planar(g) {
        crate::planarity::Planarity::Planar(e) => Ok(e),
        crate::planarity::Planarity::NonPlanar(w) => Err(HypothesisError::NonPlanar {
            what: what.into(),
            witness: Some(w),
        }),
    }
}

impl From<crate::connectivity::ConnectivityError> for HypothesisError {
    fn from(e: crate::connectivity::ConnectivityError) -> Self {
        HypothesisError::Input { message: e.to_string() }
    }
}
