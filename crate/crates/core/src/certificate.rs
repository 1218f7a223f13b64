//! JSON exchange format for decompositions.
//!
//! ```json
//! {
//!   "n": 7,
//!   "connection_set": ["r1", "r6", "s0"],
//!   "cycles": [["r0", "r6", "..."]],
//!   "matching": [["r0", "s1"], ["..."]],
//!   "meta": {"tool": "dihedral-hd", "version": "0.1.0",
//!            "routes": ["one_reflection"], "matching_route": "one_reflection"}
//! }
//! ```
//!
//! `matching` is `null` for even valency. `meta` may be omitted on input.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cayley::{build_graph, CayleyError, ConnectionSet, Cycle, LabeledEdge};
use crate::decomp::{Decomposition, Route};
use crate::dihedral::{GroupElement, GroupError};
use crate::verify::{verify_decomposition, VerificationReport};

pub const TOOL_NAME: &str = "dihedral-hd";

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("malformed certificate: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Token(#[from] GroupError),
    #[error("invalid connection set: {0}")]
    ConnectionSet(#[from] CayleyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    #[serde(default)]
    pub routes: Vec<Route>,
    #[serde(default)]
    pub matching_route: Option<Route>,
}

impl Default for Meta {
    fn default() -> Self {
        Self {
            tool: TOOL_NAME.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            routes: Vec::new(),
            matching_route: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: u32,
    pub connection_set: Vec<String>,
    pub cycles: Vec<Vec<String>>,
    pub matching: Option<Vec<[String; 2]>>,
    #[serde(default)]
    pub meta: Meta,
}

impl Certificate {
    pub fn new(cs: &ConnectionSet, d: &Decomposition) -> Self {
        let tokens = |vs: &[GroupElement]| vs.iter().map(|v| v.to_string()).collect();
        Self {
            n: cs.n(),
            connection_set: cs.tokens(),
            cycles: d.cycles.iter().map(|c| tokens(c.vertices())).collect(),
            matching: d.matching.as_ref().map(|m| {
                m.iter()
                    .map(|e| {
                        let (u, v) = e.endpoints();
                        [u.to_string(), v.to_string()]
                    })
                    .collect()
            }),
            meta: Meta {
                routes: d.routes.clone(),
                matching_route: d.matching_route,
                ..Meta::default()
            },
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialises")
    }

    /// The connection set, validated.
    pub fn connection_set(&self) -> Result<ConnectionSet, CertificateError> {
        let mut elements = Vec::with_capacity(self.connection_set.len());
        for t in &self.connection_set {
            elements.push(GroupElement::parse(t, self.n)?);
        }
        if let Some(dup) = (1..elements.len()).find(|&i| elements[..i].contains(&elements[i])) {
            return Err(CayleyError::Duplicate(self.connection_set[dup].clone()).into());
        }
        Ok(ConnectionSet::new(self.n, elements)?)
    }

    /// The parts as typed values. Only token syntax is checked here; whether
    /// they form a decomposition is up to the verifier.
    pub fn decomposition(&self) -> Result<Decomposition, CertificateError> {
        let parse = |t: &String| GroupElement::parse(t, self.n);
        let mut cycles = Vec::with_capacity(self.cycles.len());
        for c in &self.cycles {
            cycles.push(Cycle::new(c.iter().map(parse).collect::<Result<_, _>>()?));
        }
        let matching = match &self.matching {
            None => None,
            Some(pairs) => {
                let mut edges = Vec::with_capacity(pairs.len());
                for [u, v] in pairs {
                    edges.push(LabeledEdge::new(parse(u)?, parse(v)?)?);
                }
                Some(edges)
            }
        };
        Ok(Decomposition {
            cycles,
            matching,
            routes: self.meta.routes.clone(),
            matching_route: self.meta.matching_route,
        })
    }

    /// Rebuilds the graph from `n` and the connection set and checks the parts.
    pub fn verify(&self) -> Result<VerificationReport, CertificateError> {
        let graph = build_graph(&self.connection_set()?);
        Ok(verify_decomposition(&graph, &self.decomposition()?))
    }
}
