//! Hamilton decompositions of Cayley graphs on dihedral groups.
//!
//! [`decomp::decompose`] builds an explicit decomposition of `Cay(D_2p, S)`
//! into Hamilton cycles (plus a perfect matching for odd valency) for every
//! prime `p` and every connection set `S`. Every certificate can be checked
//! with [`verify::verify_decomposition`], which does not reuse any of the
//! construction code. [`oracle`] provides exhaustive enumeration of connection
//! sets and a brute-force search used to cross-check small instances.

pub mod cayley;
pub mod certificate;
pub mod decomp;
pub mod dihedral;
pub mod export;
pub mod oracle;
pub mod verify;

pub use cayley::{build_graph, validate_connection_set, CayleyError, CayleyGraph, ConnectionSet, Cycle, EdgeSet, LabeledEdge};
pub use certificate::{Certificate, CertificateError};
pub use decomp::{decompose, decompose_tetravalent, DecompError, Decomposition, Route};
pub use dihedral::{GroupElement, GroupError};
pub use verify::{verify_decomposition, VerificationReport};
