use thiserror::Error;

use crate::simplex::Simplex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("a complex needs at least one facet")]
    EmptyComplex,
    #[error("simplices must be nonempty")]
    EmptySimplex,
    #[error("vertex label {0} is out of range (labels must be < 64)")]
    LabelOutOfRange(u32),
    #[error("{0:?} is not a face of the complex")]
    NotAFace(Simplex),
    #[error("{0:?} is not a facet of the complex")]
    NotAFacet(Simplex),
    #[error("{0:?} is a facet, its link is empty")]
    LinkOfFacet(Simplex),
    #[error("vertex universes overlap in {0:?}")]
    OverlappingUniverses(Simplex),
    #[error("vertex set must be a nonempty subset of the vertex universe")]
    ForeignVertices,
    #[error("vertex set must be a nonempty proper subset of the vertex universe")]
    ImproperVertexSet,
    #[error("complex is not pure")]
    NotPure,
    #[error("dimension {k} is out of range 0..={dim}")]
    DimensionOutOfRange { k: usize, dim: usize },
    #[error("{0:?} is not free in any face, or the pair is not a free pair")]
    NotFree(Simplex, Simplex),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("face counts are underdetermined: f_{dim} is a free unknown")]
    Underdetermined { dim: usize },
    #[error("face count system is inconsistent: {0}")]
    Inconsistent(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("checksum mismatch: expected {expected}, found {found}")]
    Checksum { expected: String, found: String },
    #[error("{0}")]
    Verification(String),
}
