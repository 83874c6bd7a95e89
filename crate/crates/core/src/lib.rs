//! Exact combinatorial topology for small simplicial complexes.
//!
//! Complexes live on vertex labels `0..64` with faces packed into `u64`
//! bitmasks. The crate covers the face-level operations (links, joins,
//! induced subcomplexes, pseudomanifold classification, canonical forms),
//! collapsibility and reduced integral homology, complementarity predicates
//! and counting identities, constructors for the standard named complexes,
//! and exhaustive generators and searches for small complexes.
//!
//! Exact arithmetic is generic over the scalar: linear solves run over any
//! exact field and Smith normal form over any Euclidean integer type. The
//! aliases below fix the defaults used throughout.

pub mod atlas;
pub mod canon;
pub mod complementarity;
pub mod complex;
pub mod enumerate;
pub mod error;
pub mod homotopy;
pub mod io;
pub mod linalg;
pub mod report;
pub mod search;
pub mod simplex;

use num_bigint::BigInt;
use num_rational::Ratio;

/// Exact rational scalar used by the face-count solver.
pub type Rational = Ratio<BigInt>;
/// Integer scalar used for boundary matrices and Smith normal form.
pub type Integer = BigInt;
pub type IntMatrix = linalg::Matrix<Integer>;
pub type IntSmithForm = linalg::SmithForm<Integer>;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm, IsoCertificate};
pub use complex::{Classification, Complex, FaceProfile, FacetGraph};
pub use error::{Error, Result};
pub use simplex::Simplex;
