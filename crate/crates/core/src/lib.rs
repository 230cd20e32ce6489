//! Oriented matroid perspectives on linearly ordered ground sets: active
//! partitions, activity classes, subset activities with their boolean
//! interval partition, and the Tutte polynomial of a perspective computed
//! through several independent expansions.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod ground;
pub mod guard;
pub mod io;
pub mod linalg;
pub mod matroid;
pub mod orientation;
pub mod oriented;
pub mod poly;
pub mod scalar;
pub mod subsets;
pub mod tutte;

pub use error::{Error, Result};
pub use ground::{Element, ElementSet, GroundSet, SignedSubset};
pub use guard::SizeGuard;
pub use linalg::Matrix;
pub use matroid::{is_matroid_perspective, minor_perspective, Matroid, MatroidPerspective, PerspectiveCheck};
pub use oriented::{is_om_perspective, Arc, Digraph, OMPerspective, OrientedMatroid};
pub use poly::{MultiPoly, Var};
pub use scalar::{Field, Scalar};
pub use tutte::Poly;

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;
/// Exact integers.
pub type Integer = num_bigint::BigInt;
/// Matrices over the exact rationals.
pub type RationalMatrix = Matrix<Rational>;
