//! Exact rational convex analysis on semilinear sets.
//!
//! Algebraic interior (`cor`), relative algebraic interior (`icr`) and
//! vectorial closure (`vcl`) become decision procedures over finite unions of
//! semi-closed polyhedra. On top of that sit separation theorems and a
//! certificate-producing classifier for efficiency notions in vector
//! optimization.

pub mod error;
pub mod exactlin;
pub mod lpexact;
pub mod polyrep;
pub mod semiset;
pub mod sephull;
pub mod vopt;
pub mod corpus;

pub use error::{CvxError, Result};
pub use exactlin::{QMatrix, QVector, Rational};
