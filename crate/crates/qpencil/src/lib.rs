//! Exact computer algebra for pencils of quadrics in 2M+2 variables over
//! finite fields of characteristic 2.
//!
//! Given a pencil spanned by two quadratic forms f, g the crate computes the
//! Pfaffian binary form Pf(s f + t g), the canonical normal form
//! f = sum a_i x_i y_i, g = sum b_i x_i y_i + x_i^2 + y_i^2 when the
//! Pfaffian has distinct roots, the singular locus of the induced fibration
//! over P^1, and the automorphism-group data of the (2,2)-complete
//! intersection X = V(f, g): the tangent space and truncated point counts of
//! the infinitesimal part, and the component group assembled from the
//! coordinate-swap kernel, the stabilizer of the singular image points, the
//! lifting criterion, and constructive lifts. An exhaustive structured
//! oracle cross-checks the assembled group at small sizes.
//!
//! The base field GF(2^m) stands in for an algebraically closed field;
//! operations that genuinely need a larger field extend it explicitly and
//! record the extension.
//!
//! See the crate `examples/` directory for one runnable walkthrough per
//! capability, and the `qpencil` binary for the JSON command-line front end.

pub mod autgroup;
pub mod cli;
pub mod error;
pub mod exactla;
pub mod gf2m;
pub mod io;
pub mod pencil;
pub mod sample;
pub mod selfcheck;

pub use error::{Error, Result};
