//! Commensurability machinery for right-angled Coxeter groups whose defining
//! graphs are 3-convex generalized theta-graphs or cycles of generalized
//! theta-graphs, and for geometric amalgams of free groups over tree JSJ
//! graphs.
//!
//! All arithmetic is exact (arbitrary-precision rationals); every positive
//! classification verdict is backed by a finite-cover witness certificate
//! that re-validates from its own data.

pub mod amalgam;
pub mod classify;
pub mod graph;
pub mod halfcover;
pub mod jsj;
pub mod orbicomplex;
pub mod racg;
pub mod ratvec;
pub mod report;
pub mod witness;

use thiserror::Error;

/// Crate-wide error type.
///
/// The CLI maps `InvalidInput` to exit code 2 and `Unsupported` to exit
/// code 3; `Internal` indicates a broken invariant (a bug, or input outside
/// the families the constructions are proved for) and also maps to 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Search cap (in vertices) for half-covering enumeration, from the
/// `RACGC_MAX_SEARCH` environment variable. Defaults to 12.
pub fn max_search_vertices() -> usize {
    std::env::var("RACGC_MAX_SEARCH")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(12)
}
