//! Certified enclosures for the L^p masses of the positive and negative
//! parts of trigonometric Laplace eigenfunctions on flat tori.
//!
//! The library evaluates a trigonometric eigenfunction on the midpoints of a
//! uniform cube grid over `[0,1]^d`, classifies every cube by the certain
//! sign of the function on it, and accumulates over- and under-estimating
//! Riemann sums per exponent. Together with an a-priori floating-point
//! error ledger this yields certified enclosures `[L, U]` of the integrals
//! `∫ψ_±^p`, from which upper bounds on the ratio functions
//! `f(p) = ∫ψ_+^{p-1}/∫ψ_+^p` and `g(q) = ∫ψ_-^{q+1}/∫ψ_-^q` and a
//! machine-checkable certificate of `‖ψ_+‖_p / ‖ψ_-‖_p > 1` for all
//! `1 < p ≤ ∞` are derived.
//!
//! Module map:
//! - [`trigpoly`]: eigenfunction representation, evaluation, Lipschitz and
//!   sup-norm bounds.
//! - [`grid`]: the uniform cube partition, midpoints, and work tiles.
//! - [`rigor`]: the sign-classified accumulation, certified bound tables,
//!   and the floating-point error ledger.
//! - [`certify`]: ratio bounds, the sup bound on the negative part, the
//!   interval chain check, and certificate emission.
//! - [`oracle`]: independent non-certified cross-checks (plain quadrature,
//!   Monte Carlo, derivative identity, monotonicity, Cauchy–Schwarz,
//!   dilation invariance).
//! - [`cli`]: the command-line pipeline.

pub mod certify;
pub mod cli;
mod fp;
pub mod grid;
pub mod oracle;
pub mod pipeline;
pub mod rigor;
pub mod trigpoly;

pub use certify::{Certificate, ChainCheck, RatioBound, SupBound, Verdict};
pub use grid::{GridSpec, Tile};
pub use rigor::{BoundsRow, ErrorLedger, MarginReport, SignedAccumulator};
pub use trigpoly::{LipschitzBound, TrigEigenfunction, WaveKind, WaveTerm};

/// Errors produced by any stage of the pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    TrigPoly(#[from] trigpoly::TrigPolyError),
    #[error(transparent)]
    Grid(#[from] grid::GridError),
    #[error(transparent)]
    Rigor(#[from] rigor::RigorError),
    #[error(transparent)]
    Certify(#[from] certify::CertifyError),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
