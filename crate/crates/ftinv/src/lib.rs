//! Exact algebra and combinatorics around finite-type invariants of integral
//! homology spheres.
//!
//! * [`symplectic`] — the lattice `H = H_1(Σ_g)`, Lagrangians, transvections.
//! * [`exterior`] — `Λ²H`, `Λ³H`, `H ⊗ Λ²H` with exact coefficients.
//! * [`johnson`] — difference-action expansions for Lagrangian-fixing maps.
//! * [`groupring`] — truncated Magnus expansion and I-adic degree.
//! * [`links`] — blinks, surgery brackets, Seifert matrices, Alexander/Casson.
//! * [`chords`] — chord diagrams, 4-term rewriting, tower reduction.
//!
//! All arithmetic is arbitrary precision; nothing here uses floating point.

pub mod chords;
pub mod exterior;
pub mod groupring;
pub mod intmat;
pub mod johnson;
pub mod links;
pub mod par;
pub mod symplectic;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("parse error (line {line}): {msg}")]
    Parse { line: usize, msg: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("incompatible Lagrangian triple: {0}")]
    Incompatible(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}
