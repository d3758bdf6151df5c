use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Operands live in different algebras or arithmetic modes.
    #[error("descriptor mismatch: {0}")]
    Descriptor(String),

    /// Input outside the domain of the operation (non-diagonal, non-unitary, bad step...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The spectral and centralizer regularity tests disagree.
    #[error("numerical instability: eigenvalue test says regular={spectral}, centralizer test says regular={centralizer}")]
    RegularityDisagreement { spectral: bool, centralizer: bool },

    /// Annihilator verdict and sampled KKS verdict disagree.
    #[error("inconsistent verdicts: {0}")]
    Inconsistency(String),

    /// A numerical procedure could not decide.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    /// The element is not regular, so its singular set on the flag is infinite.
    #[error("infinite singular set: {0}")]
    InfiniteSingularities(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
