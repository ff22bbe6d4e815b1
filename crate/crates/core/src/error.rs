use thiserror::Error;

/// Failure modes shared by every evaluation routine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ZetaError {
    #[error("pole at {0}")]
    Pole(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("indeterminate form: {0}")]
    Indeterminate(String),
    #[error("needs limit interpretation at {0}")]
    NeedsLimitInterpretation(String),
    #[error("ill-conditioned fit: {0}")]
    IllConditioned(String),
    #[error("rational reconstruction failed: {0}")]
    Reconstruction(String),
    #[error("invalid precision context: {0}")]
    InvalidContext(String),
}

impl ZetaError {
    /// Short machine-readable name, used on the CLI diagnostic stream.
    pub fn kind(&self) -> &'static str {
        match self {
            ZetaError::Pole(_) => "PoleError",
            ZetaError::Domain(_) => "DomainError",
            ZetaError::NoConvergence(_) => "NoConvergence",
            ZetaError::Indeterminate(_) => "IndeterminateError",
            ZetaError::NeedsLimitInterpretation(_) => "NeedsLimitInterpretation",
            ZetaError::IllConditioned(_) => "IllConditioned",
            ZetaError::Reconstruction(_) => "ReconstructionError",
            ZetaError::InvalidContext(_) => "InvalidContext",
        }
    }

    /// True for errors caused by where the function was evaluated rather than
    /// by running out of precision or terms.
    pub fn is_domain_like(&self) -> bool {
        matches!(
            self,
            ZetaError::Pole(_)
                | ZetaError::Domain(_)
                | ZetaError::Indeterminate(_)
                | ZetaError::NeedsLimitInterpretation(_)
                | ZetaError::InvalidContext(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, ZetaError>;
