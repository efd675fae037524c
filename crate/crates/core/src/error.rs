use thiserror::Error;

/// Raised when a Gröbner computation runs out of S-pair steps.
///
/// Carries how far the computation got so callers can report an
/// inconclusive outcome instead of a verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BudgetExceeded {
    pub steps: u64,
    pub limit: u64,
    /// Canonical text of the (non-reduced) partial basis at the moment of abort.
    pub partial_basis: Vec<String>,
    pub pending_pairs: usize,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("variable name clash: {0}")]
    NameClash(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("Gröbner step budget exceeded ({} of {} steps, {} pending pairs)", .0.steps, .0.limit, .0.pending_pairs)]
    Budget(Box<BudgetExceeded>),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl AlgebraError {
    pub fn is_budget(&self) -> bool {
        matches!(self, AlgebraError::Budget(_))
    }
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
