use thiserror::Error;

pub type Result<T, E = GsbError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GsbError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("operation undefined on the zero polynomial")]
    EmptyPolynomial,

    #[error("rule {lhs} -> {rhs} is not oriented: {detail}")]
    Orientation {
        lhs: String,
        rhs: String,
        detail: String,
    },

    #[error("two rules share the leading word {0}")]
    DuplicateLhs(String),

    #[error("reduction exceeded the step budget of {0} steps; the order may not be a monomial order")]
    StepBudgetExceeded(usize),

    #[error("presentation is inconsistent: 1 lies in the ideal")]
    Inconsistent,

    #[error("automaton exceeded the state cap of {0} states")]
    StateCapExceeded(usize),

    #[error("unsupported presentation kind: {0}")]
    UnsupportedKind(String),

    #[error("resource guard: {0}")]
    Resource(String),

    #[error("invalid order: {0}")]
    InvalidOrder(String),
}

impl GsbError {
    /// Stable machine-readable code used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            GsbError::Domain(_) => "domain",
            GsbError::EmptyPolynomial => "empty_polynomial",
            GsbError::Orientation { .. } => "orientation",
            GsbError::DuplicateLhs(_) => "duplicate_lhs",
            GsbError::StepBudgetExceeded(_) => "step_budget",
            GsbError::Inconsistent => "inconsistent",
            GsbError::StateCapExceeded(_) => "state_cap",
            GsbError::UnsupportedKind(_) => "unsupported_kind",
            GsbError::Resource(_) => "resource",
            GsbError::InvalidOrder(_) => "invalid_order",
        }
    }
}
