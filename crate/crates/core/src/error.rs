use thiserror::Error;

/// Syntax or value error in a sequence expression, with the byte offset
/// where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError { offset, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SequenceError {
    #[error("invalid expression: {0}")]
    Invalid(String),
    #[error("sequence is not positive at j = {j}")]
    NonPositive { j: u64 },
    #[error("N is not strongly increasing (certified lower ratio {lambda0})")]
    NotStronglyIncreasing { lambda0: f64 },
    #[error("kappa0 = {kappa0} violates lambda0^kappa0 >= 2 (lambda0 = {lambda0})")]
    KappaTooSmall { kappa0: u32, lambda0: f64 },
    #[error("cannot derive an asymptotic continuation: {0}")]
    NoContinuation(String),
    #[error("omega violates the two-sided power condition between t1 = {t1} and t2 = {t2}")]
    OmegaCondition { t1: f64, t2: f64 },
    #[error("omega is not positive at t = {t}")]
    OmegaNonPositive { t: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("nuclearity needs the Banach range 1 <= p, q <= inf; got {0}")]
    QuasiBanach(String),
    #[error("F-scale spaces need finite p; got {0}")]
    InfiniteP(String),
    #[error("dimension must be a positive integer")]
    BadDimension,
    #[error("{0} is not admissible: {1}")]
    NotAdmissible(&'static str, String),
    #[error("operation needs geometric (classical) smoothness sequences: {0}")]
    NotClassical(String),
    #[error("entropy asymptotics requested for a problem that is not compact ({0})")]
    NotCompact(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported scale for this operation: {0}")]
    WrongScale(String),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabError {
    #[error("section dimension {n} exceeds the cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("k = {k} exceeds the cap {cap}")]
    KTooLarge { k: u32, cap: u32 },
    #[error("nuclear norms need the Banach range; got {0}")]
    QuasiBanach(String),
    #[error("invalid section: {0}")]
    Invalid(String),
    #[error("rate fit needs the non-limiting regime: {0}")]
    Limiting(String),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}
