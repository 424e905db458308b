use thiserror::Error;

/// Errors raised by the order, dynamics and cover machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element kinds do not match: {0}")]
    KindMismatch(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("element is not positive in the order")]
    NotPositive,

    #[error("growth search diverged: no exponent below the power cap {cap} works")]
    SearchDiverged { cap: i64 },

    #[error("sign could not be resolved within the refinement cap")]
    UnresolvedSign,

    #[error("oracles disagree: {0}")]
    InconsistentOracles(String),

    #[error("word {0} is not in the commutator subgroup")]
    NotInCommutator(String),

    #[error("unsupported surface: {0}")]
    UnsupportedSurface(String),

    #[error("all sampled words have vanishing reference quasimorphism")]
    DegenerateSample,

    #[error("instance inconsistent: {0}")]
    InstanceInconsistent(String),

    #[error("causal order undecided for {0}")]
    Undecided(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
