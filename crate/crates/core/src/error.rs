use thiserror::Error;

/// Errors raised while building or interrogating finite structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("order {order} exceeds the configured cap {cap}")]
    CapExceeded { order: u128, cap: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {modulus} is reducible over F_{p}: divisible by {factor}")]
    ReducibleModulus {
        p: u64,
        modulus: String,
        factor: String,
    },

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("ring axiom violated: {0}")]
    RingAxiom(String),

    #[error("bimodule axiom violated: {0}")]
    BimoduleAxiom(String),

    #[error("not a ring homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("bimodule is defined over a different ring")]
    RingMismatch,

    #[error("element {index} out of range for structure of order {order}")]
    OutOfRange { index: usize, order: usize },

    #[error("{0} is not idempotent")]
    NotIdempotent(usize),

    #[error("subset is not closed as a {0}")]
    NotClosed(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("operands live over different base domains")]
    DomainMismatch,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("table import: {0}")]
    TableFormat(String),

    /// A computation contradicted a statement that should hold unconditionally.
    #[error("alarm: {0}")]
    Alarm(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
