use thiserror::Error;

/// Errors raised by the library. The CLI maps each variant onto an exit code
/// through [`Error::category`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("operands live over different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("zero Laurent element")]
    ZeroElement,
    #[error("Laurent element is a unit; it generates the whole ring")]
    UnitElement,
    #[error("factors are not pairwise coprime: {0}")]
    NotCoprime(String),
    #[error("product of factors does not match the polynomial")]
    ProductMismatch,

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("vertex set is not hereditary")]
    NotHereditary,
    #[error("pair is not admissible: {0}")]
    NotAdmissible(String),
    #[error("malformed morphism: {0}")]
    MalformedMorphism(String),
    #[error("malformed generators: {0}")]
    MalformedGenerators(String),
    #[error("cycle {0} has an exit")]
    CycleHasExit(String),
    #[error("cycles share a vertex")]
    CyclesNotDisjoint,
    #[error("digraph is not row-finite")]
    NotRowFinite,
    #[error("digraph is not acyclic")]
    NotAcyclic,
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("ideal is not dlf: {0}")]
    NotDlf(String),
    #[error("invalid ideal: {}", .0.join("; "))]
    Validation(Vec<String>),

    #[error("resource limit exceeded: {what} (limit {limit})")]
    ResourceLimit { what: String, limit: u64 },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Parse,
    Validation,
    ResourceLimit,
    Internal,
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Parse { .. } => ErrorCategory::Parse,
            Error::ResourceLimit { .. } => ErrorCategory::ResourceLimit,
            Error::Internal(_) => ErrorCategory::Internal,
            _ => ErrorCategory::Validation,
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn limit(what: impl Into<String>, limit: u64) -> Self {
        Error::ResourceLimit {
            what: what.into(),
            limit,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
