use thiserror::Error;

/// Errors raised by the group engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A search or closure grew past a hard limit ("not desk scale").
    #[error("{what} exceeded cap of {cap}")]
    CapExceeded { what: String, cap: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("subgroup is not normal in the group")]
    NotNormal,

    #[error("subgroup is not contained in the given group")]
    NotContained,

    #[error("element set does not normalize the subgroup")]
    NotNormalized,

    #[error("section is not a chief factor")]
    NotChiefFactor,

    #[error("group is not sigma-soluble")]
    NotSigmaSoluble,

    #[error("group is not soluble")]
    NotSoluble,

    #[error("action is not a homomorphism into the automorphism group: {0}")]
    BadAction(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid sigma partition: {0}")]
    InvalidSigma(String),

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn cap(what: impl Into<String>, cap: usize) -> Self {
        Error::CapExceeded {
            what: what.into(),
            cap,
        }
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
