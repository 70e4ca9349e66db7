use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("cannot parse {what}: unexpected `{token}`")]
    Parse { what: &'static str, token: String },

    #[error("unbalanced mixed construction: sum of n_i is {sum_n} but sum of m_j is {sum_m} (requires sum n_i = sum m_j)")]
    UnbalancedMixed { sum_n: u64, sum_m: u64 },

    #[error("inconsistent property flags: {0}")]
    InconsistentProperties(String),

    #[error("unknown fiber `{0}`")]
    UnknownFiber(String),

    #[error("schedule step {step}: {reason}")]
    Schedule { step: usize, reason: String },

    #[error("Zariski lifting hypothesis failed: {0}")]
    ZariskiHypothesis(String),

    #[error("document error: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(what: &'static str, token: impl Into<String>) -> Self {
        Error::Parse {
            what,
            token: token.into(),
        }
    }
}
