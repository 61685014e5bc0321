use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad thresholds, malformed flag values, and other caller mistakes.
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("unknown lattice node id {0}")]
    UnknownNode(usize),

    /// The virtual empty-set root is a traversal anchor, not a rule source.
    #[error("cannot generate rules from the virtual root node")]
    RootRuleSource,

    /// The brute-force reference implementations refuse inputs large enough
    /// that exhaustive enumeration stops being trustworthy as a check.
    #[error("reference enumeration cap exceeded: {0}")]
    EnumerationCap(String),

    /// An itemset handed to a generator-enumeration routine was not closed.
    #[error("itemset is not closed: {0}")]
    NotClosed(String),

    /// The mined output disagreed with the brute-force reference.
    #[error("verification mismatch: {0}")]
    VerifyMismatch(String),
}

impl Error {
    /// Process exit code for this error when it escapes the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 2,
            Error::VerifyMismatch(_) => 3,
            _ => 1,
        }
    }
}
