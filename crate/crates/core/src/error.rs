use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different groups: {0}")]
    MixedGroups(String),

    #[error("malformed element: {0}")]
    MalformedElement(String),

    #[error("invalid group definition: {0}")]
    InvalidGroup(String),

    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),

    #[error("identification map is not an isomorphism: {0}")]
    InvalidIdentification(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("degenerate construction: {0}")]
    Degenerate(String),

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("escalation cap exceeded after {attempts} attempts")]
    EscalationCap { attempts: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("word parse error at token {position}: {message}")]
    WordParse { position: usize, message: String },
}
