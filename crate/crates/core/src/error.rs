use thiserror::Error;

/// Errors shared across the crate. Fatal configuration problems (size caps,
/// singular parameters) are separated from malformed input so callers can map
/// them to distinct exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("ambient size mismatch: left has r={left}, right has r={right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("size limit exceeded: {what} needs {needed} but the cap is {cap}")]
    SizeLimit {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("singular parameter: {0}")]
    SingularParameter(String),

    #[error("layer of the zero element is undefined")]
    UndefinedLayer,

    #[error("permutation does not stabilize the labelled set partition: {0}")]
    NotInSubgroup(String),

    #[error("image is not a full product of symmetric groups on its orbits: {0}")]
    NotYoung(String),

    #[error("oracle matrix too large: {needed} columns exceed the cap {cap}")]
    OracleTooLarge { needed: u128, cap: u128 },

    #[error("invalid layer index: {0}")]
    InvalidLayer(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
