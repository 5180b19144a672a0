use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller-supplied argument violates an operation's precondition.
    #[error("{0}")]
    InvalidArgument(String),

    #[error("shell index m = {m} is outside 1..={n}")]
    ShellOutOfRange { m: i64, n: u32 },

    #[error("polynomial degree {degree} is not below n = {n}")]
    DegreeTooHigh { degree: usize, n: u32 },

    #[error("argument outside the domain of {function}: {value}")]
    Domain {
        function: &'static str,
        value: String,
    },

    #[error("could not parse {what}: '{token}'")]
    Parse { what: &'static str, token: String },

    /// Two routes that must agree exactly did not. Always indicates an
    /// arithmetic bug.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
