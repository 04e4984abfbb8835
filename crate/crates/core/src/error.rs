use thiserror::Error;

/// Errors produced anywhere in the library.
///
/// Positions in parse errors are byte offsets into the input text; index
/// positions reported to users are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at line {line}, column {column} (byte {offset}): {message}{}", expected_suffix(.expected))]
    Parse {
        offset: usize,
        line: usize,
        column: usize,
        message: String,
        expected: Vec<String>,
    },

    #[error("invalid variable list: {0}")]
    InvalidVariables(String),

    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { name: String, offset: usize },

    #[error("expected a point with {expected} coordinates, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("multi-index {index} is not in the ordered set (degree cap {cap})")]
    NotInSet { index: String, cap: u32 },

    #[error("polynomial degree {degree} exceeds cap {cap}")]
    DegreeExceedsCap { degree: i64, cap: u32 },

    #[error("expected a vector of length {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("operation requires a non-zero polynomial")]
    ZeroPolynomial,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("empty list of polynomials")]
    EmptyList,

    #[error("linear system is inconsistent")]
    Inconsistent,
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!("; expected one of: {}", expected.join(", "))
    }
}

impl Error {
    pub(crate) fn parse_at(text: &str, offset: usize, message: impl Into<String>) -> Self {
        Self::parse_expecting(text, offset, message, Vec::new())
    }

    pub(crate) fn parse_expecting(
        text: &str,
        offset: usize,
        message: impl Into<String>,
        expected: Vec<String>,
    ) -> Self {
        let offset = offset.min(text.len());
        let before = &text[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Parse {
            offset,
            line,
            column,
            message: message.into(),
            expected,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
