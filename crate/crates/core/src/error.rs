use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("delta undefined on empty string")]
    EmptyComposition,

    #[error("composition entries must be positive integers, got {0}")]
    NonPositiveEntry(u32),

    #[error("composition `{0}` must start with an entry >= 2 for infinite sums")]
    NotZetaAdmissible(String),

    #[error("divergent mollified series: r-string {0} has a partial fold outside {{1, 2}}")]
    DivergentMollified(String),

    #[error("divergent series: leading entry `{0}` is an unsigned 1 (or 0)")]
    DivergentSeries(String),

    #[error("q must satisfy 0 < q < 1, got {0}")]
    InvalidQ(String),

    #[error("rule {0} needs a nonempty pattern to act on")]
    EmptyPattern(String),

    #[error("mollifier strings have unequal lengths ({s}, {t}, {r})")]
    LengthMismatch { s: usize, t: usize, r: usize },

    #[error("parameter out of range: {0}")]
    InvalidParameter(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
