use std::fmt;

use thiserror::Error;

use crate::expr::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why a function value left the reals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainKind {
    DivisionByZero,
    LogOfNonPositive,
    SqrtOfNegative,
    /// `0^p` with `p < 0`.
    ZeroToNegativePower,
    /// Negative base raised to a non-integer exponent.
    NegativeBaseFractionalPower,
    /// Overflow or any other non-finite intermediate.
    NonFinite,
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DomainKind::DivisionByZero => "division by zero",
            DomainKind::LogOfNonPositive => "log of a non-positive number",
            DomainKind::SqrtOfNegative => "sqrt of a negative number",
            DomainKind::ZeroToNegativePower => "zero raised to a negative power",
            DomainKind::NegativeBaseFractionalPower => {
                "negative base raised to a non-integer power"
            }
            DomainKind::NonFinite => "non-finite value",
        };
        f.write_str(s)
    }
}

/// The function is not real-valued (or not finite) somewhere it was sampled.
///
/// `at` carries the sample point once the evaluation site is known.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainError {
    pub kind: DomainKind,
    pub at: Option<f64>,
}

impl DomainError {
    pub fn new(kind: DomainKind) -> Self {
        Self { kind, at: None }
    }

    pub fn at(mut self, x: f64) -> Self {
        self.at = Some(x);
        self
    }
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.at {
            Some(x) => write!(f, "{} at x = {x}", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

impl std::error::Error for DomainError {}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("domain error: {0}")]
    Domain(#[from] DomainError),
    #[error("invalid interval [{a}, {b}]: endpoints must be finite with a < b")]
    InvalidInterval { a: f64, b: f64 },
    #[error("level {level} out of range 1..={max}")]
    LevelOutOfRange { level: u32, max: u32 },
    #[error("x = {x} lies outside [{a}, {b}]")]
    OutOfDomain { x: f64, a: f64, b: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
