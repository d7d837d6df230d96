use serde::Serialize;
use thiserror::Error;

/// A point tuple that violates some predicate, with the size of the violation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub labels: Vec<String>,
    pub magnitude: f64,
}

impl Witness {
    pub fn new(indices: Vec<usize>, labels: Vec<String>, magnitude: f64) -> Self {
        Self {
            indices,
            labels,
            magnitude,
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("point set must contain at least one point")]
    EmptyPointSet,
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown point label `{0}`")]
    UnknownLabel(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: String, found: String },
    #[error("operands are defined over different point sets")]
    PointSetMismatch,
    #[error("entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("entry ({row}, {col}) = {value} is negative")]
    NegativeEntry { row: usize, col: usize, value: f64 },
    #[error("parameter `{name}` = {value} is out of range")]
    ParameterOutOfRange { name: &'static str, value: f64 },
    #[error("precondition failed: {what}")]
    Precondition {
        what: String,
        witness: Option<Witness>,
    },
    #[error("quotient is not well defined: class members disagree on a cross value")]
    InconsistentQuotient { witness: Witness },
    #[error("points `{0}` and `{1}` are at zero distance in both directions")]
    DegenerateDenominator(String, String),
    #[error("{n} points exceed the cap of {max}")]
    TooManyPoints { n: usize, max: usize },
    #[error("bridge inequality violated")]
    BridgeViolation { witness: Witness },
    #[error("label `{0}` occurs on both sides of the disjoint union")]
    LabelCollision(String),
    #[error("canonical map is not injective: `{0}` and `{1}` have the same image")]
    NotInjective(String, String),
    #[error("kernels are not comparable at `{0}`, `{1}`: one vanishes where the other does not")]
    Incomparable(String, String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("map is not a bijection of the point set")]
    NotBijection,
    #[error("invalid fixture: {0}")]
    InvalidFixture(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyPointSet => "empty_point_set",
            Error::DuplicateLabel(_) => "duplicate_label",
            Error::UnknownLabel(_) => "unknown_label",
            Error::Dimension { .. } => "dimension_mismatch",
            Error::PointSetMismatch => "point_set_mismatch",
            Error::NonFinite { .. } => "non_finite",
            Error::NegativeEntry { .. } => "negative_entry",
            Error::ParameterOutOfRange { .. } => "parameter_out_of_range",
            Error::Precondition { .. } => "precondition",
            Error::InconsistentQuotient { .. } => "inconsistent_quotient",
            Error::DegenerateDenominator(..) => "degenerate_denominator",
            Error::TooManyPoints { .. } => "too_many_points",
            Error::BridgeViolation { .. } => "bridge_violation",
            Error::LabelCollision(_) => "label_collision",
            Error::NotInjective(..) => "not_injective",
            Error::Incomparable(..) => "incomparable",
            Error::InvalidMeasure(_) => "invalid_measure",
            Error::NotBijection => "not_bijection",
            Error::InvalidFixture(_) => "invalid_fixture",
            Error::Io(_) => "io",
            Error::Parse(_) => "parse",
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Error::Precondition { witness, .. } => witness.as_ref(),
            Error::InconsistentQuotient { witness } | Error::BridgeViolation { witness } => {
                Some(witness)
            }
            _ => None,
        }
    }

    /// I/O and parse failures, as opposed to mathematical precondition failures.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Io(_) | Error::Parse(_))
    }

    pub(crate) fn precondition(what: impl Into<String>, witness: Option<Witness>) -> Self {
        Error::Precondition {
            what: what.into(),
            witness,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
