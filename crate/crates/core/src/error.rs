use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside the region where the formula is defined
    /// (e.g. `|q| >= 1`, a series argument on or outside the unit circle, or a
    /// violated convergence predicate).
    Domain(String),
    /// A displayed denominator vanishes. `factor` names it, `index` is the
    /// recurrence index when there is one.
    Pole { factor: String, index: Option<i64> },
    /// A series, product or continued fraction exhausted its budget.
    NonConvergence { what: String, terms: usize },
    /// No minimal solution exists at the requested point (`|u| = 1`).
    Spectrum(String),
    /// The formula degenerates (e.g. `b'^2_0 = 0` in the Pincherle ratio).
    Degenerate(String),
    /// The no-discrete-spectrum guard could not certify the parameters.
    Guard(String),
    /// A ratio test divided by a vanishing solution value.
    DivisionByZero(String),
}

impl Error {
    pub(crate) fn pole(factor: impl Into<String>, index: Option<i64>) -> Self {
        Error::Pole { factor: factor.into(), index }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Short machine-readable tag for the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Pole { .. } => "pole",
            Error::NonConvergence { .. } => "non_convergence",
            Error::Spectrum(_) => "spectrum",
            Error::Degenerate(_) => "degenerate",
            Error::Guard(_) => "guard",
            Error::DivisionByZero(_) => "division_by_zero",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Pole { factor, index: Some(n) } => {
                write!(f, "pole: factor {factor} vanishes at n = {n}")
            }
            Error::Pole { factor, index: None } => write!(f, "pole: factor {factor} vanishes"),
            Error::NonConvergence { what, terms } => {
                write!(f, "{what} did not converge within {terms} terms")
            }
            Error::Spectrum(m) => write!(f, "no minimal solution: {m}"),
            Error::Degenerate(m) => write!(f, "degenerate: {m}"),
            Error::Guard(m) => write!(f, "guard: {m}"),
            Error::DivisionByZero(m) => write!(f, "division by zero: {m}"),
        }
    }
}

impl core::error::Error for Error {}
