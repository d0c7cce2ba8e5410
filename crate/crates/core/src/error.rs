use alloc::vec::Vec;
use core::fmt;

/// Errors raised by the numerical core.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A point or angle vector does not have one entry per variable.
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    /// Degree outside the domain of the requested operation.
    DegreeOutOfRange {
        degree: u32,
        min: u32,
    },
    /// A polynomial must have at least one variable.
    NoVariables,
    /// Term `index` has a multi-index of the wrong length.
    TermLength {
        index: usize,
        expected: usize,
        found: usize,
    },
    /// Term `index` has total degree different from the polynomial degree.
    TermWeight {
        index: usize,
        alpha: Vec<u32>,
        expected: u64,
        found: u64,
    },
    /// The same multi-index occurs twice.
    DuplicateTerm {
        index: usize,
        alpha: Vec<u32>,
    },
    /// Coefficient is NaN or infinite.
    NonFiniteCoefficient {
        index: usize,
    },
    /// `p` is not a valid norm exponent.
    InvalidExponent(f64),
    /// The closed-form P_2 norm was requested outside `ab < 0, |c(a+b)| <= 4|ab|`.
    OutOfValidityDomain {
        a: f64,
        b: f64,
        c: f64,
    },
    InvalidConfig(&'static str),
    /// The torus grid has more points than we are willing to enumerate.
    GridTooLarge {
        dims: usize,
        points_per_axis: usize,
    },
    ZeroPolynomial,
    InvalidRange {
        from: u32,
        to: u32,
    },
    /// No objective evaluation fits in the budget.
    BudgetExhausted,
    /// The number of degree-m monomials in N variables is too large to search.
    SearchSpaceTooLarge {
        degree: u32,
        num_vars: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DimensionMismatch { expected, found } => {
                write!(f, "expected {expected} coordinates, got {found}")
            }
            Self::DegreeOutOfRange { degree, min } => {
                write!(f, "degree {degree} is out of range (must be at least {min})")
            }
            Self::NoVariables => write!(f, "polynomial must have at least one variable"),
            Self::TermLength { index, expected, found } => write!(
                f,
                "term {index}: multi-index has {found} entries, expected {expected}"
            ),
            Self::TermWeight { index, alpha, expected, found } => write!(
                f,
                "term {index} (alpha {alpha:?}) has total degree {found}, expected {expected}"
            ),
            Self::DuplicateTerm { index, alpha } => {
                write!(f, "term {index}: duplicate multi-index {alpha:?}")
            }
            Self::NonFiniteCoefficient { index } => {
                write!(f, "term {index}: coefficient is not finite")
            }
            Self::InvalidExponent(p) => write!(f, "norm exponent {p} must be finite and >= 1"),
            Self::OutOfValidityDomain { a, b, c } => write!(
                f,
                "formula out of validity domain: need ab < 0 and |c(a+b)| <= 4|ab| (a={a}, b={b}, c={c})"
            ),
            Self::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Self::GridTooLarge { dims, points_per_axis } => write!(
                f,
                "grid too large: {points_per_axis}^{dims} points; use fewer variables or a smaller grid"
            ),
            Self::ZeroPolynomial => write!(f, "polynomial is identically zero"),
            Self::InvalidRange { from, to } => {
                write!(f, "invalid degree range {from}..={to} (need 2 <= from <= to)")
            }
            Self::BudgetExhausted => {
                write!(f, "evaluation budget exhausted before the first evaluation")
            }
            Self::SearchSpaceTooLarge { degree, num_vars } => write!(
                f,
                "too many degree-{degree} monomials in {num_vars} variables to search"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
