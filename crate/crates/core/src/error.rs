use alloc::string::String;
use core::fmt;

/// Errors raised by the core algorithms.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two operands or an operand and an algebra disagree on dimension.
    DimensionMismatch { expected: usize, found: usize },
    /// The metric is not a square symmetric matrix of the algebra's size.
    InvalidGram(String),
    /// The operation only supports an orthonormal basis.
    NonOrthonormalBasis,
    /// A basis index is out of range or repeated.
    InvalidIndex(usize),
    /// The vertical distribution is not closed under the bracket.
    NonInvolutive { left: usize, right: usize },
    /// The matrix does not square to minus the identity.
    NotAlmostComplex,
    /// The structure is not an isometry of the metric.
    NotCompatible,
    /// The tensor violates the symmetries of the Gray-Hervella space W.
    NotInW(&'static str),
    /// The tensor is outside W3 + W4, so the W4 projection does not apply.
    NotInW3W4,
    /// The W4 coefficient 1/(2(n-1)) is undefined in real dimension 2.
    W4NotApplicable,
    /// A point that should lie on the unit sphere does not.
    NotOnSphere,
    /// The Magnin parameter eta must be nonzero.
    ZeroEta,
    /// Closed-form solvers need lambda_1 and lambda_2 nonzero.
    UnsupportedChart { which: u8 },
    /// The semi-Kaehler system has no solution when rho is zero.
    NoSemiKaehlerSolution,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::InvalidGram(msg) => write!(f, "invalid metric: {msg}"),
            Error::NonOrthonormalBasis => {
                write!(f, "only an identity Gram matrix (orthonormal basis) is supported")
            }
            Error::InvalidIndex(i) => write!(f, "invalid basis index {i}"),
            Error::NonInvolutive { left, right } => write!(
                f,
                "vertical distribution is not involutive: bracket of e{} and e{} leaves it",
                left + 1,
                right + 1
            ),
            Error::NotAlmostComplex => write!(f, "J does not satisfy J^2 = -I"),
            Error::NotCompatible => write!(f, "J is not compatible with the metric"),
            Error::NotInW(which) => write!(f, "tensor is not an element of W: {which}"),
            Error::NotInW3W4 => write!(f, "tensor does not satisfy a(X,Y,Z) = a(JX,JY,Z)"),
            Error::W4NotApplicable => write!(f, "W4 is not defined in real dimension 2"),
            Error::NotOnSphere => write!(f, "point is not on the unit sphere"),
            Error::ZeroEta => write!(f, "eta must be nonzero"),
            Error::UnsupportedChart { which } => {
                write!(f, "lambda_{which} = 0 is outside the supported chart")
            }
            Error::NoSemiKaehlerSolution => {
                write!(f, "no semi-Kaehler solution exists for rho = 0")
            }
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

impl core::error::Error for Error {}
