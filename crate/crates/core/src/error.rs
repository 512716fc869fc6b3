use core::fmt;

/// Which validity floor a threshold parameter fell below.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidityFloor {
    /// `delta > 1/N`, required by the `b = 0` (Dirichlet kernel) threshold.
    Dirichlet,
    /// `delta > 2*sqrt(2)/(N*pi)`, required by the Fresnel-increment thresholds.
    FresnelIncrement,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A scalar argument was outside its admissible domain.
    InvalidArgument {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    /// Two operands had incompatible shapes.
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    /// The detection threshold is too small for the requested bound.
    DeltaBelowFloor {
        bound: ValidityFloor,
        delta: f64,
        floor: f64,
    },
    /// The canonical partition needs `sqrt(N)` to be an integer.
    NonSquareAntennaCount(usize),
    /// A least-squares or Cholesky solve could not be completed.
    Singular,
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidArgument {
            name,
            value,
            reason,
        }
    }

    pub(crate) fn mismatch(what: &'static str, expected: usize, found: usize) -> Self {
        Error::DimensionMismatch {
            what,
            expected,
            found,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument {
                name,
                value,
                reason,
            } => write!(f, "invalid {name} = {value}: {reason}"),
            Error::DimensionMismatch {
                what,
                expected,
                found,
            } => write!(f, "dimension mismatch in {what}: expected {expected}, found {found}"),
            Error::DeltaBelowFloor { bound, delta, floor } => {
                let name = match bound {
                    ValidityFloor::Dirichlet => "delta > 1/N",
                    ValidityFloor::FresnelIncrement => "delta > 2*sqrt(2)/(N*pi)",
                };
                write!(f, "delta = {delta} violates {name} (floor {floor})")
            }
            Error::NonSquareAntennaCount(n) => {
                write!(f, "antenna count {n} is not a perfect square")
            }
            Error::Singular => f.write_str("singular linear system"),
        }
    }
}

impl core::error::Error for Error {}
