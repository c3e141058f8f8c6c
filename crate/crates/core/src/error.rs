use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("finite cyclic factor needs order >= 2, got {0}")]
    InvalidOrder(u64),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("letters from different factors cannot be multiplied inside a factor")]
    FactorMismatch,
    #[error("the identity has no letter length")]
    IdentityLength,
    #[error("invalid length assignment: {0}")]
    InvalidLength(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("operation is undefined on the identity word")]
    IdentityWord,
    #[error("cyclic core has length {0}; the element lies in a conjugate of a factor")]
    CoreTooShort(usize),
    #[error("generating set is empty")]
    EmptySet,
    #[error("generating set contains the identity")]
    IdentityInSet,
    #[error("factor is infinite; use weighted counting")]
    InfiniteFactor,
    #[error("lengths cannot be rescaled to integers: {0}")]
    NotRescalable(String),
    #[error("{steps} lattice steps requested, cap is {cap}")]
    LatticeCapExceeded { steps: u64, cap: u64 },
    #[error("fit window [{lo}, {hi}] is invalid or outside the table")]
    InvalidWindow { lo: f64, hi: f64 },
    #[error("{name} must be positive")]
    NonPositive { name: &'static str },
    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("sweep has no points")]
    EmptySweep,
    #[error("root finder did not converge")]
    NoConvergence,
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
