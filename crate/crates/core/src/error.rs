use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table entry {value} at ({row}, {col}) is out of range for n = {n}")]
    Range {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("element {0} is not a two-sided identity")]
    InvalidIdentity(usize),
    #[error("not a band: {0}")]
    NotABand(String),
    #[error("not a left regular band: {0}")]
    NotLeftRegular(String),
    #[error("size limit exceeded for {what}: {got} > {max}")]
    SizeLimit {
        what: &'static str,
        got: usize,
        max: usize,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("sublattice is not contained in the ambient lattice")]
    ContainmentViolation,
    #[error("algebra elements belong to different bands ({0} vs {1} coefficients)")]
    BandMismatch(usize, usize),
    #[error("support index {0} does not exist")]
    BadSupport(usize),
    #[error("bad support pair ({x}, {y}): {reason}")]
    BadPair {
        x: usize,
        y: usize,
        reason: &'static str,
    },
    #[error("band is not connected: {0}")]
    NotConnected(String),
    #[error("nilpotency index {index} exceeds the bound {bound}")]
    BoundViolated { index: usize, bound: u128 },
    #[error("theorem check failed: {0}")]
    TheoremViolation(String),
    #[error("idempotent lifting failed: {0}")]
    LiftFailure(String),
    #[error("path enumeration exploded: more than {max} paths")]
    Explosion { max: usize },
    #[error("certificate failure: {0}")]
    CertificateFailure(String),
    #[error("sign search guard exceeded: {arrows} arrows > {max}")]
    GuardExceeded { arrows: usize, max: usize },
    #[error("no sign assignment annihilates the sum of length-2 paths")]
    NoSignWorks,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Process exit code: 2 for unusable input, 3 for failed checks.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BoundViolated { .. }
            | Error::TheoremViolation(_)
            | Error::LiftFailure(_)
            | Error::CertificateFailure(_)
            | Error::NoSignWorks => 3,
            _ => 2,
        }
    }
}
