use num_bigint::BigInt;
use thiserror::Error;

use crate::ring::RingError;

/// Broad category of a failure, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Inputs violate an arithmetic or construction constraint.
    Domain,
    /// An anti-self-dual metric could not be certified under the active policy.
    Policy,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("surface {name:?} is flagged complex but chi + tau = {sum} is not divisible by 4")]
    NotComplexSurface { name: String, sum: BigInt },

    #[error("surface {name:?} is not a complex surface; its canonical bundle is undefined")]
    RequiresComplexSurface { name: String },

    #[error("{what} must be non-negative, got {value}")]
    Negative { what: &'static str, value: BigInt },

    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: BigInt },

    #[error("cannot blow up an almost-complex structure; blow-up is a holomorphic construction")]
    AlmostComplexBlowUp,

    #[error("c1c2 = {c1c2} is not divisible by 24; not realizable by an almost-complex structure")]
    NonIntegralTodd { c1c2: BigInt },

    #[error("c1^3 - c1.p1 = {difference} is odd; inconsistent Pontryagin data")]
    OddChernDifference { difference: BigInt },

    #[error("no anti-self-dual metric certified on {surface:?}: {reason}")]
    PolicyRejected { surface: String, reason: String },

    #[error("k0({m}) unknown: no anti-self-dual threshold is tabulated for this catalogue surface")]
    UnknownK0 { m: BigInt },

    #[error("target n_tilde = {n_tilde} is not admissible; max admissible n_tilde = {max_admissible}")]
    TargetInfeasible { n_tilde: BigInt, max_admissible: BigInt },

    #[error("cubic coefficient a3 vanishes; the Todd polynomial is degenerate and no threshold exists")]
    DegenerateFamily,

    #[error(transparent)]
    Ring(#[from] RingError),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::PolicyRejected { .. } | Error::UnknownK0 { .. } => ErrorKind::Policy,
            _ => ErrorKind::Domain,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
