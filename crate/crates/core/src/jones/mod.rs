//! Colored Jones functions of the unknot, torus knots and their cables,
//! with the auxiliary sums `delta`, `S`, `U`, `V` and recurrence checks.

mod colored;
mod identities;
mod params;
mod symbolic;

pub use colored::{
    cabled_jones, torus_jones, torus_jones_by_recurrence, unknot_jones, CableSequence, KnotSequences, TorusSequence,
    UnknotSequence,
};
pub use identities::{verify_identity, verify_identity_with, IdentityId, IdentityReport};
pub use params::{validate_torus, CablingParams, CaseTag, ParamError};
pub use symbolic::{delta_term, direct_sum, symbolic_delta, symbolic_sum, SumKind, SymbolicSequence};

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JonesError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("M-coefficient {0} of n is odd")]
    OddMCoefficient(i64),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl From<ParamError> for JonesError {
    fn from(e: ParamError) -> Self {
        JonesError::BadParams(e.0)
    }
}
