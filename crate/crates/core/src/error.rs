use thiserror::Error;

use crate::weight::Weight;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported root system type {0}")]
    UnsupportedType(String),

    #[error("characters belong to different root data")]
    DatumMismatch,

    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("weight {0} is not restricted")]
    NotRestricted(Weight),

    #[error("character is not invariant under the Weyl group")]
    NotInvariant,

    #[error("exact division failed: nonzero remainder")]
    NotDivisible,

    #[error("division by the zero character")]
    DivisionByZero,

    #[error("composition factors of nabla({weight}) are not pinned down by the sum formula; ambiguous factors: {ambiguous:?}")]
    Underdetermined { weight: Weight, ambiguous: Vec<Weight> },

    #[error("negative multiplicity {mult} for G1T-simple of highest weight {weight}")]
    NegativeMultiplicity { weight: Weight, mult: i64 },

    #[error("no tilting character available for T({weight}): {hint}")]
    TiltingDataMissing { weight: Weight, hint: String },

    #[error("malformed table line {line}: {reason}")]
    MalformedOverride { line: usize, reason: String },

    #[error("table entry violates strong linkage: {factor} is not linked below {top}")]
    LinkageViolation { top: Weight, factor: Weight },

    #[error("table entry for {weight} contradicts computed data: {reason}")]
    OverrideConflict { weight: Weight, reason: String },

    #[error("inconsistent character data at {weight}: {reason}")]
    Inconsistent { weight: Weight, reason: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
