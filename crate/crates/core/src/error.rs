use thiserror::Error;

use crate::observables::ObservableKind;
use crate::relations::RelationId;
use crate::states::Family;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("state is not normalised: sum |c_m|^2 = {norm_sq} (pass normalize=true to rescale)")]
    NotNormalized { norm_sq: f64 },

    #[error("point ({0}) lies outside the state's domain")]
    OutOfDomain(String),

    #[error("observable {kind} is not defined for the {family} family")]
    KindFamilyMismatch { kind: ObservableKind, family: Family },

    #[error("relation {relation} does not apply to the {family} family")]
    FamilyMismatch { relation: RelationId, family: Family },

    #[error("invalid relation parameters: {0}")]
    InvalidParams(String),

    #[error("R12 requires N != N1")]
    EqualChiIntegers,

    #[error("delta chi radicand is negative for N = {n}, N1 = {n1}")]
    NegativeRadicand { n: i64, n1: i64 },
}
