use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("exp requires a series with no terms below q^1 (found q^{order})")]
    ExpConstantTerm { order: i32 },
    #[error("sqrt requires constant term exactly 1 and no negative powers")]
    SqrtConstantNotOne,
    #[error("leading coefficient {0} is not a unit of Q[r, 1/r]")]
    NonUnitLeading(String),
    #[error("cannot invert the zero series")]
    ZeroSeries,
    #[error("final series has a nonzero coefficient at negative order q^{order}")]
    NegativeOrder { order: i32 },
    #[error("division by (1 - m) requires positive cost, got {cost}")]
    NonPositiveCost { cost: i64 },
    #[error("w-exponent {key:?} lies outside the retained window; raise the order headroom")]
    OutsideWindow { key: Vec<i32> },
    #[error("half-integer q-exponent where an integral one was required")]
    HalfInteger,
    #[error("r-substitution failed: {0}")]
    Substitution(String),
    #[error("malformed series JSON: {0}")]
    Json(String),
}
