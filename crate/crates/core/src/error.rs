//! Error type shared by the whole engine.

/// Errors surfaced by engine operations.
///
/// Everything is `Clone` so results can be cached inside immutable values.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The S-pair budget of a Gröbner run was exhausted; the instance is
    /// beyond desk scale.
    #[error("S-pair budget of {budget} exceeded during a Gröbner basis computation")]
    ResourceLimit { budget: u64 },

    /// Construction of a quotient ring whose defining ideal contains 1.
    #[error("the relations generate the unit ideal; the zero ring is not permitted")]
    ZeroRing,

    /// A prime-field modulus failed the primality check.
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    /// Literal / value incompatible with the declared coefficient field.
    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    /// Shape or ring mismatch between operands.
    #[error("incompatible operands: {0}")]
    Incompatible(String),

    /// A rational point whose coordinates violate the ring relations.
    #[error("point does not satisfy ring relation `{relation}`")]
    PointOffVariety { relation: String },

    /// Whole-algebra computation over an infinite-rank algebra without a window.
    #[error("the algebra has polynomial (even-degree) generators; an explicit degree window is required")]
    WindowRequired,

    /// Windowed computation asked to certify degrees outside what the data allows.
    #[error("insufficient depth {given} for the requested window; depth \u{2264} {required} is required")]
    InsufficientDepth { given: i64, required: i64 },

    /// Stagewise resolution exceeded its generator budget.
    #[error("resolution rank budget of {budget} adjoined generators exceeded")]
    RankBudget { budget: usize },

    /// Tate-style constructions need characteristic zero.
    #[error("operation requires characteristic 0 (divided powers are not implemented)")]
    CharacteristicZeroOnly,

    /// Text failed to parse; position is a byte offset into the literal.
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// Anything structurally invalid that is not a dedicated variant.
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
