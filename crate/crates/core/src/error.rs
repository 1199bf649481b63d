use thiserror::Error;

/// Errors raised by the series algebra, operator assembly and theorem checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FockError {
    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("series parameters differ: alpha {left_alpha} / order {left_order} vs alpha {right_alpha} / order {right_order}")]
    ParamsMismatch {
        left_alpha: f64,
        left_order: usize,
        right_alpha: f64,
        right_order: usize,
    },

    #[error("non-finite value produced in {0}")]
    NonFinite(&'static str),

    #[error("index {index} outside 0..={max}")]
    OutOfRange { index: usize, max: usize },

    #[error("point {point} lies within {margin:e} of a pole at {pole}")]
    PoleProximity {
        point: String,
        pole: String,
        margin: f64,
    },

    #[error("operation requires an affine composition map")]
    NonAffineMap,

    #[error("weight has no entire-function representation")]
    NonEntireWeight,

    #[error("degenerate linear fractional map: ps - qr = {0}")]
    DegenerateMap(String),

    #[error("map has no fixed point (slope 1 with non-zero offset)")]
    NoFixedPoint,

    #[error("identity map: every point is fixed")]
    IdentityMap,

    #[error("matrix dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("quadrature grid too coarse: {angular} angular nodes for order {order}")]
    GridTooCoarse { angular: usize, order: usize },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),
}

pub type Result<T> = std::result::Result<T, FockError>;
