use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,

    #[error("{0} is not a sum of two squares")]
    NotRepresentable(u64),

    #[error("gradient undefined for an empty word")]
    GradientUndefined,

    #[error("invalid chain code symbol {0:?}")]
    InvalidSymbol(char),

    #[error("symbol {symbol} is not allowed in a first-octant code")]
    NotOctantSymbol { symbol: u8 },

    #[error("not a discrete-circle octant code: {0}")]
    NotOctantCode(String),

    #[error("octant index {0} outside 1..=8")]
    InvalidOctant(u8),

    #[error("broadcast sequence must contain at least one radius")]
    EmptySequence,

    #[error("broadcast radius must be at least 1")]
    ZeroRadius,

    #[error("modulus must be at least 1")]
    ZeroModulus,

    #[error("neighbourhood parameter must be 1 or 2, got {0}")]
    InvalidNeighbourhood(u8),

    #[error("window too small for {steps} steps")]
    WindowTooSmall { steps: u32 },

    #[error("point ({x}, {y}) lies outside the window")]
    OutsideWindow { x: i64, y: i64 },

    #[error("alphabet of {alphabet} symbols cannot encode a sequence of period {period}")]
    AlphabetMismatch { alphabet: usize, period: usize },

    #[error("modulus mismatch: table has {table}, labelling has {labelling}")]
    ModulusMismatch { table: u32, labelling: u32 },

    #[error("labellings cover different windows")]
    WindowMismatch,

    #[error("point ({x}, {y}) has no label")]
    Unlabelled { x: i64, y: i64 },

    #[error("aggregation table must be symmetric (entry ({i}, {j}) differs from ({j}, {i}))")]
    AsymmetricTable { i: usize, j: usize },

    #[error("aggregation table must be square with {expected} columns, row {row} has {found}")]
    RaggedTable { row: usize, expected: usize, found: usize },

    #[error("degenerate: parallel fringe undefined (infinite gradient)")]
    DegenerateFringe,

    #[error("band width must be positive")]
    NonPositiveWidth,

    #[error("level set {k} is empty")]
    EmptyLevelSet { k: u32 },

    #[error("levels below {k} do not form a bounded region")]
    UnboundedLevelSet { k: u32 },

    #[error("exponent must be positive")]
    NonPositiveExponent,

    #[error("scenario line {line}: {message}")]
    Scenario { line: usize, message: String },

    #[error("scenario is missing `{0}`")]
    ScenarioMissing(String),

    #[error("unknown aggregation table {0:?} (expected moire, antimoire or antimoire_mod2)")]
    UnknownTable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
