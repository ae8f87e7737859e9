use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("projective point has all coordinates zero")]
    InvalidPoint,
    #[error("projective matrix is zero")]
    InvalidMatrix,
    #[error("matrix maps the point to the zero vector")]
    DegenerateImage,
    #[error("point lies at infinity (m = 0)")]
    PointAtInfinity,
    #[error("unknown initial pair label `{0}`")]
    UnknownLabel(String),
    #[error("objective denominator vanishes at ({0}, {1})")]
    SingularEvaluation(String, String),
    #[error("invalid objective: {0}")]
    InvalidObjective(String),
    #[error("word parse error at token {pos}: {msg}")]
    WordParse { pos: usize, msg: String },
    #[error("word is infinite; use an approximate evaluation")]
    InfiniteWord,
    #[error("cyclic word has no attracting fixed point in the triangle: {0}")]
    Divergence(String),
    #[error("generation depth {depth} exceeds cap {cap}")]
    DepthCap { depth: usize, cap: usize },
    #[error("config error at {field}: {msg}")]
    Config { field: String, msg: String },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("no feasible exponent pair satisfies the constraints")]
    Infeasible,
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
