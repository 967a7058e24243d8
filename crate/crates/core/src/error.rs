use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operands are defined over different color alphabets")]
    AlphabetMismatch,

    #[error("unknown color `{0}`")]
    UnknownColor(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("alphabet has no ground color")]
    NoGround,

    #[error("invalid part: {0}")]
    InvalidPart(String),

    #[error("invalid plain partition: {0}")]
    InvalidPlainPartition(String),

    #[error("invalid crystal graph: {0}")]
    InvalidCrystal(String),

    #[error("not a weight-consistent crystal: {0}")]
    WeightInconsistent(String),

    #[error("no energy function: {0}")]
    NoEnergyFunction(String),

    #[error("energy value {value} at pair {pair} escapes {{0,1,2}}")]
    EnergyOutOfRange { pair: String, value: i64 },

    #[error("invalid energy matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid forbidden pattern: {0}")]
    InvalidPattern(String),

    #[error("energy at the ground pair is {0}, path degrees would diverge")]
    NonZeroGroundEnergy(u8),

    #[error("partition {0} does not satisfy the difference conditions")]
    NotInIdeal(String),

    #[error("bijection violation: {0}")]
    BijectionViolation(String),

    #[error("divergent specialization: color `{color}` has degree {degree} at value -1")]
    DivergentSpecialization { color: String, degree: String },

    #[error("unknown catalog entry `{0}`")]
    UnknownCase(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
