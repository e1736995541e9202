use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("entry f[{x}][{y}] = {value} is not a sign")]
    NotASign { x: usize, y: usize, value: i64 },
    #[error("not a probability distribution: {0}")]
    NotADistribution(String),
    #[error("index ({x}, {y}) out of range for n = {n}")]
    IndexOutOfRange { x: usize, y: usize, n: usize },
    #[error("n = {n} exceeds the exact solver cap {cap}; use the search module")]
    ExactCapExceeded { n: usize, cap: usize },
    #[error("n = {n} exceeds the partition DP cap {cap}")]
    DpCapExceeded { n: usize, cap: usize },
    #[error("oracle cap exceeded: {0}")]
    OracleCapExceeded(String),
    #[error("empty subset")]
    EmptySubset,
    #[error("inconsistent inputs: lower bound {lower} exceeds upper bound {upper}")]
    InconsistentInputs { lower: f64, upper: f64 },
    #[error("stability index {0} outside (1, 2]")]
    BadStabilityIndex(f64),
    #[error("bad dimensions: {0}")]
    BadDimensions(String),
    #[error("degenerate delta {0}: log2(1/delta) underflows")]
    DegenerateDelta(f64),
    #[error("parameters require k = 2^{m0}, which is too large to materialize")]
    HugeK { m0: u32 },
    #[error("block of size 2^{c} does not fit in n = {n}")]
    BlockTooLarge { n: usize, c: u32 },
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code: 2 validation, 3 cap exceeded, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ExactCapExceeded { .. }
            | Error::DpCapExceeded { .. }
            | Error::OracleCapExceeded(_)
            | Error::HugeK { .. } => 3,
            Error::Io(_) | Error::Csv(_) => 4,
            _ => 2,
        }
    }
}
