use thiserror::Error;

/// Errors raised by the transforms, the derivation machinery and the file readers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("signal must contain at least one sample")]
    EmptySignal,

    #[error("sample {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("unsupported blocklength {len}: fast kernels exist only for N = 4, 8, 12 and 24")]
    UnsupportedLength { len: usize },

    #[error("length mismatch: expected {expected} samples, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("Hadamard order {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("DHT matrix size must be positive")]
    ZeroSize,

    #[error("pre-addition layer {order} does not exist for N = {n} (valid orders: 0..={max})")]
    InvalidOrder { n: usize, order: usize, max: usize },

    #[error("pre-addition matrix for N = {n}, layer {order} is singular (check rows {rows:?})")]
    SingularLayer {
        n: usize,
        order: usize,
        rows: Vec<usize>,
    },

    #[error("no {{-1, 0, 1}} special-addition split exists for entries {entries:?}")]
    NoValidSplit { entries: Vec<(usize, usize, f64)> },

    #[error(
        "ambiguous clustering: magnitudes {a} and {b} are closer than twice the tolerance {tol}"
    )]
    AmbiguousClustering { a: f64, b: f64, tol: f64 },

    #[error("column {column} mixes magnitudes that are not integer multiples of one constant")]
    MixedColumn { column: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
