use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not invertible over GF(2)")]
    NotInvertible,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("qubit {qubit} out of range for {n_qubits}-qubit circuit")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("gate `{0}` is not in the CNOT/RZ/RX basis; lower the circuit first")]
    UnsupportedGate(String),

    #[error("{n_qubits} qubits exceeds the dense simulator limit of {max}")]
    TooManyQubits { n_qubits: usize, max: usize },

    #[error("CNOT layer is not monotonic")]
    NonMonotonic,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("optimized circuit failed verification (max phase-aligned error {max_error:e})")]
    VerificationFailed { max_error: f64 },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
