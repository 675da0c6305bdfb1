use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Pauli text at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("operator size mismatch: {left} vs {right} qubits")]
    SizeMismatch { left: usize, right: usize },

    #[error("C4 generator must be Hermitian, got {0}")]
    NonHermitian(String),

    #[error("dense oracle limited to {max} qubits, got {n}")]
    TooLarge { n: usize, max: usize },

    #[error("invalid distance {d}: {reason}")]
    InvalidDistance { d: usize, reason: &'static str },

    #[error("qubit index {index} out of range for {n} qubits")]
    QubitOutOfRange { index: usize, n: usize },

    #[error("empty string path")]
    EmptyPath,

    #[error("layout is not valid: {0}")]
    InvalidLayout(String),

    #[error("planning failed: {0}")]
    Planning(String),

    #[error("qubit {0} is not a dynamic mode of this plan")]
    NotDynamicMode(usize),

    #[error("stabilizer group has rank {rank}, a pure state on {n} qubits needs {n}")]
    NonMaximalGroup { rank: usize, n: usize },

    #[error("eigenvalue iteration did not converge on a {dim}x{dim} matrix")]
    NoConvergence { dim: usize },

    #[error("spectrum of {n} qubits does not fit 128-bit degeneracy counts")]
    SpectrumOverflow { n: usize },

    #[error("Hamiltonian term {0} is not supported by the diagonal evaluator")]
    UnsupportedTerm(String),

    #[error("render overlay references missing {0}")]
    DanglingReference(String),

    #[error("unsupported schema version {found}, expected {expected}")]
    SchemaVersion { found: u32, expected: u32 },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
