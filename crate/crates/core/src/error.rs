use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("term matches no supported family: {0}")]
    UnclassifiableTerm(String),
    #[error("orbital index {index} out of range for {num_orbitals} orbitals")]
    IndexOutOfRange { index: usize, num_orbitals: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("pauli sums have different widths ({0} vs {1})")]
    WidthMismatch(usize, usize),
    #[error("circuit registers differ: {0}")]
    ShapeMismatch(String),
    #[error("diagonal term {0} has no swap gadget; use the diagonal compiler")]
    DiagonalTermNotGadgetizable(String),
    #[error("{required} dirty ancillae required, {available} available")]
    InsufficientDirtyAncillae { required: usize, available: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("register of {qubits} qubits exceeds the {max}-qubit simulation cap")]
    RegisterTooLarge { qubits: usize, max: usize },
    #[error("matrix is not unitary (deviation {0:e})")]
    NonUnitary(f64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid gate: {0}")]
    InvalidGate(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
