use thiserror::Error;

/// Errors produced by state construction, purity kernels, and the search.
#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count {0} outside supported range 2..=12")]
    InvalidQubitCount(usize),

    #[error("state norm {0} differs from 1 beyond tolerance")]
    NonUnitNorm(f64),

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("duplicate basis index {0}")]
    DuplicateIndex(usize),

    #[error("cannot normalize the zero vector")]
    ZeroVector,

    #[error("subset size {k} invalid for {n} qubits (need 1 <= k < n)")]
    InvalidSize { k: usize, n: usize },

    #[error("mask over {mask_n} qubits applied to a {state_n}-qubit state")]
    MaskMismatch { mask_n: usize, state_n: usize },

    #[error("mask {mask:#b} does not describe a proper nonempty subsystem of {n} qubits")]
    InvalidMask { mask: usize, n: usize },

    #[error("operation requires a {expected}-qubit state, got {got}")]
    WrongQubitCount { expected: usize, got: usize },

    #[error("amplitude at index {0} lies outside the 32-term support these formulas assume")]
    UnsupportedSupport(usize),

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),

    #[error("state file parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
