//! Subsystem purities, the multipartite entanglement potential π_ME, and a
//! numerical search for maximally multipartite entangled n-qubit states.
//!
//! π_ME averages the subsystem purity π_A = Tr ρ_A² over all balanced
//! bipartitions of the register; minimizers are the most multipartite
//! entangled pure states under this measure. The crate provides:
//!
//! - dense pure-state construction, including the Zha seven-qubit candidate
//!   whose 1- and 2-qubit marginals are completely mixed and whose π_ME is
//!   19/140 ([`state`]),
//! - partial-trace purity kernels ([`purity`]) plus independently transcribed
//!   closed-form oracles for seven qubits ([`closed_forms`]),
//! - balanced-bipartition reports ([`potential`]),
//! - projected-gradient and annealing minimization of π_ME ([`search`]),
//! - JSON state files and reports ([`io`]) behind the `mmes` CLI.

#![forbid(unsafe_code)]

pub mod bipartitions;
pub mod closed_forms;
pub mod error;
pub mod io;
pub mod potential;
pub mod purity;
pub mod search;
pub mod state;

pub use error::{Error, Result};
