//! Hand-expanded purity formulas for seven qubits, kept as literal
//! transcriptions of the closed forms rather than calls into the generic
//! partial-trace kernel. The duplication is deliberate: these serve as an
//! independent oracle cross-checking [`crate::purity`].
//!
//! Each formula is a sum of squared block norms plus twice the squared
//! magnitude of cross inner products between blocks, where a "block" is a
//! run of consecutive basis indices (width 16 for π₁₂₃, 32 for π₁₂, 64 for
//! π₁) or, for the 32-term sparse forms, an explicit 4-index group.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::PureState;

/// The 32 basis indices the sparse closed forms assume; any amplitude
/// outside this set invalidates them.
pub const SPARSE32_SUPPORT: [usize; 32] = [
    0, 3, 13, 14, 17, 18, 28, 31, 37, 38, 40, 43, 52, 55, 57, 58, 68, 71, 73, 74, 85, 86, 88, 91,
    97, 98, 108, 111, 112, 115, 125, 126,
];

const PI_123_BLOCKS: [[usize; 4]; 8] = [
    [0, 3, 13, 14],
    [17, 18, 28, 31],
    [37, 38, 40, 43],
    [52, 55, 57, 58],
    [68, 71, 73, 74],
    [85, 86, 88, 91],
    [97, 98, 108, 111],
    [112, 115, 125, 126],
];

const PI_123_CROSS: [([usize; 4], [usize; 4]); 4] = [
    ([0, 3, 13, 14], [112, 115, 125, 126]),
    ([17, 18, 28, 31], [97, 98, 108, 111]),
    ([37, 38, 40, 43], [85, 86, 88, 91]),
    ([52, 55, 57, 58], [68, 71, 73, 74]),
];

const PI_127_BLOCKS: [[usize; 4]; 8] = [
    [0, 18, 28, 14],
    [17, 3, 13, 31],
    [52, 38, 40, 58],
    [37, 55, 57, 43],
    [68, 86, 88, 74],
    [85, 71, 73, 91],
    [112, 98, 108, 126],
    [97, 115, 125, 111],
];

const PI_127_CROSS: [([usize; 4], [usize; 4]); 4] = [
    ([0, 18, 28, 14], [97, 115, 125, 111]),
    ([17, 3, 13, 31], [112, 98, 108, 126]),
    ([52, 38, 40, 58], [85, 71, 73, 91]),
    ([37, 55, 57, 43], [68, 86, 88, 74]),
];

fn require_seven(state: &PureState) -> Result<&[Complex64]> {
    if state.n() != 7 {
        return Err(Error::WrongQubitCount {
            expected: 7,
            got: state.n(),
        });
    }
    Ok(state.amplitudes())
}

/// Block form over runs of `width` consecutive indices: the squared norms of
/// the 128/width blocks plus 2|·|² cross terms pairing index i of block p
/// with index i of block q.
fn contiguous_block_form(amps: &[Complex64], width: usize) -> f64 {
    let blocks = 128 / width;
    let mut total = 0.0;
    for p in 0..blocks {
        let norm_sq: f64 = (0..width).map(|i| amps[p * width + i].norm_sqr()).sum();
        total += norm_sq * norm_sq;
    }
    for p in 0..blocks {
        for q in p + 1..blocks {
            let cross: Complex64 = (0..width)
                .map(|i| amps[p * width + i] * amps[q * width + i].conj())
                .sum();
            total += 2.0 * cross.norm_sqr();
        }
    }
    total
}

/// π₁₂₃ for a general seven-qubit state: 8 blocks of 16 consecutive
/// amplitudes and 28 cross terms.
pub fn pi_123_appendix_a(state: &PureState) -> Result<f64> {
    Ok(contiguous_block_form(require_seven(state)?, 16))
}

/// π₁₂ for a general seven-qubit state: 4 blocks of 32 and 6 cross terms.
pub fn pi_12_appendix_b(state: &PureState) -> Result<f64> {
    Ok(contiguous_block_form(require_seven(state)?, 32))
}

/// π₁ for a general seven-qubit state: 2 blocks of 64 and 1 cross term.
/// (The printed expansion's second block is read as the contiguous run
/// |a₆₄|²…|a₁₂₇|², consistent with normalization.)
pub fn pi_1_appendix_c(state: &PureState) -> Result<f64> {
    Ok(contiguous_block_form(require_seven(state)?, 64))
}

fn require_sparse32(state: &PureState) -> Result<&[Complex64]> {
    let amps = require_seven(state)?;
    for (k, a) in amps.iter().enumerate() {
        if a.norm() > 1e-12 && !SPARSE32_SUPPORT.contains(&k) {
            return Err(Error::UnsupportedSupport(k));
        }
    }
    Ok(amps)
}

fn sparse_block_form(
    amps: &[Complex64],
    blocks: &[[usize; 4]; 8],
    cross: &[([usize; 4], [usize; 4]); 4],
) -> f64 {
    let mut total = 0.0;
    for block in blocks {
        let norm_sq: f64 = block.iter().map(|&k| amps[k].norm_sqr()).sum();
        total += norm_sq * norm_sq;
    }
    for (left, right) in cross {
        let inner: Complex64 = left
            .iter()
            .zip(right)
            .map(|(&i, &j)| amps[i] * amps[j].conj())
            .sum();
        total += 2.0 * inner.norm_sqr();
    }
    total
}

/// π₁₂₃ specialized to states supported on [`SPARSE32_SUPPORT`]: 8 groups of
/// 4 amplitudes plus 4 cross terms (the remaining 24 cross inner products
/// vanish identically on this support).
pub fn pi_123_sparse32(state: &PureState) -> Result<f64> {
    Ok(sparse_block_form(
        require_sparse32(state)?,
        &PI_123_BLOCKS,
        &PI_123_CROSS,
    ))
}

/// π₁₂₇ specialized to states supported on [`SPARSE32_SUPPORT`].
pub fn pi_127_sparse32(state: &PureState) -> Result<f64> {
    Ok(sparse_block_form(
        require_sparse32(state)?,
        &PI_127_BLOCKS,
        &PI_127_CROSS,
    ))
}
