//! Subsystem masks and deterministic bipartition enumeration.

use crate::error::{Error, Result};

/// A proper nonempty subsystem A of an n-qubit register.
///
/// Bit layout mirrors the basis-index convention: the bit for qubit `i`
/// (1-based) is bit `n - i`, so qubit 1 sits at the highest of the n bits.
/// A set bit means the qubit is KEPT in A.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    n: usize,
    mask: usize,
}

impl SubsetMask {
    /// Validate and wrap a raw mask.
    pub fn new(n: usize, mask: usize) -> Result<Self> {
        let size = mask.count_ones() as usize;
        if mask >= (1 << n) || size == 0 || size >= n {
            return Err(Error::InvalidMask { mask, n });
        }
        Ok(SubsetMask { n, mask })
    }

    /// Build from 1-based qubit labels.
    pub fn from_qubits(n: usize, qubits: &[usize]) -> Result<Self> {
        let mut mask = 0usize;
        for &q in qubits {
            if q == 0 || q > n {
                return Err(Error::InvalidMask { mask: 0, n });
            }
            mask |= 1 << (n - q);
        }
        Self::new(n, mask)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> usize {
        self.mask
    }

    /// Number of qubits kept in A.
    pub fn size(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Kept qubit labels in ascending order.
    pub fn qubits(&self) -> Vec<usize> {
        (1..=self.n).filter(|&q| self.contains(q)).collect()
    }

    /// Whether qubit label `q` is kept.
    pub fn contains(&self, q: usize) -> bool {
        self.mask >> (self.n - q) & 1 == 1
    }

    /// Concatenated-label rendering, e.g. "127" for qubits {1,2,7}.
    pub fn label(&self) -> String {
        self.qubits().iter().map(|q| q.to_string()).collect()
    }

    /// The complementary subsystem Ā.
    pub fn complement(&self) -> SubsetMask {
        SubsetMask {
            n: self.n,
            mask: !self.mask & ((1 << self.n) - 1),
        }
    }
}

/// All C(n,k) size-k subsystem masks in strictly increasing numeric order.
pub fn enumerate_subsets(n: usize, k: usize) -> Result<Vec<SubsetMask>> {
    if k == 0 || k >= n {
        return Err(Error::InvalidSize { k, n });
    }
    let masks = (0..1usize << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|mask| SubsetMask { n, mask })
        .collect();
    Ok(masks)
}

/// Balanced subsystem size n_A = floor(n/2). For odd n the size-floor(n/2)
/// subsets represent each bipartition; π_A = π_Ā makes the choice immaterial.
pub fn balanced_size(n: usize) -> usize {
    n / 2
}
