//! The multipartite entanglement potential π_ME: the average subsystem
//! purity over all balanced bipartitions. Lower means more multipartite
//! entanglement; the floor is 2^{-n_A}.

use rayon::prelude::*;

use crate::bipartitions::{balanced_size, enumerate_subsets, SubsetMask};
use crate::error::Result;
use crate::purity::{subsystem_purity, PuritySummary};
use crate::state::PureState;

/// π_ME together with the full per-bipartition purity table.
#[derive(Debug, Clone)]
pub struct PotentialReport {
    pub n: usize,
    /// Balanced subsystem size n_A = floor(n/2).
    pub balanced_k: usize,
    pub pi_me: f64,
    /// Eq.-3-style floor 2^{-n_A}.
    pub lower_bound: f64,
    /// One entry per size-n_A mask, ordered by mask.
    pub entries: Vec<PuritySummary>,
    pub min_mask: SubsetMask,
    pub max_mask: SubsetMask,
}

/// Purities of all C(n,k) size-k subsystems, ordered by mask.
pub fn purity_table(state: &PureState, k: usize) -> Result<Vec<PuritySummary>> {
    let masks = enumerate_subsets(state.n(), k)?;
    masks
        .par_iter()
        .map(|m| subsystem_purity(state, m))
        .collect()
}

/// π_ME = C(n, n_A)^{-1} Σ_{|A| = n_A} π_A over ALL size-n_A subsets (each
/// complement pair counted in both orientations for even n).
pub fn entanglement_potential(state: &PureState) -> PotentialReport {
    let n = state.n();
    let k = balanced_size(n);
    let entries = purity_table(state, k).expect("balanced size is always a valid subset size");
    let pi_me = entries.iter().map(|e| e.purity).sum::<f64>() / entries.len() as f64;
    let min_mask = entries
        .iter()
        .min_by(|a, b| a.purity.total_cmp(&b.purity))
        .expect("at least one balanced mask")
        .mask;
    let max_mask = entries
        .iter()
        .max_by(|a, b| a.purity.total_cmp(&b.purity))
        .expect("at least one balanced mask")
        .mask;
    PotentialReport {
        n,
        balanced_k: k,
        pi_me,
        lower_bound: 2.0f64.powi(-(k as i32)),
        entries,
        min_mask,
        max_mask,
    }
}

/// Best rational p/q with q ≤ 1024 within 1e-10 of `x`, via continued
/// fractions. Cosmetic report annotation; the float stays authoritative.
pub fn rational_annotation(x: f64) -> Option<(i64, u64)> {
    const MAX_DEN: u64 = 1024;
    const TOL: f64 = 1e-10;
    if !x.is_finite() {
        return None;
    }
    let sign = if x < 0.0 { -1 } else { 1 };
    let mut value = x.abs();
    // Convergents h/k of the continued fraction of |x|.
    let (mut h0, mut k0, mut h1, mut k1) = (1i64, 0u64, value.floor() as i64, 1u64);
    for _ in 0..64 {
        if ((h1 as f64) / (k1 as f64) - x.abs()).abs() < TOL {
            return Some((sign * h1, k1));
        }
        let frac = value - value.floor();
        if frac < 1e-15 {
            break;
        }
        value = 1.0 / frac;
        let a = value.floor() as i64;
        let h2 = a * h1 + h0;
        let k2 = a as u64 * k1 + k0;
        if k2 > MAX_DEN {
            break;
        }
        (h0, k0, h1, k1) = (h1, k1, h2, k2);
    }
    if ((h1 as f64) / (k1 as f64) - x.abs()).abs() < TOL {
        Some((sign * h1, k1))
    } else {
        None
    }
}
