//! Partial trace and subsystem purity.
//!
//! For a subsystem A, reshape the amplitude vector into the 2^|A| × 2^{n-|A|}
//! matrix M whose row index packs the kept-qubit bits (ascending label order,
//! most significant first) and whose column index packs the traced-qubit
//! bits. Then ρ_A = M M† and π_A = Tr ρ_A² = ‖ρ_A‖_F².

use num_complex::Complex64;

use crate::bipartitions::SubsetMask;
use crate::error::{Error, Result};
use crate::state::PureState;

/// Reduced density matrix of a kept subsystem: Hermitian, PSD, trace 1.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    /// Row-major entries, length dim².
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entry(i, i)).sum()
    }

    /// Largest |ρ_{ij} - ρ_{ji}*| over all entry pairs.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                worst = worst.max((self.entry(i, j) - self.entry(j, i).conj()).norm());
            }
        }
        worst
    }
}

/// Purity of a subsystem together with the mask identifying it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PuritySummary {
    pub mask: SubsetMask,
    pub purity: f64,
}

fn check_mask(state: &PureState, mask: &SubsetMask) -> Result<()> {
    if mask.n() != state.n() {
        return Err(Error::MaskMismatch {
            mask_n: mask.n(),
            state_n: state.n(),
        });
    }
    Ok(())
}

/// Bit positions (shift amounts within a basis index) of the kept qubits,
/// ascending label order, so the first entry is the most significant.
fn kept_shifts(mask: &SubsetMask) -> Vec<usize> {
    mask.qubits().iter().map(|q| mask.n() - q).collect()
}

/// Gather the amplitude vector into the row-major 2^|A| × 2^{n-|A|} matrix M.
fn reshape(amps: &[Complex64], mask: &SubsetMask) -> Vec<Complex64> {
    let n = mask.n();
    let row_shifts = kept_shifts(mask);
    let col_shifts = kept_shifts(&mask.complement());
    let cols = 1usize << col_shifts.len();
    let mut m = vec![Complex64::new(0.0, 0.0); 1 << n];
    for (k, &a) in amps.iter().enumerate() {
        let mut r = 0usize;
        for &s in &row_shifts {
            r = r << 1 | (k >> s & 1);
        }
        let mut c = 0usize;
        for &s in &col_shifts {
            c = c << 1 | (k >> s & 1);
        }
        m[r * cols + c] = a;
    }
    m
}

fn gram(m: &[Complex64], rows: usize, cols: usize) -> Vec<Complex64> {
    let mut rho = vec![Complex64::new(0.0, 0.0); rows * rows];
    for r in 0..rows {
        for r2 in 0..rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..cols {
                acc += m[r * cols + c] * m[r2 * cols + c].conj();
            }
            rho[r * rows + r2] = acc;
        }
    }
    rho
}

/// ρ_A = Tr_Ā |ψ⟩⟨ψ|, computed as M M† without any 2ⁿ×2ⁿ intermediate.
pub fn reduced_density_matrix(state: &PureState, mask: &SubsetMask) -> Result<DensityMatrix> {
    check_mask(state, mask)?;
    let rows = 1usize << mask.size();
    let cols = 1usize << (state.n() - mask.size());
    let m = reshape(state.amplitudes(), mask);
    Ok(DensityMatrix {
        dim: rows,
        entries: gram(&m, rows, cols),
    })
}

/// π = Tr ρ², i.e. the squared Frobenius norm of a Hermitian ρ.
pub fn purity_of(dm: &DensityMatrix) -> f64 {
    dm.entries.iter().map(|e| e.norm_sqr()).sum()
}

/// Purity of an arbitrary amplitude vector's subsystem, no unit-norm
/// requirement. Works on the smaller side of the bipartition (π_A = π_Ā).
pub fn purity_from_amplitudes(n: usize, amps: &[Complex64], mask: &SubsetMask) -> f64 {
    debug_assert_eq!(amps.len(), 1 << n);
    let side = if 2 * mask.size() > n { mask.complement() } else { *mask };
    let rows = 1usize << side.size();
    let cols = 1usize << (n - side.size());
    let m = reshape(amps, &side);
    // Σ_{r,r'} |⟨row_r, row_r'⟩|², exploiting Hermitian symmetry.
    let mut total = 0.0;
    for r in 0..rows {
        let row = &m[r * cols..(r + 1) * cols];
        total += row.iter().map(|a| a.norm_sqr()).sum::<f64>().powi(2);
        for r2 in r + 1..rows {
            let row2 = &m[r2 * cols..(r2 + 1) * cols];
            let inner: Complex64 = row
                .iter()
                .zip(row2)
                .map(|(a, b)| a * b.conj())
                .sum();
            total += 2.0 * inner.norm_sqr();
        }
    }
    total
}

/// π_A for a pure state, evaluated on the cheaper side of the bipartition.
pub fn subsystem_purity(state: &PureState, mask: &SubsetMask) -> Result<PuritySummary> {
    check_mask(state, mask)?;
    Ok(PuritySummary {
        mask: *mask,
        purity: purity_from_amplitudes(state.n(), state.amplitudes(), mask),
    })
}
