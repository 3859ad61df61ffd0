//! n-qubit pure states as dense amplitude vectors.
//!
//! Indexing convention (used everywhere in this crate): amplitude `a_k`
//! multiplies the basis ket |b₁b₂…b_n⟩ where b₁ is the MOST significant bit
//! of `k`. For n = 7, `a_18` multiplies |0010010⟩ (18 = 0b0010010). Qubit
//! labels are 1-based; qubit 1 is the highest bit.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Smallest supported qubit count.
pub const MIN_QUBITS: usize = 2;
/// Largest supported qubit count; keeps dense storage at 2^12 amplitudes.
pub const MAX_QUBITS: usize = 12;

/// Norm tolerance for user-supplied amplitude lists (files may carry decimal
/// rounding). Accepted states are rescaled to unit norm at machine precision.
pub const INPUT_NORM_TOL: f64 = 1e-9;

/// Indices carrying +1/(4√2) in the Zha seven-qubit state.
pub const ZHA_PLUS: [usize; 20] = [
    0, 3, 13, 14, 17, 28, 40, 43, 52, 58, 73, 74, 85, 91, 97, 98, 108, 111, 112, 125,
];

/// Indices carrying -1/(4√2) in the Zha seven-qubit state.
pub const ZHA_MINUS: [usize; 12] = [18, 31, 37, 38, 55, 57, 68, 71, 86, 88, 115, 126];

/// Unit-norm pure state of `n` qubits, immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Number of qubits.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Hilbert-space dimension 2ⁿ.
    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// Dense amplitude vector, length 2ⁿ.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Amplitude of basis index `k`.
    pub fn amplitude(&self, k: usize) -> Complex64 {
        self.amplitudes[k]
    }

    /// Euclidean norm of the amplitude vector.
    pub fn norm(&self) -> f64 {
        norm_of(&self.amplitudes)
    }
}

fn check_qubit_count(n: usize) -> Result<()> {
    if !(MIN_QUBITS..=MAX_QUBITS).contains(&n) {
        return Err(Error::InvalidQubitCount(n));
    }
    Ok(())
}

fn norm_of(amps: &[Complex64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Build a state from sparse `(index, amplitude)` terms. Unlisted indices are
/// zero. The input must already be normalized to within [`INPUT_NORM_TOL`];
/// the stored state is rescaled to unit norm at machine precision.
pub fn make_state(n: usize, terms: &[(usize, Complex64)]) -> Result<PureState> {
    check_qubit_count(n)?;
    let dim = 1 << n;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
    let mut seen = vec![false; dim];
    for &(index, amp) in terms {
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        if seen[index] {
            return Err(Error::DuplicateIndex(index));
        }
        seen[index] = true;
        amplitudes[index] = amp;
    }
    let norm = norm_of(&amplitudes);
    if (norm - 1.0).abs() > INPUT_NORM_TOL {
        return Err(Error::NonUnitNorm(norm));
    }
    // Rescale only when the input actually misses the invariant; this keeps
    // write-then-read round trips bit-exact.
    if (norm - 1.0).abs() > 1e-12 {
        for a in &mut amplitudes {
            *a /= norm;
        }
    }
    Ok(PureState { n, amplitudes })
}

/// The Zha seven-qubit state: 32 terms of magnitude 1/(4√2) with the sign
/// pattern of [`ZHA_PLUS`] and [`ZHA_MINUS`].
///
/// Signs are attached to basis indices, and index ↔ ket follows the crate
/// convention (index 38 is |0100110⟩, MSB first); published listings of this
/// state occasionally print a ket that disagrees with its index, and the
/// index is authoritative here.
pub fn zha_seven_qubit_state() -> PureState {
    let c = 1.0 / (4.0 * 2.0_f64.sqrt());
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 128];
    for &k in &ZHA_PLUS {
        amplitudes[k] = Complex64::new(c, 0.0);
    }
    for &k in &ZHA_MINUS {
        amplitudes[k] = Complex64::new(-c, 0.0);
    }
    PureState { n: 7, amplitudes }
}

/// GHZ state (|0…0⟩ + |1…1⟩)/√2 on `n` qubits.
pub fn ghz_state(n: usize) -> Result<PureState> {
    check_qubit_count(n)?;
    let dim = 1 << n;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
    let c = std::f64::consts::FRAC_1_SQRT_2;
    amplitudes[0] = Complex64::new(c, 0.0);
    amplitudes[dim - 1] = Complex64::new(c, 0.0);
    Ok(PureState { n, amplitudes })
}

/// Haar-random pure state drawn from a ChaCha8 generator seeded with `seed`.
/// Same seed, same platform-independent bits.
pub fn random_state(n: usize, seed: u64) -> Result<PureState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_state_from_rng(n, &mut rng)
}

/// Haar-random pure state consuming an existing generator. Draws 2ⁿ complex
/// standard Gaussians (re then im per amplitude) and normalizes.
pub fn random_state_from_rng<R: Rng>(n: usize, rng: &mut R) -> Result<PureState> {
    check_qubit_count(n)?;
    let dim = 1 << n;
    let amplitudes: Vec<Complex64> = (0..dim)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im)
        })
        .collect();
    from_unnormalized(n, amplitudes)
}

/// Rescale an arbitrary nonzero amplitude vector to a unit-norm state.
pub fn from_unnormalized(n: usize, mut amplitudes: Vec<Complex64>) -> Result<PureState> {
    check_qubit_count(n)?;
    assert_eq!(amplitudes.len(), 1 << n, "amplitude vector length must be 2^n");
    let norm = norm_of(&amplitudes);
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::ZeroVector);
    }
    for a in &mut amplitudes {
        *a /= norm;
    }
    Ok(PureState { n, amplitudes })
}

/// Rescale a state to unit norm.
pub fn normalize(state: &PureState) -> Result<PureState> {
    from_unnormalized(state.n, state.amplitudes.clone())
}

/// Sesquilinear inner product ⟨a|b⟩, conjugating the first argument.
pub fn inner_product(a: &PureState, b: &PureState) -> Complex64 {
    assert_eq!(a.n, b.n, "inner product requires equal qubit counts");
    a.amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn bell_state_from_terms() {
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        let bell = make_state(2, &[(0, c(inv_sqrt2)), (3, c(inv_sqrt2))]).unwrap();
        assert!((bell.norm() - 1.0).abs() < TOL);
        assert!((bell.amplitude(0).re - inv_sqrt2).abs() < TOL);
        assert_eq!(bell.amplitude(1), c(0.0));
        assert_eq!(bell.amplitude(2), c(0.0));
    }

    #[test]
    fn make_state_rejects_non_unit_norm() {
        let err = make_state(2, &[(0, c(1.0)), (1, c(1.0))]).unwrap_err();
        assert!(matches!(err, Error::NonUnitNorm(_)));
    }

    #[test]
    fn make_state_rejects_bad_indices() {
        assert!(matches!(
            make_state(2, &[(4, c(1.0))]).unwrap_err(),
            Error::IndexOutOfRange { index: 4, dim: 4 }
        ));
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert!(matches!(
            make_state(2, &[(0, c(inv_sqrt2)), (0, c(inv_sqrt2))]).unwrap_err(),
            Error::DuplicateIndex(0)
        ));
    }

    #[test]
    fn zha_state_amplitudes() {
        let psi = zha_seven_qubit_state();
        let c_ref = 1.0 / (4.0 * 2.0_f64.sqrt());
        assert!((psi.amplitude(0).re - c_ref).abs() < TOL);
        assert!((psi.amplitude(0).re - 0.17677669529663687).abs() < TOL);
        assert!((psi.amplitude(18).re + c_ref).abs() < TOL);

        let nonzero: Vec<usize> = (0..128)
            .filter(|&k| psi.amplitude(k).norm() > 0.0)
            .collect();
        assert_eq!(nonzero.len(), 32);
        for &k in &nonzero {
            assert!((psi.amplitude(k).norm() - c_ref).abs() < TOL);
        }
        // 32 terms of squared magnitude 1/32: the norm is exactly 1.
        assert!((psi.norm() - 1.0).abs() < TOL);
    }

    #[test]
    fn ghz_states() {
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        let g3 = ghz_state(3).unwrap();
        assert!((g3.amplitude(0).re - inv_sqrt2).abs() < TOL);
        assert!((g3.amplitude(7).re - inv_sqrt2).abs() < TOL);
        assert!((1..7).all(|k| g3.amplitude(k) == c(0.0)));

        let g7 = ghz_state(7).unwrap();
        assert!((g7.amplitude(0).re - inv_sqrt2).abs() < TOL);
        assert!((g7.amplitude(127).re - inv_sqrt2).abs() < TOL);

        assert!(matches!(ghz_state(1).unwrap_err(), Error::InvalidQubitCount(1)));
    }

    #[test]
    fn random_state_is_deterministic_and_normalized() {
        let a = random_state(7, 1234).unwrap();
        let b = random_state(7, 1234).unwrap();
        assert_eq!(a.amplitudes(), b.amplitudes());
        assert!((a.norm() - 1.0).abs() < TOL);
    }

    #[test]
    fn random_states_with_distinct_seeds_differ() {
        let a = random_state(7, 1).unwrap();
        let b = random_state(7, 2).unwrap();
        let fidelity = inner_product(&a, &b).norm_sqr();
        assert!(fidelity < 0.9);
    }

    #[test]
    fn normalize_and_inner_product() {
        let doubled = from_unnormalized(2, vec![c(2.0), c(0.0), c(0.0), c(0.0)]).unwrap();
        assert_eq!(doubled.amplitude(0), c(1.0));

        let zero = vec![c(0.0); 4];
        assert!(matches!(from_unnormalized(2, zero).unwrap_err(), Error::ZeroVector));

        let psi = random_state(4, 9).unwrap();
        assert!((inner_product(&psi, &psi).re - 1.0).abs() < TOL);

        let s00 = make_state(2, &[(0, c(1.0))]).unwrap();
        let s11 = make_state(2, &[(3, c(1.0))]).unwrap();
        assert!(inner_product(&s00, &s11).norm() < TOL);
    }
}
