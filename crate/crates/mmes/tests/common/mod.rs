//! Shared helpers for the integration suites.

use num_complex::Complex64;

/// Eigenvalues of an n×n complex Hermitian matrix (row-major entries) by
/// cyclic Jacobi rotations. Test-only and independent of the library's
/// linear algebra.
pub fn hermitian_eigenvalues(n: usize, entries: &[Complex64]) -> Vec<f64> {
    assert_eq!(entries.len(), n * n);
    let mut a: Vec<Vec<Complex64>> = (0..n)
        .map(|i| entries[i * n..(i + 1) * n].to_vec())
        .collect();
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off = off.max(a[p][q].norm());
            }
        }
        if off < 1e-13 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                let r = apq.norm();
                if r < 1e-300 {
                    continue;
                }
                let phase = apq / r; // e^{iφ}
                let app = a[p][p].re;
                let aqq = a[q][q].re;
                let theta = 0.5 * (2.0 * r).atan2(app - aqq);
                let (s, c) = theta.sin_cos();
                // Columns: A <- A J.
                for i in 0..n {
                    let aip = a[i][p];
                    let aiq = a[i][q];
                    a[i][p] = c * aip + s * phase.conj() * aiq;
                    a[i][q] = -s * phase * aip + c * aiq;
                }
                // Rows: A <- J† A.
                for j in 0..n {
                    let apj = a[p][j];
                    let aqj = a[q][j];
                    a[p][j] = c * apj + s * phase * aqj;
                    a[q][j] = -s * phase.conj() * apj + c * aqj;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i].re).collect()
}
