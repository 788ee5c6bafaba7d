//! Floating-point spectral norm of small complex matrices.
//!
//! `‖A‖₂² = λ_max(A*A)`. The Hermitian matrix `H = A*A` is embedded as the
//! real symmetric matrix `[[Re H, −Im H], [Im H, Re H]]`, whose spectrum is
//! that of `H` with every eigenvalue doubled, and diagonalized with cyclic
//! Jacobi rotations.

use crate::linalg::QMatrix;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a real symmetric matrix (row-major, `n×n`).
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    let idx = |i: usize, j: usize| i * n + j;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[idx(i, j)] * a[idx(i, j)])
            .sum();
        let scale: f64 = a.iter().map(|v| v * v).sum::<f64>().max(f64::MIN_POSITIVE);
        if off <= scale * 1e-32 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[idx(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = a[idx(p, p)];
                let aqq = a[idx(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[idx(k, p)];
                    let akq = a[idx(k, q)];
                    a[idx(k, p)] = c * akp - s * akq;
                    a[idx(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[idx(p, k)];
                    let aqk = a[idx(q, k)];
                    a[idx(p, k)] = c * apk - s * aqk;
                    a[idx(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[idx(i, i)]).collect()
}

/// Largest singular value of an exact complex matrix.
pub fn spectral_norm(m: &QMatrix) -> f64 {
    if m.rows() == 0 || m.cols() == 0 {
        return 0.0;
    }
    let h = m.conj_transpose().try_mul(m).expect("A*A is defined");
    let n = h.rows();
    let mut emb = vec![0.0; 4 * n * n];
    let w = 2 * n;
    for i in 0..n {
        for j in 0..n {
            let (re, im) = h[(i, j)].to_f64_pair();
            emb[i * w + j] = re;
            emb[(i + n) * w + (j + n)] = re;
            emb[i * w + (j + n)] = -im;
            emb[(i + n) * w + j] = im;
        }
    }
    let lambda = symmetric_eigenvalues(emb, w).into_iter().fold(0.0_f64, f64::max);
    lambda.max(0.0).sqrt()
}
