//! Float spectra of anti-Hermitian and unitary matrices.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::matrix::CMat;

/// `x = V · diag(i·values) · V†` with `values` sorted descending.
pub struct SkewEigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<Complex64>,
}

pub fn eigh_skew(x: &CMat<f64>) -> SkewEigen {
    let n = x.n();
    let minus_i = Complex64::new(0.0, -1.0);
    let h = x.to_na().map(|z| z * minus_i);
    let h = (&h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    SkewEigen { values, vectors }
}

/// Imaginary parts of the eigenvalues, sorted descending.
pub fn spectrum(x: &CMat<f64>) -> Vec<f64> {
    eigh_skew(x).values
}

pub fn spectral_radius(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Groups sorted values into clusters separated by gaps larger than `tol`;
/// returns the cluster sizes.
pub fn cluster_sizes(sorted: &[f64], tol: f64) -> Vec<usize> {
    let mut sizes: Vec<usize> = Vec::new();
    for (k, v) in sorted.iter().enumerate() {
        if k > 0 && (sorted[k - 1] - v).abs() <= tol {
            *sizes.last_mut().unwrap() += 1;
        } else {
            sizes.push(1);
        }
    }
    sizes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstructs_input() {
        let x = CMat::from_fn(3, |i, j| {
            let a = Complex64::new((i + 2 * j) as f64 * 0.3, (i * j) as f64 * 0.1 + 0.2);
            let b = Complex64::new((j + 2 * i) as f64 * 0.3, (i * j) as f64 * 0.1 + 0.2);
            a - b.conj()
        });
        let e = eigh_skew(&x);
        assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        let d = DMatrix::from_fn(3, 3, |i, j| {
            if i == j {
                Complex64::new(0.0, e.values[i])
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let back = &e.vectors * d * e.vectors.adjoint();
        assert!(CMat::from_na(&back).max_diff(&x) < 1e-12);
    }

    #[test]
    fn clusters() {
        assert_eq!(
            cluster_sizes(&[2.0, 1.0, 1.0 - 1e-12, -3.0], 1e-9),
            vec![1, 2, 1]
        );
    }
}
