//! Real linear algebra on coordinate vectors: rank, nullspace, independent subsets.

use nalgebra::DMatrix;
use num_traits::{One, Zero};

use crate::scalar::{Scalar, Q};

/// Singular values at or below `REL_RANK_TOL * sigma_max` count as zero.
pub const REL_RANK_TOL: f64 = 1e-9;
/// Absolute floor so that pure round-off has rank zero.
pub const ABS_RANK_FLOOR: f64 = 1e-13;

fn to_dmatrix(rows: &[Vec<f64>], ncols: usize) -> DMatrix<f64> {
    let nrows = rows.len().max(ncols);
    let mut m = DMatrix::<f64>::zeros(nrows, ncols);
    for (i, r) in rows.iter().enumerate() {
        for (j, v) in r.iter().enumerate() {
            m[(i, j)] = *v;
        }
    }
    m
}

fn threshold(sigma_max: f64, rel: f64) -> f64 {
    (rel * sigma_max).max(ABS_RANK_FLOOR)
}

pub fn float_rank(rows: &[Vec<f64>], rel: f64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || ncols == 0 {
        return 0;
    }
    let m = to_dmatrix(rows, ncols);
    let sv = m.singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let th = threshold(smax, rel);
    sv.iter().filter(|&&s| s > th).count()
}

pub fn float_nullspace(rows: &[Vec<f64>], ncols: usize, rel: f64) -> Vec<Vec<f64>> {
    if ncols == 0 {
        return Vec::new();
    }
    if rows.is_empty() {
        return (0..ncols)
            .map(|i| (0..ncols).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
    }
    // Padding to at least ncols rows makes the SVD return a full V.
    let m = to_dmatrix(rows, ncols);
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let th = threshold(smax, rel);
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= th)
        .map(|(i, _)| v_t.row(i).iter().cloned().collect())
        .collect()
}

/// Reduced row echelon form over the rationals; returns the nonzero rows and pivot columns.
pub fn rref(rows: &[Vec<Q>]) -> (Vec<Vec<Q>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / m[r][c].clone();
        for v in m[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..ncols].iter_mut().zip(&pivot_row[c..ncols]) {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn exact_rank(rows: &[Vec<Q>]) -> usize {
    rref(rows).1.len()
}

pub fn exact_nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let (r, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Greedily keeps the vectors that raise the rank, in input order.
pub fn independent_subset<S: Scalar>(vectors: &[Vec<S>]) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<S>> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        rows.push(v.clone());
        if S::rank(&rows) > kept.len() {
            kept.push(i);
        } else {
            rows.pop();
        }
    }
    kept
}

/// Solves the least-squares problem `min |A^T c - v|` where the rows of `A` span a subspace,
/// and returns the residual norm. Float track only.
pub fn projection_residual(basis: &[Vec<f64>], v: &[f64]) -> f64 {
    if basis.is_empty() {
        return v.iter().map(|x| x * x).sum::<f64>().sqrt();
    }
    let d = v.len();
    let a = DMatrix::from_fn(d, basis.len(), |i, j| basis[j][i]);
    let b = nalgebra::DVector::from_column_slice(v);
    let svd = a.clone().svd(true, true);
    let c = svd.solve(&b, 1e-12).expect("svd solve");
    (a * c - b).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qi;

    #[test]
    fn exact_rank_and_nullspace() {
        let rows = vec![
            vec![qi(1), qi(2), qi(3)],
            vec![qi(2), qi(4), qi(6)],
            vec![qi(0), qi(1), qi(1)],
        ];
        assert_eq!(exact_rank(&rows), 2);
        let ns = exact_nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            let dot: Q = r.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn float_rank_ignores_roundoff() {
        let rows = vec![vec![1.0, 0.0], vec![1.0, 1e-14]];
        assert_eq!(float_rank(&rows, REL_RANK_TOL), 1);
        assert_eq!(float_rank(&[vec![1e-17, 0.0]], REL_RANK_TOL), 0);
        let ns = float_nullspace(&[vec![1.0, 1.0, 0.0]], 3, REL_RANK_TOL);
        assert_eq!(ns.len(), 2);
    }

    #[test]
    fn greedy_subset_keeps_first_independent() {
        let v = vec![vec![1.0, 0.0], vec![2.0, 0.0], vec![0.0, 3.0]];
        assert_eq!(independent_subset(&v), vec![0, 2]);
    }
}
