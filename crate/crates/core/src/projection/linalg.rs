//! Dense helpers for the tiny systems that appear in the solvers.

use crate::lp::{dot, l2_norm};
use crate::scalar::Scalar;

use super::sets::RANK_TOL;

/// Orthonormal basis of `span(vectors)` by twice-applied modified Gram–Schmidt.
/// Vectors whose residual falls below `RANK_TOL` of their length are dropped, so
/// the output is shorter than the input exactly when the input is dependent.
pub fn orthonormalize<T: Scalar>(vectors: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let len = l2_norm(v);
        if len == T::zero() {
            continue;
        }
        let mut r = v.clone();
        for _ in 0..2 {
            for q in &out {
                let c = dot(q, &r);
                for (ri, &qi) in r.iter_mut().zip(q) {
                    *ri = *ri - c * qi;
                }
            }
        }
        let rn = l2_norm(&r);
        if rn > T::lit(RANK_TOL) * len {
            out.push(r.into_iter().map(|t| t / rn).collect());
        }
    }
    out
}

/// Orthonormal basis of the orthogonal complement of `span(vectors)` in `R^n`.
pub fn complement_basis<T: Scalar>(vectors: &[Vec<T>], n: usize) -> Vec<Vec<T>> {
    let q = orthonormalize(vectors);
    let mut all = q.clone();
    for i in 0..n {
        let mut e = vec![T::zero(); n];
        e[i] = T::one();
        all.push(e);
    }
    let full = orthonormalize(&all);
    full.into_iter().skip(q.len()).collect()
}

/// Solves `A x = b` for small dense `A` by Gaussian elimination with partial
/// pivoting. Returns `None` for numerically singular systems.
pub fn solve<T: Scalar>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Option<Vec<T>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| {
            a[i][col]
                .abs()
                .partial_cmp(&a[j][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[piv][col].is_nan() || a[piv][col] == T::zero() {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            let (top, bottom) = a.split_at_mut(row);
            for (t, &v) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *t = *t - f * v;
            }
            b[row] = b[row] - f * b[col];
        }
    }
    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let s: T = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    if x.iter().all(|t| t.is_finite()) {
        Some(x)
    } else {
        None
    }
}
