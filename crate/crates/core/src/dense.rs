//! Small dense complex solver used by certificate construction.
//!
//! Kept separate from the rank/determinant oracle so that certificates and
//! their verifier do not share an elimination routine.

use crate::matrix::{Complex, ComplexMatrix};

/// Solves `Mx = b` by Gaussian elimination with partial pivoting.
///
/// Returns `None` when a pivot falls below `rel_tol` times the largest row
/// modulus sum of `m`.
pub(crate) fn solve(m: &ComplexMatrix, b: &[Complex], rel_tol: f64) -> Option<Vec<Complex>> {
    let n = m.n();
    assert_eq!(b.len(), n);
    let threshold = rel_tol * m.max_row_modulus_sum();
    let mut a: Vec<Vec<Complex>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut x = b.to_vec();
    for k in 0..n {
        let p = (k..n).max_by(|&r, &s| a[r][k].norm().total_cmp(&a[s][k].norm()))?;
        if !(a[p][k].norm() > threshold) {
            return None;
        }
        a.swap(k, p);
        x.swap(k, p);
        for r in k + 1..n {
            let f = a[r][k] / a[k][k];
            if f.norm() == 0.0 {
                continue;
            }
            for c in k..n {
                let t = a[k][c];
                a[r][c] -= f * t;
            }
            let t = x[k];
            x[r] -= f * t;
        }
    }
    for k in (0..n).rev() {
        let s: Complex = (k + 1..n).map(|c| a[k][c] * x[c]).sum();
        x[k] = (x[k] - s) / a[k][k];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let m = ComplexMatrix::from_real_rows(&[[0.0, 2.0], [1.0, 1.0]]);
        let x = solve(&m, &[Complex::new(4.0, 0.0), Complex::new(3.0, 0.0)], 1e-14).unwrap();
        assert!((x[0] - Complex::new(1.0, 0.0)).norm() < 1e-14);
        assert!((x[1] - Complex::new(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn rejects_singular() {
        let m = ComplexMatrix::from_real_rows(&[[1.0, 1.0], [1.0, 1.0]]);
        assert!(solve(&m, &[Complex::new(1.0, 0.0); 2], 1e-12).is_none());
    }
}
