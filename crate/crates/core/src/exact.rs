//! Exact rational arithmetic for real matrices.
//!
//! Real matrices make the singularity question decidable without any
//! tolerance: dominance, balance and the sign propagation are all carried
//! out on `BigRational` entries.

use std::ops::Index;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::{Complex, ComplexMatrix, DominanceClass, DominanceProfile, RowDominance};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(n: usize, entries: Vec<BigRational>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n.max(1) * n.max(1),
                actual: entries.len(),
            });
        }
        Ok(Self { n, entries })
    }

    /// Integer-ratio constructor: each entry is `(numerator, denominator)`.
    pub fn from_ratios<R: AsRef<[(i64, i64)]>>(rows: &[R]) -> Self {
        let n = rows.len();
        let entries = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.as_ref().len(), n, "rows must be square");
                r.as_ref()
                    .iter()
                    .map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
                    .collect::<Vec<_>>()
            })
            .collect();
        Self::new(n, entries).expect("non-empty square rows")
    }

    pub fn from_integers<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let ratios: Vec<Vec<(i64, i64)>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&p| (p, 1)).collect())
            .collect();
        Self::from_ratios(&ratios)
    }

    /// Exact conversion of a real floating matrix; every finite `f64` is a dyadic rational.
    pub fn from_complex(a: &ComplexMatrix) -> Result<Self> {
        if !a.is_real() {
            return Err(Error::NotReal);
        }
        let entries = a
            .entries()
            .iter()
            .map(|z| {
                BigRational::from_float(z.re)
                    .ok_or_else(|| Error::PreconditionViolated(format!("non-finite entry {}", z.re)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(a.n(), entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_nonzero(&self, i: usize, j: usize) -> bool {
        !self[(i, j)].is_zero()
    }

    pub fn submatrix(&self, indices: &[usize]) -> Self {
        let m = indices.len();
        let mut entries = Vec::with_capacity(m * m);
        for &i in indices {
            for &j in indices {
                entries.push(self[(i, j)].clone());
            }
        }
        Self { n: m, entries }
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, |i, j| {
            Complex::new(self[(i, j)].to_f64().unwrap_or(f64::NAN), 0.0)
        })
    }

    fn offdiag_abs_sum(&self, i: usize) -> BigRational {
        (0..self.n)
            .filter(|&j| j != i)
            .fold(BigRational::zero(), |acc, j| acc + self[(i, j)].abs())
    }

    /// Exact row classification; the reported sums are rounded for display only.
    pub fn classify_rows(&self) -> DominanceProfile {
        let rows = (0..self.n)
            .map(|i| {
                let diag = self[(i, i)].abs();
                let off = self.offdiag_abs_sum(i);
                let class = match diag.cmp(&off) {
                    std::cmp::Ordering::Greater => DominanceClass::Strict,
                    std::cmp::Ordering::Equal => DominanceClass::Weak,
                    std::cmp::Ordering::Less => DominanceClass::Violated,
                };
                RowDominance {
                    diag_modulus: diag.to_f64().unwrap_or(f64::NAN),
                    offdiag_sum: off.to_f64().unwrap_or(f64::NAN),
                    class,
                }
            })
            .collect();
        DominanceProfile { rows }
    }

    /// Exact row balance: `Σ_j a_ij = 0` per row.
    pub fn row_balanced(&self) -> Vec<bool> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .fold(BigRational::zero(), |acc, j| acc + &self[(i, j)])
                    .is_zero()
            })
            .collect()
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;

    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.entries[i * self.n + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_classification_has_no_band() {
        // 1/3 + 2/3 = 1 exactly; the float version carries rounding error.
        let a = RationalMatrix::from_ratios(&[
            vec![(1, 1), (-1, 3), (-2, 3)],
            vec![(0, 1), (1, 1), (-1, 1)],
            vec![(-1, 1), (0, 1), (1, 1)],
        ]);
        let p = a.classify_rows();
        assert!(p.all_weak());
        assert_eq!(a.row_balanced(), vec![true, true, true]);

        let b = RationalMatrix::from_ratios(&[vec![(1, 1), (-1, 1)], vec![(-1, 1), (1000001, 1000000)]]);
        assert_eq!(
            b.classify_rows().classes(),
            vec![DominanceClass::Weak, DominanceClass::Strict]
        );
    }

    #[test]
    fn float_conversion_is_exact() {
        let a = ComplexMatrix::from_real_rows(&[[0.5, -0.25], [0.1, 3.0]]);
        let r = RationalMatrix::from_complex(&a).unwrap();
        assert_eq!(r[(0, 1)], BigRational::new((-1).into(), 4.into()));
        assert_eq!(r.to_complex(), a);
        let z = ComplexMatrix::from_rows(vec![vec![Complex::new(1.0, 1.0)]]);
        assert!(matches!(RationalMatrix::from_complex(&z), Err(Error::NotReal)));
    }
}
