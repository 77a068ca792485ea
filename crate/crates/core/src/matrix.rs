//! Dense complex matrices and the entrywise quantities the decision
//! pipeline is built on: polar factors, row dominance classes, line
//! balance, the comparison matrix and generalized-dominance scaling.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type Complex = Complex64;

/// Reduces an angle into `[0, 2π)`.
pub fn reduce_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Argument of `z` in `[0, 2π)`, or `None` for `z = 0`.
pub fn argument(z: Complex) -> Option<f64> {
    if z.re == 0.0 && z.im == 0.0 {
        None
    } else {
        Some(reduce_angle(z.im.atan2(z.re)))
    }
}

/// Unit complex number `e^{iθ}`.
pub fn unit(theta: f64) -> Complex {
    Complex::new(theta.cos(), theta.sin())
}

/// Numerical tolerances shared by the analyzer and certificate checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative band around equality for dominance and balance tests.
    pub tol_dom: f64,
    /// Absolute tolerance, in radians, for angle-equation consistency.
    pub tol_angle: f64,
    /// Relative residual tolerance for certificates.
    pub tol_res: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tol_dom: 1e-12,
            tol_angle: 1e-9,
            tol_res: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn new(tol_dom: f64, tol_angle: f64, tol_res: f64) -> Result<Self> {
        let t = Self {
            tol_dom,
            tol_angle,
            tol_res,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("tol_dom", self.tol_dom),
            ("tol_angle", self.tol_angle),
            ("tol_res", self.tol_res),
        ] {
            if !(value > 0.0 && value < 0.1) {
                return Err(Error::InvalidTolerance { name, value });
            }
        }
        Ok(())
    }
}

/// Dense square complex matrix stored row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct ComplexMatrix {
    n: usize,
    entries: Vec<Complex>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    entries: Vec<[f64; 2]>,
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = Error;

    fn try_from(m: MatrixJson) -> Result<Self> {
        ComplexMatrix::new(
            m.n,
            m.entries.into_iter().map(|[re, im]| Complex::new(re, im)).collect(),
        )
    }
}

impl From<ComplexMatrix> for MatrixJson {
    fn from(m: ComplexMatrix) -> Self {
        MatrixJson {
            n: m.n,
            entries: m.entries.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl ComplexMatrix {
    /// Builds a matrix from `n²` row-major entries.
    pub fn new(n: usize, entries: Vec<Complex>) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch { expected: 1, actual: 0 });
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                actual: entries.len(),
            });
        }
        Ok(Self { n, entries })
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix order must be at least 1");
        Self {
            n,
            entries: vec![Complex::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from nested rows; panics on ragged or empty input.
    pub fn from_rows(rows: Vec<Vec<Complex>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must be square");
        Self::new(n, rows.into_iter().flatten().collect()).expect("non-empty square rows")
    }

    /// Real-valued convenience constructor.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| Complex::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self::new(n, entries).expect("n >= 1")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Complex] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    /// Principal submatrix on `indices`, in the given order.
    pub fn submatrix(&self, indices: &[usize]) -> Self {
        Self::from_fn(indices.len(), |a, b| self[(indices[a], indices[b])])
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn mul_vec(&self, x: &[Complex]) -> Vec<Complex> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Row vector times matrix, `xᵀA`.
    pub fn vec_mul(&self, x: &[Complex]) -> Vec<Complex> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|j| (0..self.n).map(|i| x[i] * self[(i, j)]).sum())
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self::from_fn(self.n, |i, j| (0..self.n).map(|k| self[(i, k)] * other[(k, j)]).sum())
    }

    /// `Σ_j |a_ij|` for row `i`.
    pub fn row_modulus_sum(&self, i: usize) -> f64 {
        self.row(i).iter().map(|z| z.norm()).sum()
    }

    /// `max_i Σ_j |a_ij|`, the induced ∞-norm; used as the scale for relative residuals.
    pub fn max_row_modulus_sum(&self) -> f64 {
        (0..self.n).map(|i| self.row_modulus_sum(i)).fold(0.0, f64::max)
    }

    pub fn max_col_modulus_sum(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Left multiplication by `diag(d)`.
    pub fn scale_rows(&self, d: &[Complex]) -> Self {
        assert_eq!(d.len(), self.n);
        Self::from_fn(self.n, |i, j| d[i] * self[(i, j)])
    }

    /// `AV` for a complex diagonal `V = diag(v)`.
    pub fn scale_columns_complex(&self, v: &[Complex]) -> Self {
        assert_eq!(v.len(), self.n);
        Self::from_fn(self.n, |i, j| self[(i, j)] * v[j])
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex;

    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.entries[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.entries[i * self.n + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>10.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Dense square real matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl RealMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self { n, entries }
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.as_ref().len() == n));
        Self {
            n,
            entries: rows.iter().flat_map(|r| r.as_ref().to_vec()).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, |i, j| Complex::new(self[(i, j)], 0.0))
    }
}

impl Index<(usize, usize)> for RealMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.entries[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.entries[i * self.n + j]
    }
}

/// Hadamard polar factors of a matrix: moduli and arguments.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarSplit {
    pub moduli: RealMatrix,
    /// Row-major; `Some` exactly where the entry is nonzero.
    pub args: Vec<Option<f64>>,
}

impl PolarSplit {
    pub fn arg(&self, i: usize, j: usize) -> Option<f64> {
        self.args[i * self.moduli.n() + j]
    }

    /// `moduli ∘ exp(i·args)`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.moduli.n();
        ComplexMatrix::from_fn(n, |i, j| match self.arg(i, j) {
            Some(t) => unit(t) * self.moduli[(i, j)],
            None => Complex::new(0.0, 0.0),
        })
    }
}

pub fn polar_split(a: &ComplexMatrix) -> PolarSplit {
    let n = a.n();
    PolarSplit {
        moduli: RealMatrix::from_fn(n, |i, j| a[(i, j)].norm()),
        args: a.entries().iter().map(|&z| argument(z)).collect(),
    }
}

/// Diagonal `D(A) = diag(a_11, …, a_nn)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagonal(pub Vec<Complex>);

impl Diagonal {
    pub fn to_matrix(&self) -> ComplexMatrix {
        let n = self.0.len();
        ComplexMatrix::from_fn(n, |i, j| if i == j { self.0[i] } else { Complex::new(0.0, 0.0) })
    }
}

pub fn diagonal_of(a: &ComplexMatrix) -> Diagonal {
    Diagonal((0..a.n()).map(|i| a[(i, i)]).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DominanceClass {
    Strict,
    Weak,
    Violated,
}

impl DominanceClass {
    /// Classifies `|a_ii|` against `Σ_{j≠i}|a_ij|` with a relative band.
    pub fn from_sums(diag_modulus: f64, offdiag_sum: f64, tol_dom: f64) -> Self {
        let scale = diag_modulus + offdiag_sum;
        if scale == 0.0 || (diag_modulus - offdiag_sum).abs() <= tol_dom * scale {
            DominanceClass::Weak
        } else if diag_modulus > offdiag_sum {
            DominanceClass::Strict
        } else {
            DominanceClass::Violated
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RowDominance {
    pub diag_modulus: f64,
    pub offdiag_sum: f64,
    pub class: DominanceClass,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominanceProfile {
    pub rows: Vec<RowDominance>,
}

impl DominanceProfile {
    pub fn classes(&self) -> Vec<DominanceClass> {
        self.rows.iter().map(|r| r.class).collect()
    }

    pub fn all_strict(&self) -> bool {
        self.rows.iter().all(|r| r.class == DominanceClass::Strict)
    }

    pub fn all_weak(&self) -> bool {
        self.rows.iter().all(|r| r.class == DominanceClass::Weak)
    }

    pub fn any_strict(&self) -> bool {
        self.rows.iter().any(|r| r.class == DominanceClass::Strict)
    }

    /// True when no row is violated.
    pub fn is_dominant(&self) -> bool {
        self.violated_rows().is_empty()
    }

    pub fn violated_rows(&self) -> Vec<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.class == DominanceClass::Violated)
            .map(|(i, _)| i)
            .collect()
    }
}

pub fn classify_rows(a: &ComplexMatrix, tol: &Tolerances) -> DominanceProfile {
    let rows = (0..a.n())
        .map(|i| {
            let diag_modulus = a[(i, i)].norm();
            let offdiag_sum: f64 = a
                .row(i)
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, z)| z.norm())
                .sum();
            RowDominance {
                diag_modulus,
                offdiag_sum,
                class: DominanceClass::from_sums(diag_modulus, offdiag_sum, tol.tol_dom),
            }
        })
        .collect();
    DominanceProfile { rows }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceReport {
    pub lines: Vec<bool>,
    pub all: bool,
}

pub fn balance_check(a: &ComplexMatrix, axis: Axis, tol: &Tolerances) -> BalanceReport {
    let n = a.n();
    let entry = |line: usize, k: usize| match axis {
        Axis::Row => a[(line, k)],
        Axis::Column => a[(k, line)],
    };
    let lines: Vec<bool> = (0..n)
        .map(|line| {
            let sum: Complex = (0..n).map(|k| entry(line, k)).sum();
            let mass: f64 = (0..n).map(|k| entry(line, k).norm()).sum();
            sum.norm() <= tol.tol_dom * mass
        })
        .collect();
    let all = lines.iter().all(|&b| b);
    BalanceReport { lines, all }
}

/// Comparison matrix `μ(A)`: `|a_ii|` on the diagonal, `−|a_ij|` elsewhere.
pub fn comparison_matrix(a: &ComplexMatrix) -> RealMatrix {
    RealMatrix::from_fn(a.n(), |i, j| {
        let m = a[(i, j)].norm();
        if i == j {
            m
        } else {
            -m
        }
    })
}

/// Column scaling `AV`, `V = diag(v)`, turning generalized into plain dominance.
pub fn scale_columns(a: &ComplexMatrix, v: &[f64]) -> Result<ComplexMatrix> {
    check_weights(a.n(), v)?;
    Ok(ComplexMatrix::from_fn(a.n(), |i, j| a[(i, j)] * v[j]))
}

pub(crate) fn check_weights(n: usize, v: &[f64]) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: v.len(),
        });
    }
    if let Some((index, &value)) = v.iter().enumerate().find(|(_, &x)| !(x > 0.0)) {
        return Err(Error::NonPositiveWeight { index, value });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn polar_split_pythagorean() {
        let a = ComplexMatrix::from_rows(vec![vec![c(3.0, 4.0)]]);
        let p = polar_split(&a);
        assert_eq!(p.moduli[(0, 0)], 5.0);
        assert!((p.arg(0, 0).unwrap() - 0.927_295_218).abs() < 1e-9);
    }

    #[test]
    fn polar_split_identity_and_axes() {
        let p = polar_split(&ComplexMatrix::identity(2));
        assert_eq!(p.moduli.rows(), vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert_eq!(p.args, vec![Some(0.0), None, None, Some(0.0)]);

        let a = ComplexMatrix::from_rows(vec![vec![c(-2.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 1.0), c(1.0, 0.0)]]);
        let p = polar_split(&a);
        assert_eq!(p.moduli.rows(), vec![vec![2.0, 0.0], vec![1.0, 1.0]]);
        assert_eq!(p.arg(0, 0), Some(PI));
        assert_eq!(p.arg(0, 1), None);
        assert_eq!(p.arg(1, 0), Some(PI / 2.0));
        assert_eq!(p.arg(1, 1), Some(0.0));
    }

    #[test]
    fn negative_angles_reduce_into_range() {
        assert!((argument(c(0.0, -1.0)).unwrap() - 1.5 * PI).abs() < 1e-15);
        assert_eq!(reduce_angle(-1e-300), 0.0);
        assert!(reduce_angle(TAU) < 1e-15);
    }

    #[test]
    fn diagonal_examples() {
        let a = ComplexMatrix::from_real_rows(&[[1.0, 2.0], [3.0, 4.0]]);
        assert_eq!(diagonal_of(&a).0, vec![c(1.0, 0.0), c(4.0, 0.0)]);
        let z = ComplexMatrix::from_rows(vec![vec![c(0.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 5.0)]]);
        assert_eq!(diagonal_of(&z).0, vec![c(0.0, 0.0), c(0.0, 5.0)]);
        assert_eq!(diagonal_of(&ComplexMatrix::identity(3)).0, vec![c(1.0, 0.0); 3]);
    }

    #[test]
    fn classify_examples() {
        use DominanceClass::*;
        let tol = Tolerances::default();
        let cls = |rows: &[[f64; 2]]| classify_rows(&ComplexMatrix::from_real_rows(rows), &tol).classes();
        assert_eq!(cls(&[[2.0, 1.0], [1.0, 2.0]]), vec![Strict, Strict]);
        assert_eq!(cls(&[[1.0, 1.0], [1.0, 1.0]]), vec![Weak, Weak]);
        assert_eq!(cls(&[[1.0, 2.0], [0.0, 1.0]]), vec![Violated, Strict]);
    }

    #[test]
    fn zero_rows_are_weak_and_zero_diagonal_is_violated() {
        use DominanceClass::*;
        let tol = Tolerances::default();
        let a = ComplexMatrix::from_real_rows(&[[0.0, 0.0], [1.0, 0.0]]);
        assert_eq!(classify_rows(&a, &tol).classes(), vec![Weak, Violated]);
    }

    #[test]
    fn balance_examples() {
        let tol = Tolerances::default();
        let a = ComplexMatrix::from_real_rows(&[[1.0, -1.0], [-1.0, 1.0]]);
        assert_eq!(balance_check(&a, Axis::Row, &tol).lines, vec![true, true]);
        let b = ComplexMatrix::from_real_rows(&[[1.0, 1.0], [1.0, 1.0]]);
        let r = balance_check(&b, Axis::Row, &tol);
        assert_eq!(r.lines, vec![false, false]);
        assert!(!r.all);
        let cyc = ComplexMatrix::from_real_rows(&[[1.0, -1.0, 0.0], [0.0, 1.0, -1.0], [-1.0, 0.0, 1.0]]);
        assert!(balance_check(&cyc, Axis::Column, &tol).all);
        assert!(balance_check(&ComplexMatrix::zeros(2), Axis::Row, &tol).all);
    }

    #[test]
    fn comparison_examples() {
        let a = ComplexMatrix::from_real_rows(&[[1.0, 1.0], [-1.0, 1.0]]);
        assert_eq!(comparison_matrix(&a).rows(), vec![vec![1.0, -1.0], vec![-1.0, 1.0]]);
        let b = ComplexMatrix::from_rows(vec![vec![c(3.0, 4.0), c(5.0, 0.0)], vec![c(0.0, 0.0), c(2.0, 0.0)]]);
        let mu = comparison_matrix(&b);
        assert_eq!(mu[(0, 0)], 5.0);
        assert_eq!(mu[(0, 1)], -5.0);
        assert_eq!(mu[(1, 0)], 0.0);
        assert_eq!(mu[(1, 1)], 2.0);
        assert_eq!(
            comparison_matrix(&ComplexMatrix::identity(2)).rows(),
            vec![vec![1.0, 0.0], vec![0.0, 1.0]]
        );
    }

    #[test]
    fn scale_columns_examples() {
        let a = ComplexMatrix::from_real_rows(&[[2.0, -3.0], [-4.0 / 3.0, 2.0]]);
        let av = scale_columns(&a, &[3.0, 2.0]).unwrap();
        let expect = [[6.0, -6.0], [-4.0, 4.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((av[(i, j)].re - expect[i][j]).abs() < 1e-14);
            }
        }
        let tol = Tolerances::default();
        assert!(classify_rows(&av, &tol).all_weak());

        assert_eq!(scale_columns(&a, &[1.0, 1.0]).unwrap(), a);
        let d = scale_columns(&ComplexMatrix::identity(2), &[2.0, 3.0]).unwrap();
        assert_eq!(d, ComplexMatrix::from_real_rows(&[[2.0, 0.0], [0.0, 3.0]]));
    }

    #[test]
    fn scale_columns_rejects_nonpositive() {
        let a = ComplexMatrix::identity(2);
        assert!(matches!(
            scale_columns(&a, &[1.0, 0.0]),
            Err(Error::NonPositiveWeight { index: 1, .. })
        ));
        assert!(matches!(
            scale_columns(&a, &[1.0, f64::NAN]),
            Err(Error::NonPositiveWeight { .. })
        ));
        assert!(matches!(
            scale_columns(&a, &[1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerances::default().validate().is_ok());
        assert!(Tolerances::new(0.0, 1e-9, 1e-10).is_err());
        assert!(Tolerances::new(1e-12, 0.2, 1e-10).is_err());
    }

    #[test]
    fn json_shape() {
        let a = ComplexMatrix::from_rows(vec![vec![c(1.0, 0.0), c(0.0, 2.0)], vec![c(-1.0, 0.5), c(3.0, 0.0)]]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"n":2,"entries":[[1.0,0.0],[0.0,2.0],[-1.0,0.5],[3.0,0.0]]}"#);
        let back: ComplexMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<ComplexMatrix>(r#"{"n":2,"entries":[[1,0]]}"#).is_err());
    }
}
