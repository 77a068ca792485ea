//! Certificates for singular irreducible blocks.
//!
//! A consistent angle assignment yields a unit-modulus right null vector `γ`.
//! From it and the positive left null vector `p` of the comparison matrix
//! the following are built and checked numerically:
//!
//! * the unitary similarity `Υ_C⁻¹AΥ_C = D(A_C)μ(A)` with `Υ_C = diag(γ)`,
//! * the Markov form `Υ_C⁻¹AΥ_C = D(A)(I − S)` with `S` row-stochastic,
//! * the left null vector `ρ_i = p_i e^{−iθ(a_ii)} / γ_i`,
//! * the real doubly balanced matrix `B = diag(ρ)·A·diag(γ)`.
//!
//! All residuals are ∞-norms relative to the largest row modulus sum.

use serde::{Deserialize, Serialize};

use crate::angle::AngleAssignment;
use crate::dense;
use crate::digraph::FrobeniusForm;
use crate::error::{Error, Result};
use crate::matrix::{argument, comparison_matrix, unit, Complex, ComplexMatrix, RealMatrix, Tolerances};

const SOLVE_PIVOT_TOL: f64 = 1e-13;

fn zero() -> Complex {
    Complex::new(0.0, 0.0)
}

fn inf_norm(v: &[Complex]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Max row abs-sum of `lhs − rhs`.
fn diff_inf_norm(lhs: &ComplexMatrix, rhs: &ComplexMatrix) -> f64 {
    (0..lhs.n())
        .map(|i| {
            lhs.row(i)
                .iter()
                .zip(rhs.row(i))
                .map(|(a, b)| (a - b).norm())
                .sum::<f64>()
        })
        .fold(0.0, f64::max)
}

fn relative(value: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        value / scale
    } else {
        value
    }
}

fn ensure(what: &'static str, residual: f64, tolerance: f64) -> Result<()> {
    if residual <= tolerance {
        Ok(())
    } else {
        Err(Error::ResidualTooLarge {
            what,
            residual,
            tolerance,
        })
    }
}

/// `e^{iθ(a_ii)}`, taking `1` for a zero diagonal entry.
fn diag_phase(a: &ComplexMatrix, i: usize) -> Complex {
    argument(a[(i, i)]).map_or(Complex::new(1.0, 0.0), unit)
}

/// `Υ_C⁻¹AΥ_C`.
fn similarity(a: &ComplexMatrix, gamma: &[Complex]) -> ComplexMatrix {
    ComplexMatrix::from_fn(a.n(), |i, j| a[(i, j)] * gamma[j] / gamma[i])
}

#[derive(Debug, Clone, PartialEq)]
pub struct RightNullVector {
    pub gamma: Vec<Complex>,
    pub residual: f64,
}

pub fn right_null_vector(block: &ComplexMatrix, assign: &AngleAssignment, tol: &Tolerances) -> Result<RightNullVector> {
    if assign.len() != block.n() {
        return Err(Error::DimensionMismatch {
            expected: block.n(),
            actual: assign.len(),
        });
    }
    let gamma = assign.gammas();
    let residual = relative(inf_norm(&block.mul_vec(&gamma)), block.max_row_modulus_sum());
    ensure("right null vector", residual, tol.tol_res)?;
    Ok(RightNullVector { gamma, residual })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LeftNullVector {
    pub rho: Vec<Complex>,
    /// Positive left null vector of `μ(A)`, normalized so `p_0 = 1`.
    pub p: Vec<f64>,
    pub residual: f64,
}

/// Positive `p` with `pᵀμ = 0` and `p_0 = 1`.
pub fn comparison_left_null(mu: &RealMatrix) -> Result<Vec<f64>> {
    let n = mu.n();
    if n == 1 {
        return Ok(vec![1.0]);
    }
    // Columns j ≥ 1 of pᵀμ = 0 with p_0 moved to the right-hand side.
    let m = ComplexMatrix::from_fn(n - 1, |j, i| Complex::new(mu[(i + 1, j + 1)], 0.0));
    let rhs: Vec<Complex> = (1..n).map(|j| Complex::new(-mu[(0, j)], 0.0)).collect();
    let rest = dense::solve(&m, &rhs, SOLVE_PIVOT_TOL)
        .ok_or_else(|| Error::PreconditionViolated("comparison matrix has rank below n − 1".to_string()))?;
    let p: Vec<f64> = std::iter::once(1.0).chain(rest.iter().map(|z| z.re)).collect();
    if let Some((index, &value)) = p.iter().enumerate().find(|(_, &x)| !(x > 0.0)) {
        return Err(Error::NonPositiveWeight { index, value });
    }
    Ok(p)
}

pub fn left_null_vector(block: &ComplexMatrix, gamma: &[Complex], tol: &Tolerances) -> Result<LeftNullVector> {
    let n = block.n();
    if gamma.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: gamma.len(),
        });
    }
    let p = comparison_left_null(&comparison_matrix(block))?;
    let rho: Vec<Complex> = (0..n).map(|i| diag_phase(block, i).conj() * p[i] / gamma[i]).collect();
    let residual = relative(
        inf_norm(&block.vec_mul(&rho)),
        inf_norm(&rho) * block.max_row_modulus_sum(),
    );
    ensure("left null vector", residual, tol.tol_res)?;
    Ok(LeftNullVector { rho, p, residual })
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryWitness {
    pub gamma: Vec<Complex>,
    pub mu: RealMatrix,
    /// `‖Υ_C⁻¹AΥ_C − D(A_C)μ(A)‖∞` relative.
    pub residual: f64,
    /// `‖Υ_C⁻¹D⁻¹(A)AΥ_C − μ(D⁻¹(A)A)‖∞` relative; absent when a diagonal entry is zero.
    pub normalized_residual: Option<f64>,
}

pub fn unitary_witness(block: &ComplexMatrix, gamma: &[Complex], tol: &Tolerances) -> Result<UnitaryWitness> {
    let n = block.n();
    let mu = comparison_matrix(block);
    let lhs = similarity(block, gamma);
    let rhs = ComplexMatrix::from_fn(n, |i, j| diag_phase(block, i) * mu[(i, j)]);
    let residual = relative(diff_inf_norm(&lhs, &rhs), block.max_row_modulus_sum());
    ensure("unitary witness", residual, tol.tol_res)?;

    let normalized_residual = if (0..n).all(|i| block[(i, i)].norm() > 0.0) {
        let inv_diag: Vec<Complex> = (0..n).map(|i| block[(i, i)].inv()).collect();
        let scaled = block.scale_rows(&inv_diag);
        let lhs = similarity(&scaled, gamma);
        let rhs = comparison_matrix(&scaled).to_complex();
        let r = relative(diff_inf_norm(&lhs, &rhs), scaled.max_row_modulus_sum());
        ensure("normalized unitary witness", r, tol.tol_res)?;
        Some(r)
    } else {
        None
    };
    Ok(UnitaryWitness {
        gamma: gamma.to_vec(),
        mu,
        residual,
        normalized_residual,
    })
}

/// `Υ_C⁻¹AΥ_C = D(A)(I − S)` with `S` a Markov matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkovDecomposition {
    #[serde(with = "crate::serde_complex")]
    pub diag: Vec<Complex>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<f64>>,
    #[serde(default)]
    pub residual: f64,
}

impl MarkovDecomposition {
    pub fn max_row_sum_deviation(&self) -> f64 {
        self.s
            .iter()
            .map(|r| (r.iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    pub fn min_entry(&self) -> f64 {
        self.s.iter().flatten().copied().fold(f64::INFINITY, f64::min)
    }
}

pub fn markov_decomposition(block: &ComplexMatrix, gamma: &[Complex], tol: &Tolerances) -> Result<MarkovDecomposition> {
    let n = block.n();
    if let Some(i) = (0..n).find(|&i| block[(i, i)].norm() == 0.0) {
        return Err(Error::ZeroDiagonal(i));
    }
    let diag: Vec<Complex> = (0..n).map(|i| block[(i, i)]).collect();
    let s: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        0.0
                    } else {
                        block[(i, j)].norm() / diag[i].norm()
                    }
                })
                .collect()
        })
        .collect();
    let lhs = similarity(block, gamma);
    let rhs = ComplexMatrix::from_fn(n, |i, j| {
        let i_minus_s = if i == j { 1.0 } else { -s[i][j] };
        diag[i] * i_minus_s
    });
    let residual = relative(diff_inf_norm(&lhs, &rhs), block.max_row_modulus_sum());
    let m = MarkovDecomposition { diag, s, residual };
    ensure("markov decomposition", residual, tol.tol_res)?;
    ensure("markov row sums", m.max_row_sum_deviation(), tol.tol_res)?;
    ensure("markov nonnegativity", (-m.min_entry()).max(0.0), tol.tol_res)?;
    Ok(m)
}

/// `B = diag(ρ)·A·diag(γ)` with its realness and balance diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct BMatrix {
    pub b: RealMatrix,
    pub imag_residual: f64,
    pub row_residual: f64,
    pub col_residual: f64,
}

pub fn b_matrix(block: &ComplexMatrix, rho: &[Complex], gamma: &[Complex], tol: &Tolerances) -> Result<BMatrix> {
    let n = block.n();
    let full = ComplexMatrix::from_fn(n, |i, j| rho[i] * block[(i, j)] * gamma[j]);
    let scale = inf_norm(rho) * block.max_row_modulus_sum();
    let imag_residual = relative(full.entries().iter().map(|z| z.im.abs()).fold(0.0, f64::max), scale);
    let b = RealMatrix::from_fn(n, |i, j| full[(i, j)].re);
    let row_residual = relative(
        (0..n).map(|i| b.row(i).iter().sum::<f64>().abs()).fold(0.0, f64::max),
        scale,
    );
    let col_residual = relative(
        (0..n)
            .map(|j| (0..n).map(|i| b[(i, j)]).sum::<f64>().abs())
            .fold(0.0, f64::max),
        scale,
    );
    ensure("B imaginary part", imag_residual, tol.tol_res)?;
    ensure("B row balance", row_residual, tol.tol_res)?;
    ensure("B column balance", col_residual, tol.tol_res)?;
    for i in 0..n {
        if block[(i, i)].norm() > 0.0 && !(b[(i, i)] > 0.0) {
            return Err(Error::ResidualTooLarge {
                what: "B diagonal sign",
                residual: b[(i, i)],
                tolerance: 0.0,
            });
        }
        for j in (0..n).filter(|&j| j != i) {
            ensure("B off-diagonal sign", relative(b[(i, j)].max(0.0), scale), tol.tol_res)?;
        }
    }
    Ok(BMatrix {
        b,
        imag_residual,
        row_residual,
        col_residual,
    })
}

/// Full certificate for one singular block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularCertificate {
    pub block: usize,
    #[serde(with = "crate::serde_complex")]
    pub gamma: Vec<Complex>,
    #[serde(with = "crate::serde_complex")]
    pub rho: Vec<Complex>,
    pub right_residual: f64,
    pub left_residual: f64,
    pub markov: Option<MarkovDecomposition>,
    pub witness_residual: f64,
    #[serde(default)]
    pub normalized_witness_residual: Option<f64>,
    #[serde(default)]
    pub b_residual: f64,
    /// Null vector of the whole matrix, in original indexing.
    #[serde(default, with = "crate::serde_complex::option")]
    pub null_vector: Option<Vec<Complex>>,
}

/// Builds and checks every certificate for a singular irreducible block.
pub fn certify_block(
    block_id: usize,
    block: &ComplexMatrix,
    assign: &AngleAssignment,
    tol: &Tolerances,
) -> Result<SingularCertificate> {
    let right = right_null_vector(block, assign, tol)?;
    let left = left_null_vector(block, &right.gamma, tol)?;
    let witness = unitary_witness(block, &right.gamma, tol)?;
    let markov = if (0..block.n()).all(|i| block[(i, i)].norm() > 0.0) {
        Some(markov_decomposition(block, &right.gamma, tol)?)
    } else {
        None
    };
    let b = b_matrix(block, &left.rho, &right.gamma, tol)?;
    Ok(SingularCertificate {
        block: block_id,
        gamma: right.gamma,
        rho: left.rho,
        right_residual: right.residual,
        left_residual: left.residual,
        markov,
        witness_residual: witness.residual,
        normalized_witness_residual: witness.normalized_residual,
        b_residual: b.imag_residual.max(b.row_residual).max(b.col_residual),
        null_vector: None,
    })
}

/// Extends a null vector of an independent singular block to the whole matrix.
///
/// The vector is `gamma_block` on the block, zero on every other independent
/// block, and dependent blocks are filled in by forward substitution through
/// the block lower triangular structure.
pub fn extend_null_vector(
    a: &ComplexMatrix,
    form: &FrobeniusForm,
    block_id: usize,
    gamma_block: &[Complex],
    tol: &Tolerances,
) -> Result<Vec<Complex>> {
    if form.n() != a.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            actual: form.n(),
        });
    }
    if !form.independent.get(block_id).copied().unwrap_or(false) {
        return Err(Error::PreconditionViolated(format!(
            "block {block_id} is not an independent block"
        )));
    }
    let members = &form.blocks[block_id];
    if members.len() != gamma_block.len() {
        return Err(Error::DimensionMismatch {
            expected: members.len(),
            actual: gamma_block.len(),
        });
    }
    let mut x = vec![zero(); a.n()];
    for (&v, &g) in members.iter().zip(gamma_block) {
        x[v] = g;
    }
    let block_of = form.block_of();
    for p in form.independent_count..form.blocks.len() {
        let rows = &form.blocks[p];
        let rhs: Vec<Complex> = rows
            .iter()
            .map(|&i| {
                -(0..a.n())
                    .filter(|&j| block_of[j] != p)
                    .map(|j| a[(i, j)] * x[j])
                    .sum::<Complex>()
            })
            .collect();
        let y = dense::solve(&a.submatrix(rows), &rhs, SOLVE_PIVOT_TOL).ok_or(Error::SingularDependentBlock(p))?;
        for (&v, yv) in rows.iter().zip(y) {
            x[v] = yv;
        }
    }
    let residual = relative(inf_norm(&a.mul_vec(&x)), inf_norm(&x) * a.max_row_modulus_sum());
    ensure("extended null vector", residual, tol.tol_res)?;
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::{solve_angle_system, AngleOutcome};
    use crate::digraph::frobenius_normal_form;
    use std::f64::consts::PI;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    fn assignment(block: &ComplexMatrix) -> AngleAssignment {
        match solve_angle_system(block, &tol(), 0).unwrap() {
            AngleOutcome::Consistent(a) => a,
            AngleOutcome::Inconsistent(r) => panic!("inconsistent: {r:?}"),
        }
    }

    fn close(a: &[Complex], b: &[Complex], eps: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).norm() <= eps)
    }

    fn ones() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[[1.0, 1.0], [1.0, 1.0]])
    }

    fn cycle3() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[[1.0, -1.0, 0.0], [0.0, 1.0, -1.0], [-1.0, 0.0, 1.0]])
    }

    #[test]
    fn right_null_examples() {
        let r = right_null_vector(&ones(), &assignment(&ones()), &tol()).unwrap();
        assert!(close(&r.gamma, &[c(1.0), c(-1.0)], 1e-15));
        assert!(r.residual < 1e-15);

        let r = right_null_vector(&cycle3(), &assignment(&cycle3()), &tol()).unwrap();
        assert!(close(&r.gamma, &[c(1.0); 3], 1e-15));

        let a = ComplexMatrix::from_rows(vec![vec![c(1.0), unit(PI / 3.0)], vec![unit(-PI / 3.0), c(1.0)]]);
        let r = right_null_vector(&a, &assignment(&a), &tol()).unwrap();
        assert!(close(&r.gamma, &[c(1.0), unit(2.0 * PI / 3.0)], 1e-12));
        assert!(inf_norm(&a.mul_vec(&r.gamma)) < 1e-14);
    }

    #[test]
    fn right_null_rejects_bad_assignment() {
        let bad = AngleAssignment {
            thetas: vec![0.0, 0.0],
            anchor: 0,
            max_residual: 0.0,
        };
        assert!(matches!(
            right_null_vector(&ones(), &bad, &tol()),
            Err(Error::ResidualTooLarge { .. })
        ));
    }

    #[test]
    fn left_null_examples() {
        let l = left_null_vector(&ones(), &[c(1.0), c(-1.0)], &tol()).unwrap();
        assert!(close(&l.rho, &[c(1.0), c(-1.0)], 1e-15));
        let l = left_null_vector(&cycle3(), &[c(1.0); 3], &tol()).unwrap();
        assert!(close(&l.rho, &[c(1.0); 3], 1e-14));
    }

    #[test]
    fn weighted_left_null_matches_transpose_null_space() {
        // μ = [[2,−2,0],[−1,2,−1],[−1,0,1]]; solving μᵀp = 0 by hand:
        // col 2: −2p0 + 2p1 = 0, col 3: −p1 + p2 = 0  ⇒  p = (1, 1, 1)·t,
        // col 1: 2 − 1 − 1 = 0 ✓.
        let a = ComplexMatrix::from_real_rows(&[[2.0, -2.0, 0.0], [-1.0, 2.0, -1.0], [-1.0, 0.0, 1.0]]);
        let p = comparison_left_null(&comparison_matrix(&a)).unwrap();
        for (x, y) in p.iter().zip([1.0, 1.0, 1.0]) {
            assert!((x - y).abs() < 1e-14);
        }
        // nonsymmetric weights: μ = [[1,−1,0],[−2,3,−1],[−1,−1,2]]
        // μᵀp = 0: col2: −p0 + 3p1 − p2 = 0, col3: −p1 + 2p2 = 0 ⇒ p1 = 2p2, p0 = 5p2
        let b = ComplexMatrix::from_real_rows(&[[1.0, -1.0, 0.0], [-2.0, 3.0, -1.0], [-1.0, -1.0, 2.0]]);
        let p = comparison_left_null(&comparison_matrix(&b)).unwrap();
        for (x, y) in p.iter().zip([1.0, 0.4, 0.2]) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn witness_examples() {
        let w = unitary_witness(&ones(), &[c(1.0), c(-1.0)], &tol()).unwrap();
        assert_eq!(w.mu.rows(), vec![vec![1.0, -1.0], vec![-1.0, 1.0]]);
        assert!(w.residual < 1e-15);
        let lhs = similarity(&ones(), &[c(1.0), c(-1.0)]);
        assert_eq!(lhs, ComplexMatrix::from_real_rows(&[[1.0, -1.0], [-1.0, 1.0]]));

        let w = unitary_witness(&cycle3(), &[c(1.0); 3], &tol()).unwrap();
        assert_eq!(w.residual, 0.0);
        assert_eq!(similarity(&cycle3(), &[c(1.0); 3]), cycle3());
    }

    #[test]
    fn markov_examples() {
        let m = markov_decomposition(&cycle3(), &[c(1.0); 3], &tol()).unwrap();
        assert_eq!(m.diag, vec![c(1.0); 3]);
        assert_eq!(m.s, vec![vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0], vec![1.0, 0.0, 0.0]]);

        let m = markov_decomposition(&ones(), &[c(1.0), c(-1.0)], &tol()).unwrap();
        assert_eq!(m.s, vec![vec![0.0, 1.0], vec![1.0, 0.0]]);

        let a = ComplexMatrix::from_real_rows(&[[2.0, -1.0, -1.0], [-1.0, 2.0, -1.0], [-1.0, -1.0, 2.0]]);
        let m = markov_decomposition(&a, &[c(1.0); 3], &tol()).unwrap();
        assert_eq!(m.s, vec![vec![0.0, 0.5, 0.5], vec![0.5, 0.0, 0.5], vec![0.5, 0.5, 0.0]]);
        assert!(matches!(
            markov_decomposition(&ComplexMatrix::zeros(1), &[c(1.0)], &tol()),
            Err(Error::ZeroDiagonal(0))
        ));
    }

    #[test]
    fn b_matrix_examples() {
        let b = b_matrix(&ones(), &[c(1.0), c(-1.0)], &[c(1.0), c(-1.0)], &tol()).unwrap();
        assert_eq!(b.b.rows(), vec![vec![1.0, -1.0], vec![-1.0, 1.0]]);
        let b = b_matrix(&cycle3(), &[c(1.0); 3], &[c(1.0); 3], &tol()).unwrap();
        assert_eq!(b.b.to_complex(), cycle3());
        assert_eq!(b.row_residual, 0.0);
        assert_eq!(b.col_residual, 0.0);
        assert!(b_matrix(&ones(), &[c(1.0); 2], &[c(1.0), c(-1.0)], &tol()).is_err());
    }

    #[test]
    fn extend_examples() {
        let a = ComplexMatrix::from_real_rows(&[[1.0, -1.0, 0.0], [-1.0, 1.0, 0.0], [0.0, -1.0, 2.0]]);
        let f = frobenius_normal_form(&a);
        let x = extend_null_vector(&a, &f, 0, &[c(1.0), c(1.0)], &tol()).unwrap();
        assert!(close(&x, &[c(1.0), c(1.0), c(0.5)], 1e-15));
        assert!(matches!(
            extend_null_vector(&a, &f, 1, &[c(1.0)], &tol()),
            Err(Error::PreconditionViolated(_))
        ));

        let bd = ComplexMatrix::from_real_rows(&[
            [1.0, 1.0, 0.0, 0.0],
            [1.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 2.0, 1.0],
            [0.0, 0.0, 1.0, 2.0],
        ]);
        let f = frobenius_normal_form(&bd);
        let x = extend_null_vector(&bd, &f, 0, &[c(1.0), c(-1.0)], &tol()).unwrap();
        assert_eq!(x, vec![c(1.0), c(-1.0), c(0.0), c(0.0)]);
    }

    #[test]
    fn certificate_json_shape() {
        let cert = certify_block(0, &ones(), &assignment(&ones()), &tol()).unwrap();
        let v = serde_json::to_value(&cert).unwrap();
        for key in [
            "block",
            "gamma",
            "rho",
            "right_residual",
            "left_residual",
            "markov",
            "witness_residual",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert!(v["markov"]["S"].is_array());
        assert_eq!(v["gamma"][1][0].as_f64().unwrap(), -1.0);
        let back: SingularCertificate = serde_json::from_value(v).unwrap();
        assert_eq!(back, cert);
    }
}
