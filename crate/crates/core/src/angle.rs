//! The angle equation system of an irreducible, weakly dominant block.
//!
//! For each nonzero off-diagonal entry `a_ij` the unknown vertex angles must
//! satisfy
//!
//! ```text
//! θ(γ_j) ≡ π + θ(a_ii) − θ(a_ij) + θ(γ_i)   (mod 2π)
//! ```
//!
//! The block is singular exactly when the system is consistent. Solutions
//! are only determined up to a global rotation, so one vertex (the anchor)
//! is pinned to zero and the rest are filled in by breadth-first propagation
//! along edges. Every edge, tree or not, is then re-checked; cycles are where
//! an inconsistent system shows itself.

use std::collections::VecDeque;
use std::f64::consts::{PI, TAU};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::digraph::{associated_digraph, Digraph};
use crate::error::{Error, Result};
use crate::exact::RationalMatrix;
use crate::matrix::{argument, classify_rows, reduce_angle, unit, Complex, ComplexMatrix, Tolerances};

/// Wraparound distance between two angles, in `[0, π]`.
pub fn angle_distance(x: f64, y: f64) -> f64 {
    let m = (x - y).abs().rem_euclid(TAU);
    m.min(TAU - m).max(0.0)
}

/// Vertex angles `θ(γ_i) ∈ [0, 2π)` solving the angle system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleAssignment {
    pub thetas: Vec<f64>,
    pub anchor: usize,
    /// Largest edge residual observed when the assignment was checked.
    pub max_residual: f64,
}

impl AngleAssignment {
    /// `γ_i = e^{iθ_i}`.
    pub fn gammas(&self) -> Vec<Complex> {
        self.thetas.iter().map(|&t| unit(t)).collect()
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeViolation {
    pub i: usize,
    pub j: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub max_residual: f64,
    pub violations: Vec<EdgeViolation>,
    /// Inconsistent, but every residual lies within ten times the tolerance.
    #[serde(default)]
    pub marginal: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AngleOutcome {
    Consistent(AngleAssignment),
    Inconsistent(ConsistencyReport),
}

impl AngleOutcome {
    pub fn is_consistent(&self) -> bool {
        matches!(self, AngleOutcome::Consistent(_))
    }
}

/// Per-edge angle data of a block: `(i, j, π + θ(a_ii) − θ(a_ij))`.
fn edge_offsets(block: &ComplexMatrix, g: &Digraph) -> Result<Vec<(usize, usize, f64)>> {
    g.edges()
        .map(|(i, j)| {
            let diag = argument(block[(i, i)])
                .ok_or_else(|| Error::PreconditionViolated(format!("row {i} has a zero diagonal entry")))?;
            let off = argument(block[(i, j)]).expect("edge entries are nonzero");
            Ok((i, j, PI + diag - off))
        })
        .collect()
}

/// Re-checks every edge equation for the given vertex angles.
pub fn check_assignment(block: &ComplexMatrix, thetas: &[f64], tol: &Tolerances) -> Result<ConsistencyReport> {
    let g = associated_digraph(block);
    let offsets = edge_offsets(block, &g)?;
    Ok(consistency_of(&offsets, thetas, tol))
}

fn consistency_of(offsets: &[(usize, usize, f64)], thetas: &[f64], tol: &Tolerances) -> ConsistencyReport {
    let mut max_residual = 0.0f64;
    let mut violations = Vec::new();
    for &(i, j, offset) in offsets {
        let residual = angle_distance(thetas[j], offset + thetas[i]);
        max_residual = max_residual.max(residual);
        if residual > tol.tol_angle {
            violations.push(EdgeViolation { i, j, residual });
        }
    }
    let marginal = !violations.is_empty() && max_residual <= 10.0 * tol.tol_angle;
    ConsistencyReport {
        max_residual,
        violations,
        marginal,
    }
}

fn check_block_preconditions(n: usize, anchor: usize, g: &Digraph) -> Result<()> {
    if anchor >= n {
        return Err(Error::PreconditionViolated(format!(
            "anchor {anchor} out of range for block of order {n}"
        )));
    }
    if !g.is_strongly_connected() {
        return Err(Error::PreconditionViolated("block is not irreducible".to_string()));
    }
    Ok(())
}

/// Solves the angle system by propagation from `anchor` and checks it.
pub fn solve_angle_system(block: &ComplexMatrix, tol: &Tolerances, anchor: usize) -> Result<AngleOutcome> {
    let n = block.n();
    let g = associated_digraph(block);
    check_block_preconditions(n, anchor, &g)?;
    let profile = classify_rows(block, tol);
    if let Some(i) = profile
        .rows
        .iter()
        .position(|r| r.class != crate::matrix::DominanceClass::Weak)
    {
        return Err(Error::PreconditionViolated(format!(
            "row {i} is {:?}, angle system needs every row weak",
            profile.rows[i].class
        )));
    }
    let offsets = edge_offsets(block, &g)?;
    let mut row_start = vec![0usize; n + 1];
    for &(i, _, _) in &offsets {
        row_start[i + 1] += 1;
    }
    for i in 0..n {
        row_start[i + 1] += row_start[i];
    }

    let mut thetas = vec![f64::NAN; n];
    thetas[anchor] = 0.0;
    let mut queue = VecDeque::from([anchor]);
    while let Some(i) = queue.pop_front() {
        for &(_, j, offset) in &offsets[row_start[i]..row_start[i + 1]] {
            if thetas[j].is_nan() {
                thetas[j] = reduce_angle(offset + thetas[i]);
                queue.push_back(j);
            }
        }
    }
    debug_assert!(thetas.iter().all(|t| !t.is_nan()));

    let report = consistency_of(&offsets, &thetas, tol);
    if report.violations.is_empty() {
        Ok(AngleOutcome::Consistent(AngleAssignment {
            thetas,
            anchor,
            max_residual: report.max_residual,
        }))
    } else {
        Ok(AngleOutcome::Inconsistent(report))
    }
}

/// Rotates every angle by `beta_angle`; edge equations are invariant under this.
pub fn normalize_assignment(assign: &AngleAssignment, beta_angle: f64) -> AngleAssignment {
    AngleAssignment {
        thetas: assign.thetas.iter().map(|&t| reduce_angle(t + beta_angle)).collect(),
        anchor: assign.anchor,
        max_residual: assign.max_residual,
    }
}

/// `±1` per vertex; `+1 ↔ θ = 0`, `−1 ↔ θ = π`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealSignVector {
    pub signs: Vec<i8>,
}

impl RealSignVector {
    pub fn thetas(&self) -> Vec<f64> {
        self.signs.iter().map(|&s| if s > 0 { 0.0 } else { PI }).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignOutcome {
    Consistent(RealSignVector),
    /// Edges `(i, j)` whose sign equation fails.
    Inconsistent(Vec<(usize, usize)>),
}

impl SignOutcome {
    pub fn is_consistent(&self) -> bool {
        matches!(self, SignOutcome::Consistent(_))
    }
}

fn sign_of(x: &num_rational::BigRational) -> i8 {
    if x.is_negative() {
        -1
    } else {
        1
    }
}

/// Exact real-angle solver: `sign(γ_j) = −sign(a_ii)·sign(a_ij)·sign(γ_i)`.
pub fn solve_real_signs(block: &RationalMatrix, anchor: usize) -> Result<SignOutcome> {
    let n = block.n();
    let g = Digraph::from_pattern(n, |i, j| block.is_nonzero(i, j));
    check_block_preconditions(n, anchor, &g)?;
    let profile = block.classify_rows();
    if let Some(i) = profile
        .rows
        .iter()
        .position(|r| r.class != crate::matrix::DominanceClass::Weak)
    {
        return Err(Error::PreconditionViolated(format!(
            "row {i} is {:?}, sign system needs every row exactly weak",
            profile.rows[i].class
        )));
    }
    let rule = |i: usize, j: usize, si: i8| -> Result<i8> {
        if block[(i, i)].is_zero() {
            return Err(Error::PreconditionViolated(format!(
                "row {i} has a zero diagonal entry"
            )));
        }
        Ok(-sign_of(&block[(i, i)]) * sign_of(&block[(i, j)]) * si)
    };

    let mut signs = vec![0i8; n];
    signs[anchor] = 1;
    let mut queue = VecDeque::from([anchor]);
    while let Some(i) = queue.pop_front() {
        for &j in g.successors(i) {
            if signs[j] == 0 {
                signs[j] = rule(i, j, signs[i])?;
                queue.push_back(j);
            }
        }
    }
    let mut violations = Vec::new();
    for (i, j) in g.edges() {
        if rule(i, j, signs[i])? != signs[j] {
            violations.push((i, j));
        }
    }
    if violations.is_empty() {
        Ok(SignOutcome::Consistent(RealSignVector { signs }))
    } else {
        Ok(SignOutcome::Inconsistent(violations))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn phase_pair(a12: f64, a21: f64) -> ComplexMatrix {
        ComplexMatrix::from_rows(vec![
            vec![Complex::new(1.0, 0.0), unit(a12)],
            vec![unit(a21), Complex::new(1.0, 0.0)],
        ])
    }

    #[test]
    fn distance_examples() {
        assert!(angle_distance(0.0, TAU) < 1e-15);
        assert!((angle_distance(0.1, TAU - 0.1) - 0.2).abs() < 1e-12);
        assert!((angle_distance(PI / 2.0, 1.5 * PI) - PI).abs() < 1e-15);
        assert_eq!(angle_distance(0.3, 1.1), angle_distance(1.1, 0.3));
    }

    #[test]
    fn ones_block_alternates() {
        let a = ComplexMatrix::from_real_rows(&[[1.0, 1.0], [1.0, 1.0]]);
        let AngleOutcome::Consistent(s) = solve_angle_system(&a, &tol(), 0).unwrap() else {
            panic!("expected consistent");
        };
        assert_eq!(s.thetas[0], 0.0);
        assert!((s.thetas[1] - PI).abs() < 1e-15);
    }

    #[test]
    fn conjugate_phases_are_consistent() {
        let a = phase_pair(PI / 3.0, -PI / 3.0);
        let AngleOutcome::Consistent(s) = solve_angle_system(&a, &tol(), 0).unwrap() else {
            panic!("expected consistent");
        };
        assert!(angle_distance(s.thetas[1], 2.0 * PI / 3.0) < 1e-12);
    }

    #[test]
    fn equal_phases_are_inconsistent() {
        let a = phase_pair(PI / 3.0, PI / 3.0);
        let AngleOutcome::Inconsistent(r) = solve_angle_system(&a, &tol(), 0).unwrap() else {
            panic!("expected inconsistent");
        };
        assert_eq!(r.violations.len(), 1);
        assert_eq!((r.violations[0].i, r.violations[0].j), (1, 0));
        assert!((r.violations[0].residual - 2.0 * PI / 3.0).abs() < 1e-12);
        assert!(!r.marginal);
    }

    #[test]
    fn directed_cycle_laplacian_is_all_zero() {
        let a = ComplexMatrix::from_real_rows(&[[1.0, -1.0, 0.0], [0.0, 1.0, -1.0], [-1.0, 0.0, 1.0]]);
        let AngleOutcome::Consistent(s) = solve_angle_system(&a, &tol(), 0).unwrap() else {
            panic!("expected consistent");
        };
        for t in s.thetas {
            assert!(angle_distance(t, 0.0) < 1e-15);
        }
    }

    #[test]
    fn marginal_residuals_are_flagged() {
        let a = phase_pair(0.0, 5e-9);
        let AngleOutcome::Inconsistent(r) = solve_angle_system(&a, &tol(), 0).unwrap() else {
            panic!("expected inconsistent");
        };
        assert!(r.marginal);
        let below = phase_pair(0.0, 5e-10);
        assert!(solve_angle_system(&below, &tol(), 0).unwrap().is_consistent());
    }

    #[test]
    fn preconditions() {
        let strict = ComplexMatrix::from_real_rows(&[[2.0, 1.0], [1.0, 2.0]]);
        assert!(matches!(
            solve_angle_system(&strict, &tol(), 0),
            Err(Error::PreconditionViolated(_))
        ));
        let reducible = ComplexMatrix::from_real_rows(&[[1.0, 1.0], [0.0, 0.0]]);
        assert!(matches!(
            solve_angle_system(&reducible, &tol(), 0),
            Err(Error::PreconditionViolated(_))
        ));
        let ones = ComplexMatrix::from_real_rows(&[[1.0, 1.0], [1.0, 1.0]]);
        assert!(solve_angle_system(&ones, &tol(), 2).is_err());
    }

    #[test]
    fn normalization_examples() {
        let base = AngleAssignment {
            thetas: vec![0.0, PI],
            anchor: 0,
            max_residual: 0.0,
        };
        let r = normalize_assignment(&base, PI);
        assert!(angle_distance(r.thetas[0], PI) < 1e-15);
        assert!(angle_distance(r.thetas[1], 0.0) < 1e-15);
        assert_eq!(normalize_assignment(&base, 0.0).thetas, base.thetas);

        let b = AngleAssignment {
            thetas: vec![0.0, 2.0 * PI / 3.0],
            anchor: 0,
            max_residual: 0.0,
        };
        let r = normalize_assignment(&b, PI / 3.0);
        assert!(angle_distance(r.thetas[0], PI / 3.0) < 1e-15);
        assert!(angle_distance(r.thetas[1], PI) < 1e-15);
    }

    #[test]
    fn real_sign_examples() {
        let a = RationalMatrix::from_integers(&[[1, -1], [-1, 1]]);
        assert_eq!(
            solve_real_signs(&a, 0).unwrap(),
            SignOutcome::Consistent(RealSignVector { signs: vec![1, 1] })
        );
        let b = RationalMatrix::from_integers(&[[1, 1], [1, 1]]);
        assert_eq!(
            solve_real_signs(&b, 0).unwrap(),
            SignOutcome::Consistent(RealSignVector { signs: vec![1, -1] })
        );
        let c = RationalMatrix::from_integers(&[[1, 1], [-1, 1]]);
        assert!(!solve_real_signs(&c, 0).unwrap().is_consistent());
        let strict = RationalMatrix::from_integers(&[[2, 1], [1, 2]]);
        assert!(matches!(
            solve_real_signs(&strict, 0),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn single_zero_vertex_is_trivially_consistent() {
        let z = ComplexMatrix::zeros(1);
        let AngleOutcome::Consistent(s) = solve_angle_system(&z, &tol(), 0).unwrap() else {
            panic!("expected consistent");
        };
        assert_eq!(s.thetas, vec![0.0]);
    }
}
