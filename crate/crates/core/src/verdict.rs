//! The decision pipeline.
//!
//! 1. Rows are classified; any violated row makes the matrix inapplicable.
//! 2. The Frobenius normal form splits the matrix into irreducible blocks.
//! 3. Dependent blocks are nonsingular.
//! 4. An independent block is nonsingular if one of its rows is strict;
//!    otherwise the angle system decides.
//!
//! The matrix is singular exactly when some independent block is, and the
//! nullity is the number of singular blocks.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::angle::{solve_angle_system, solve_real_signs, AngleOutcome, ConsistencyReport, EdgeViolation, SignOutcome};
use crate::certificates::{certify_block, extend_null_vector, SingularCertificate};
use crate::digraph::{associated_digraph, frobenius_form_of, Digraph, FrobeniusForm};
use crate::error::{Error, Result};
use crate::exact::RationalMatrix;
use crate::matrix::{
    check_weights, classify_rows, scale_columns, ComplexMatrix, DominanceClass, DominanceProfile, Tolerances,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NonsingularReason {
    StrictRow,
    AngleInconsistent,
    DependentBlock,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum BlockDecision {
    Nonsingular {
        reason: NonsingularReason,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        consistency: Option<ConsistencyReport>,
    },
    Singular {
        thetas: Vec<f64>,
        /// Index into `MatrixVerdict::certificates`.
        certificate: Option<usize>,
    },
}

impl BlockDecision {
    pub fn is_singular(&self) -> bool {
        matches!(self, BlockDecision::Singular { .. })
    }

    pub fn reason(&self) -> Option<NonsingularReason> {
        match self {
            BlockDecision::Nonsingular { reason, .. } => Some(*reason),
            BlockDecision::Singular { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockVerdict {
    pub block_id: usize,
    /// Original indices of the block's rows, ascending.
    pub members: Vec<usize>,
    pub independent: bool,
    pub size: usize,
    pub verdict: BlockDecision,
    /// Row classes computed from the block's own row sums.
    pub dominance: Vec<DominanceClass>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixVerdict {
    pub applicable: bool,
    pub violated_rows: Vec<usize>,
    pub singular: bool,
    pub nullity: usize,
    pub frobenius: Option<FrobeniusForm>,
    pub blocks: Vec<BlockVerdict>,
    pub certificates: Vec<SingularCertificate>,
    /// Certificate construction failures; the verdict itself stands.
    #[serde(default)]
    pub certificate_errors: Vec<String>,
    pub tolerances: Tolerances,
    #[serde(default)]
    pub exact: bool,
}

impl MatrixVerdict {
    fn inapplicable(profile: &DominanceProfile, tol: &Tolerances, exact: bool) -> Self {
        Self {
            applicable: false,
            violated_rows: profile.violated_rows(),
            singular: false,
            nullity: 0,
            frobenius: None,
            blocks: Vec::new(),
            certificates: Vec::new(),
            certificate_errors: Vec::new(),
            tolerances: *tol,
            exact,
        }
    }

    /// Block partition as sets of original indices, in block order.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.members.clone()).collect()
    }
}

fn singular_decision(thetas: Vec<f64>) -> BlockDecision {
    BlockDecision::Singular {
        thetas,
        certificate: None,
    }
}

fn nonsingular(reason: NonsingularReason) -> BlockDecision {
    BlockDecision::Nonsingular {
        reason,
        consistency: None,
    }
}

/// Decides one irreducible block.
pub fn block_verdict(block: &ComplexMatrix, tol: &Tolerances) -> Result<BlockVerdict> {
    if !associated_digraph(block).is_strongly_connected() {
        return Err(Error::PreconditionViolated("block is not irreducible".to_string()));
    }
    let profile = classify_rows(block, tol);
    let verdict = decide_float_block(block, &profile, tol)?;
    Ok(BlockVerdict {
        block_id: 0,
        members: (0..block.n()).collect(),
        independent: true,
        size: block.n(),
        verdict,
        dominance: profile.classes(),
    })
}

fn decide_float_block(block: &ComplexMatrix, profile: &DominanceProfile, tol: &Tolerances) -> Result<BlockDecision> {
    if block.n() == 1 {
        return Ok(if block[(0, 0)].norm() <= tol.tol_dom {
            singular_decision(vec![0.0])
        } else {
            nonsingular(NonsingularReason::StrictRow)
        });
    }
    if let Some(i) = profile.violated_rows().first() {
        return Err(Error::PreconditionViolated(format!(
            "row {i} of the block is not diagonally dominant"
        )));
    }
    if profile.any_strict() {
        return Ok(nonsingular(NonsingularReason::StrictRow));
    }
    Ok(match solve_angle_system(block, tol, 0)? {
        AngleOutcome::Consistent(assign) => singular_decision(assign.thetas),
        AngleOutcome::Inconsistent(report) => BlockDecision::Nonsingular {
            reason: NonsingularReason::AngleInconsistent,
            consistency: Some(report),
        },
    })
}

fn decide_exact_block(block: &RationalMatrix, profile: &DominanceProfile) -> Result<BlockDecision> {
    if block.n() == 1 {
        return Ok(if block.is_nonzero(0, 0) {
            nonsingular(NonsingularReason::StrictRow)
        } else {
            singular_decision(vec![0.0])
        });
    }
    if profile.any_strict() {
        return Ok(nonsingular(NonsingularReason::StrictRow));
    }
    Ok(match solve_real_signs(block, 0)? {
        SignOutcome::Consistent(signs) => singular_decision(signs.thetas()),
        SignOutcome::Inconsistent(edges) => BlockDecision::Nonsingular {
            reason: NonsingularReason::AngleInconsistent,
            consistency: Some(ConsistencyReport {
                max_residual: PI,
                violations: edges
                    .into_iter()
                    .map(|(i, j)| EdgeViolation { i, j, residual: PI })
                    .collect(),
                marginal: false,
            }),
        },
    })
}

/// Shared skeleton: Frobenius reduction, per-block decisions, certificates.
fn run_pipeline(
    a: &ComplexMatrix,
    graph: &Digraph,
    tol: &Tolerances,
    exact: bool,
    mut decide: impl FnMut(&[usize]) -> Result<(BlockDecision, Vec<DominanceClass>)>,
) -> Result<MatrixVerdict> {
    let form = frobenius_form_of(graph);
    let mut blocks = Vec::with_capacity(form.blocks.len());
    for (p, members) in form.blocks.iter().enumerate() {
        let independent = form.independent[p];
        let (verdict, dominance) = if independent {
            decide(members)?
        } else {
            let local = classify_rows(&a.submatrix(members), tol).classes();
            (nonsingular(NonsingularReason::DependentBlock), local)
        };
        blocks.push(BlockVerdict {
            block_id: p,
            members: members.clone(),
            independent,
            size: members.len(),
            verdict,
            dominance,
        });
    }

    let mut certificates = Vec::new();
    let mut certificate_errors = Vec::new();
    for bv in &mut blocks {
        let BlockDecision::Singular { thetas, certificate } = &mut bv.verdict else {
            continue;
        };
        let sub = a.submatrix(&bv.members);
        let assign = crate::angle::AngleAssignment {
            thetas: thetas.clone(),
            anchor: 0,
            max_residual: 0.0,
        };
        let built = certify_block(bv.block_id, &sub, &assign, tol).and_then(|mut cert| {
            cert.null_vector = Some(extend_null_vector(a, &form, bv.block_id, &cert.gamma, tol)?);
            Ok(cert)
        });
        match built {
            Ok(cert) => {
                *certificate = Some(certificates.len());
                certificates.push(cert);
            }
            Err(e) => certificate_errors.push(format!("block {}: {e}", bv.block_id)),
        }
    }

    let nullity = blocks.iter().filter(|b| b.verdict.is_singular()).count();
    Ok(MatrixVerdict {
        applicable: true,
        violated_rows: Vec::new(),
        singular: nullity > 0,
        nullity,
        frobenius: Some(form),
        blocks,
        certificates,
        certificate_errors,
        tolerances: *tol,
        exact,
    })
}

/// Runs the full pipeline. With `weights`, the column-scaled matrix `AV` is
/// analyzed; it is singular exactly when `A` is.
pub fn analyze(a: &ComplexMatrix, tol: &Tolerances, weights: Option<&[f64]>) -> Result<MatrixVerdict> {
    tol.validate()?;
    let scaled;
    let a = match weights {
        Some(v) => {
            scaled = scale_columns(a, v)?;
            &scaled
        }
        None => a,
    };
    let profile = classify_rows(a, tol);
    if !profile.is_dominant() {
        return Ok(MatrixVerdict::inapplicable(&profile, tol, false));
    }
    run_pipeline(a, &associated_digraph(a), tol, false, |members| {
        let sub = a.submatrix(members);
        let local = classify_rows(&sub, tol);
        let decision = decide_float_block(&sub, &local, tol)?;
        Ok((decision, local.classes()))
    })
}

/// Exact pipeline for real rational matrices. No tolerance enters the
/// verdict; `tol` is used only for the floating certificates.
pub fn analyze_exact(a: &RationalMatrix, tol: &Tolerances, weights: Option<&[f64]>) -> Result<MatrixVerdict> {
    tol.validate()?;
    let scaled;
    let a = match weights {
        Some(v) => {
            check_weights(a.n(), v)?;
            let mut rows = Vec::with_capacity(a.n() * a.n());
            for i in 0..a.n() {
                for (j, &w) in v.iter().enumerate() {
                    let w = num_rational::BigRational::from_float(w).expect("finite weight");
                    rows.push(&a[(i, j)] * w);
                }
            }
            scaled = RationalMatrix::new(a.n(), rows)?;
            &scaled
        }
        None => a,
    };
    let profile = a.classify_rows();
    if !profile.is_dominant() {
        return Ok(MatrixVerdict::inapplicable(&profile, tol, true));
    }
    let graph = Digraph::from_pattern(a.n(), |i, j| a.is_nonzero(i, j));
    run_pipeline(&a.to_complex(), &graph, tol, true, |members| {
        let sub = a.submatrix(members);
        let local = sub.classify_rows();
        let decision = decide_exact_block(&sub, &local)?;
        Ok((decision, local.classes()))
    })
}

pub fn nullity_of(v: &MatrixVerdict) -> Result<usize> {
    if v.applicable {
        Ok(v.nullity)
    } else {
        Err(Error::NotApplicable)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{unit, Complex};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn identity_is_nonsingular() {
        let v = analyze(&ComplexMatrix::identity(3), &tol(), None).unwrap();
        assert!(v.applicable && !v.singular);
        assert_eq!(v.nullity, 0);
        assert_eq!(v.blocks.len(), 3);
        assert!(v
            .blocks
            .iter()
            .all(|b| b.independent && b.verdict.reason() == Some(NonsingularReason::StrictRow)));
        assert_eq!(nullity_of(&v).unwrap(), 0);
    }

    #[test]
    fn reducible_example() {
        let a = ComplexMatrix::from_real_rows(&[[1.0, -1.0, 0.0], [-1.0, 1.0, 0.0], [0.0, -1.0, 2.0]]);
        let v = analyze(&a, &tol(), None).unwrap();
        assert!(v.singular);
        assert_eq!(v.nullity, 1);
        assert_eq!(v.blocks[0].members, vec![0, 1]);
        assert!(v.blocks[0].verdict.is_singular());
        assert_eq!(v.blocks[1].members, vec![2]);
        assert_eq!(v.blocks[1].verdict.reason(), Some(NonsingularReason::DependentBlock));
        let cert = &v.certificates[0];
        let x = cert.null_vector.as_ref().unwrap();
        assert!((x[2] - Complex::new(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn angle_inconsistent_pair() {
        let a = ComplexMatrix::from_real_rows(&[[1.0, 1.0], [-1.0, 1.0]]);
        let v = analyze(&a, &tol(), None).unwrap();
        assert!(!v.singular);
        assert_eq!(v.blocks[0].verdict.reason(), Some(NonsingularReason::AngleInconsistent));
    }

    #[test]
    fn zero_scalar_is_singular() {
        let v = analyze(&ComplexMatrix::zeros(1), &tol(), None).unwrap();
        assert!(v.singular);
        assert_eq!(v.nullity, 1);
        assert_eq!(v.certificates.len(), 1);
        assert!(v.certificates[0].markov.is_none());
    }

    #[test]
    fn inapplicable_is_reported() {
        let a = ComplexMatrix::from_real_rows(&[[1.0, 2.0], [0.0, 1.0]]);
        let v = analyze(&a, &tol(), None).unwrap();
        assert!(!v.applicable);
        assert_eq!(v.violated_rows, vec![0]);
        assert!(matches!(nullity_of(&v), Err(Error::NotApplicable)));
    }

    #[test]
    fn block_verdict_examples() {
        let strict = ComplexMatrix::from_real_rows(&[[2.0, 1.0], [1.0, 2.0]]);
        assert_eq!(
            block_verdict(&strict, &tol()).unwrap().verdict.reason(),
            Some(NonsingularReason::StrictRow)
        );
        let ones = ComplexMatrix::from_real_rows(&[[1.0, 1.0], [1.0, 1.0]]);
        match block_verdict(&ones, &tol()).unwrap().verdict {
            BlockDecision::Singular { thetas, .. } => {
                assert_eq!(thetas[0], 0.0);
                assert!((thetas[1] - PI).abs() < 1e-15);
            }
            other => panic!("unexpected {other:?}"),
        }
        let phased = ComplexMatrix::from_rows(vec![
            vec![Complex::new(1.0, 0.0), unit(PI / 3.0)],
            vec![unit(PI / 3.0), Complex::new(1.0, 0.0)],
        ]);
        assert_eq!(
            block_verdict(&phased, &tol()).unwrap().verdict.reason(),
            Some(NonsingularReason::AngleInconsistent)
        );
        let reducible = ComplexMatrix::from_real_rows(&[[1.0, 0.0], [1.0, 1.0]]);
        assert!(block_verdict(&reducible, &tol()).is_err());
    }

    #[test]
    fn two_singular_blocks_give_nullity_two() {
        let a = ComplexMatrix::from_real_rows(&[
            [1.0, 1.0, 0.0, 0.0],
            [1.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 1.0],
            [0.0, 0.0, 1.0, 1.0],
        ]);
        let v = analyze(&a, &tol(), None).unwrap();
        assert_eq!(nullity_of(&v).unwrap(), 2);
        assert_eq!(v.certificates.len(), 2);
    }

    #[test]
    fn weights_path() {
        let a = ComplexMatrix::from_real_rows(&[[2.0, -3.0], [-4.0 / 3.0, 2.0]]);
        assert!(!analyze(&a, &tol(), None).unwrap().applicable);
        let v = analyze(&a, &tol(), Some(&[3.0, 2.0])).unwrap();
        assert!(v.applicable && v.singular);
        assert!(matches!(
            analyze(&a, &tol(), Some(&[3.0, -2.0])),
            Err(Error::NonPositiveWeight { index: 1, .. })
        ));
    }

    #[test]
    fn exact_pipeline_matches_float_on_small_cases() {
        let cases: Vec<Vec<[i64; 3]>> = vec![
            vec![[1, -1, 0], [-1, 1, 0], [0, -1, 2]],
            vec![[2, 1, 1], [1, 2, 1], [1, 1, 2]],
            vec![[2, -1, -1], [-1, 2, -1], [-1, -1, 2]],
            vec![[2, 1, -1], [1, 2, 1], [-1, 1, 2]],
            vec![[1, 2, 0], [0, 1, 0], [0, 0, 1]],
        ];
        for rows in cases {
            let exact = RationalMatrix::from_integers(&rows);
            let float = exact.to_complex();
            let ve = analyze_exact(&exact, &tol(), None).unwrap();
            let vf = analyze(&float, &tol(), None).unwrap();
            assert_eq!(
                (ve.applicable, ve.singular, ve.nullity),
                (vf.applicable, vf.singular, vf.nullity)
            );
            assert!(ve.exact);
        }
    }
}
