//! Certified singularity decisions for (generalized) diagonally dominant
//! complex matrices.
//!
//! The pipeline reduces a matrix to its Frobenius normal form, settles
//! every block with a strict row by Taussky's theorem, and decides the
//! remaining irreducible weakly dominant blocks by checking consistency of
//! an angle equation system. Singular blocks come with certificates: a
//! unit-modulus null vector, a left null vector, a diagonal unitary
//! similarity to a comparison-form matrix, and a Markov decomposition.
//!
//! ```
//! use ddsing::{analyze, ComplexMatrix, Tolerances};
//!
//! let a = ComplexMatrix::from_real_rows(&[[1.0, -1.0, 0.0], [-1.0, 1.0, 0.0], [0.0, -1.0, 2.0]]);
//! let v = analyze(&a, &Tolerances::default(), None).unwrap();
//! assert!(v.singular);
//! assert_eq!(v.nullity, 1);
//! ```

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod angle;
pub mod certificates;
pub mod cli;
mod dense;
pub mod digraph;
pub mod error;
pub mod exact;
pub mod io;
pub mod matrix;
pub mod oracle;
mod serde_complex;
pub mod verdict;

pub use angle::{
    angle_distance, normalize_assignment, solve_angle_system, solve_real_signs, AngleAssignment, AngleOutcome,
};
pub use digraph::{
    associated_digraph, frobenius_normal_form, permute, strongly_connected_components, Digraph, FrobeniusForm,
};
pub use error::{Error, Result};
pub use exact::RationalMatrix;
pub use matrix::{
    balance_check, classify_rows, comparison_matrix, diagonal_of, polar_split, scale_columns, Axis, Complex,
    ComplexMatrix, DominanceClass, DominanceProfile, RealMatrix, Tolerances,
};
pub use verdict::{analyze, analyze_exact, block_verdict, nullity_of, BlockDecision, MatrixVerdict, NonsingularReason};
