//! Exact sign propagation on a rational matrix.

use ddsing::angle::{solve_real_signs, SignOutcome};
use ddsing::exact::RationalMatrix;
use ddsing::matrix::Tolerances;
use ddsing::verdict::analyze_exact;

fn main() -> ddsing::Result<()> {
    // weak rows; the sign pattern admits the null vector (1, -1, 1)
    let a = RationalMatrix::from_ratios(&[
        [(1, 1), (1, 1), (0, 1)],
        [(0, 1), (2, 3), (2, 3)],
        [(1, 3), (0, 1), (-1, 3)],
    ]);
    match solve_real_signs(&a, 0)? {
        SignOutcome::Consistent(s) => println!("signs {:?}", s.signs),
        SignOutcome::Inconsistent(edges) => println!("inconsistent edges {edges:?}"),
    }
    let v = analyze_exact(&a, &Tolerances::default(), None)?;
    println!("singular={} nullity={}", v.singular, v.nullity);

    let flipped = RationalMatrix::from_ratios(&[
        [(1, 1), (-1, 1), (0, 1)],
        [(0, 1), (2, 3), (2, 3)],
        [(1, 3), (0, 1), (-1, 3)],
    ]);
    match solve_real_signs(&flipped, 0)? {
        SignOutcome::Consistent(s) => println!("signs {:?}", s.signs),
        SignOutcome::Inconsistent(edges) => println!("after flipping a_01: inconsistent edges {edges:?}"),
    }
    Ok(())
}
