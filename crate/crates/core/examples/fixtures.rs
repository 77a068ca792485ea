//! Graph Laplacian, Kolmogorov generator and Markov M-matrix fixtures.

use ddsing::matrix::Tolerances;
use ddsing::oracle::{gen_fixture, FixtureKind};
use ddsing::verdict::analyze;

fn main() -> ddsing::Result<()> {
    let tol = Tolerances::default();
    for kind in [FixtureKind::Laplacian, FixtureKind::Kolmogorov, FixtureKind::MarkovM] {
        let a = gen_fixture(kind, 6, 3)?;
        let v = analyze(&a, &tol, None)?;
        println!("{kind:?}: {} blocks, nullity {}", v.blocks.len(), v.nullity);
    }
    Ok(())
}
