//! Block triangularization of a reducible matrix and the per-block verdicts.

use ddsing::digraph::{associated_digraph, frobenius_normal_form, permute, strongly_connected_components};
use ddsing::matrix::{ComplexMatrix, Tolerances};
use ddsing::verdict::analyze;

fn main() -> ddsing::Result<()> {
    // vertex 2 feeds into the singular pair {0, 1}
    let a = ComplexMatrix::from_real_rows(&[[1.0, -1.0, 0.0], [-1.0, 1.0, 0.0], [-1.0, 0.0, 2.0]]);

    let g = associated_digraph(&a);
    println!("edges: {:?}", g.edges().collect::<Vec<_>>());
    println!("components: {:?}", strongly_connected_components(&g));

    let form = frobenius_normal_form(&a);
    println!("blocks: {:?}", form.blocks);
    println!("independent: {:?}", form.independent);
    println!("permuted:\n{:?}", permute(&a, &form)?);

    let v = analyze(&a, &Tolerances::default(), None)?;
    for b in &v.blocks {
        println!("block {} {:?}: {:?}", b.block_id, b.members, b.verdict);
    }
    println!("nullity {}", v.nullity);
    Ok(())
}
