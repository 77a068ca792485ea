//! Matrices that are not row dominant but become dominant after column scaling.

use ddsing::matrix::{classify_rows, scale_columns, ComplexMatrix, Tolerances};
use ddsing::verdict::analyze;

fn main() -> ddsing::Result<()> {
    let tol = Tolerances::default();
    let v = [1.0, 0.25];
    let cases = [
        ("nonsingular", ComplexMatrix::from_real_rows(&[[1.0, 4.0], [1.0, 8.0]])),
        ("singular", ComplexMatrix::from_real_rows(&[[1.0, -4.0], [-1.0, 4.0]])),
    ];
    for (name, a) in cases {
        println!("{name}: row classes {:?}", classify_rows(&a, &tol).classes());
        println!("  without weights: applicable={}", analyze(&a, &tol, None)?.applicable);
        let av = scale_columns(&a, &v)?;
        println!("  AV row classes {:?}", classify_rows(&av, &tol).classes());
        let w = analyze(&a, &tol, Some(&v))?;
        println!(
            "  with weights {v:?}: applicable={} singular={}",
            w.applicable, w.singular
        );
    }
    Ok(())
}
