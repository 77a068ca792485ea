//! Decide singularity of a few small matrices and print the JSON report.

use ddsing::io::Report;
use ddsing::matrix::{ComplexMatrix, Tolerances};
use ddsing::verdict::analyze;

fn main() -> ddsing::Result<()> {
    let tol = Tolerances::default();
    let cases = [
        ("identity", ComplexMatrix::identity(3)),
        (
            "3-cycle laplacian",
            ComplexMatrix::from_real_rows(&[[2.0, -1.0, -1.0], [-1.0, 2.0, -1.0], [-1.0, -1.0, 2.0]]),
        ),
        ("not dominant", ComplexMatrix::from_real_rows(&[[1.0, 2.0], [0.0, 1.0]])),
    ];
    for (name, a) in cases {
        let v = analyze(&a, &tol, None)?;
        println!(
            "{name}: applicable={} singular={} nullity={}",
            v.applicable, v.singular, v.nullity
        );
    }

    let a = ComplexMatrix::from_real_rows(&[[2.0, -1.0, -1.0], [-1.0, 2.0, -1.0], [-1.0, -1.0, 2.0]]);
    println!("{}", Report::new(analyze(&a, &tol, None)?).to_json()?);
    Ok(())
}
