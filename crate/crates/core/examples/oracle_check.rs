//! Cross-check the analyzer against elimination on seeded random instances.

use ddsing::matrix::Tolerances;
use ddsing::oracle::{gen_reducible_instance, gen_strict_instance, rank_det_oracle, rng_from_seed, DEFAULT_PIVOT_TOL};
use ddsing::verdict::analyze;

fn main() -> ddsing::Result<()> {
    let tol = Tolerances::default();
    let mut rng = rng_from_seed(1);
    let mut disagreements = 0;
    for k in 0..200 {
        let a = if k % 2 == 0 {
            gen_strict_instance(6, 0.5, &mut rng)?
        } else {
            gen_reducible_instance(8, &mut rng)?.a
        };
        let v = analyze(&a, &tol, None)?;
        let r = rank_det_oracle(&a, DEFAULT_PIVOT_TOL)?;
        if v.singular != r.is_singular(a.n()) || v.nullity != a.n() - r.rank {
            disagreements += 1;
            println!(
                "instance {k}: analyzer nullity {}, oracle rank {}/{}",
                v.nullity,
                r.rank,
                a.n()
            );
        }
    }
    println!("200 instances, {disagreements} disagreements");
    Ok(())
}
