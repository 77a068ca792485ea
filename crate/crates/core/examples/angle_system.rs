//! The angle system on a planted singular matrix, before and after a phase
//! perturbation of one entry.

use ddsing::angle::{solve_angle_system, AngleOutcome};
use ddsing::matrix::Tolerances;
use ddsing::oracle::{gen_perturbed_instance, gen_singular_instance};

fn main() -> ddsing::Result<()> {
    let tol = Tolerances::default();
    let planted = gen_singular_instance(5, 0.5, 42)?;

    match solve_angle_system(&planted.a, &tol, 0)? {
        AngleOutcome::Consistent(x) => {
            println!("consistent, max residual {:.2e}", x.max_residual);
            for (i, t) in x.thetas.iter().enumerate() {
                println!("  theta[{i}] = {t:.6}");
            }
        }
        AngleOutcome::Inconsistent(r) => println!("unexpected: {r:?}"),
    }

    for delta in [1e-6, 1e-3, 0.5] {
        let a = gen_perturbed_instance(&planted, delta)?;
        match solve_angle_system(&a, &tol, 0)? {
            AngleOutcome::Consistent(_) => println!("delta {delta:e}: consistent"),
            AngleOutcome::Inconsistent(r) => println!(
                "delta {delta:e}: {} violated edges, max residual {:.3e}",
                r.violations.len(),
                r.max_residual
            ),
        }
    }
    Ok(())
}
