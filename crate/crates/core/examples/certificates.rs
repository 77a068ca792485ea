//! Certificates of a singular block: null vectors, the Markov decomposition
//! and the doubly balanced real matrix B.

use ddsing::angle::{solve_angle_system, AngleOutcome};
use ddsing::certificates::{b_matrix, certify_block};
use ddsing::matrix::Tolerances;
use ddsing::oracle::gen_singular_instance;

fn main() -> ddsing::Result<()> {
    let tol = Tolerances::default();
    let a = gen_singular_instance(4, 0.7, 7)?.a;
    let AngleOutcome::Consistent(assign) = solve_angle_system(&a, &tol, 0)? else {
        unreachable!("planted instances are consistent");
    };

    let cert = certify_block(0, &a, &assign, &tol)?;
    println!("gamma: {:.4?}", cert.gamma);
    println!("rho:   {:.4?}", cert.rho);
    println!(
        "residuals: right {:.1e}, left {:.1e}, witness {:.1e}",
        cert.right_residual, cert.left_residual, cert.witness_residual
    );
    if let Some(m) = &cert.markov {
        println!("S (rows sum to 1):");
        for row in &m.s {
            println!("  {row:.4?}");
        }
    }

    let b = b_matrix(&a, &cert.rho, &cert.gamma, &tol)?;
    println!("B = diag(rho) A diag(gamma):");
    for row in b.b.rows() {
        println!("  {row:.4?}");
    }
    Ok(())
}
