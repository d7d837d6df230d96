//! Uniform point separation and bi-Lipschitz comparisons of two metrics.

use kernel_calculus::separation::default_eps_grid;
use kernel_calculus::{
    bilip_constants, ivt_check, perturb_separation, separation_profile, Kernel, MeasuredSpace,
    DEFAULT_TOL,
};

fn main() -> kernel_calculus::Result<()> {
    let d = Kernel::from_rows(vec![
        vec![0.0, 1.0, 2.0, 1.5],
        vec![1.0, 0.0, 1.0, 2.0],
        vec![2.0, 1.0, 0.0, 1.0],
        vec![1.5, 2.0, 1.0, 0.0],
    ])?;
    let mu = MeasuredSpace::uniform(d.points().clone());
    let grid = default_eps_grid();
    let rep = separation_profile(&d, &mu, &grid, DEFAULT_TOL)?;
    for (eps, c) in rep.eps_grid.iter().zip(&rep.c_profile).step_by(4) {
        println!("ε = {eps:.3}: c(ε) = {c:.3}");
    }
    println!(
        "ℓ = {:.4}, L = {:.4}, bound holds: {}",
        rep.ell, rep.big_l, rep.derived_bound_ok
    );

    let tau = d.map(|v| v * 1.1 + if v > 0.0 { 0.02 } else { 0.0 })?;
    let b = bilip_constants(&tau, &d, DEFAULT_TOL)?;
    println!(
        "ℓ(d, τ) = {:.4}, L(d, τ) = {:.4}, u = {:.4}",
        b.lower, b.upper, b.u
    );

    let ivt = ivt_check(&tau, &d, &mu, DEFAULT_TOL)?;
    println!(
        "Lip(τ) = {:.6}, Lip(inverse) = {:.6}",
        ivt.lip_of_kappa, ivt.lip_inverse
    );

    for (name, t) in [("τ", tau), ("3d", d.scale(3.0)?)] {
        match perturb_separation(&d, &t, &mu, 0.8, DEFAULT_TOL) {
            Ok(p) => println!(
                "{name}: ε′ = {:.4}, margin = {:.4}, containment {}, c_d = {:.3}, c_τ = {:.3}",
                p.eps_prime, p.margin, p.containment_holds, p.c_d, p.c_tau
            ),
            Err(e) => println!("{name}: perturbation bound does not apply: {e}"),
        }
    }
    Ok(())
}
