//! A kernel as an integral operator and its canonical map into L²(μ).

use kernel_calculus::measure::verify_z_rho;
use kernel_calculus::{
    canonical_embedding, hs_norm, star, Kernel, MeasuredSpace, PointSet, DEFAULT_TOL,
};

fn main() -> kernel_calculus::Result<()> {
    let points = PointSet::new(["p", "q", "r", "s"])?;
    let k = Kernel::new(
        points.clone(),
        vec![
            vec![0.0, 1.0, 2.0, 1.0],
            vec![1.0, 0.0, 1.0, 2.0],
            vec![2.0, 1.0, 0.0, 1.0],
            vec![1.0, 2.0, 1.0, 0.0],
        ],
    )?;
    let mu = MeasuredSpace::new(points, vec![0.1, 0.2, 0.3, 0.4])?;

    println!("Hilbert–Schmidt norm: {:.6}", hs_norm(&k, &mu)?);
    let (emb, rho) = canonical_embedding(&k, &mu)?;
    for (label, row) in k.points().labels().iter().zip(&emb.coords) {
        println!("ι({label}) = {row:.4?}");
    }
    println!("ρ(p, r) = {:.6}", rho[(0, 2)]);
    let kk = star(&k, &k, &mu)?;
    println!("(κ∗κ)(p, p) = {:.6}", kk[(0, 0)]);
    println!(
        "max |Z(κ∗κ) + ½ρ²| = {:.2e}",
        verify_z_rho(&k, &mu, DEFAULT_TOL)?
    );
    Ok(())
}
