//! How far a kernel is from satisfying the triangle inequality.

use kernel_calculus::{
    almost_distance_report, entrywise_power, minimal_q, uniform_check, Kernel, DEFAULT_TOL,
};

fn main() -> kernel_calculus::Result<()> {
    let k = Kernel::from_rows(vec![
        vec![0.0, 1.0, 4.0],
        vec![1.0, 0.0, 1.0],
        vec![4.0, 1.0, 0.0],
    ])?;
    let report = almost_distance_report(&k, DEFAULT_TOL)?;
    println!("least q: {}", report.minimal_q);
    println!("uniform from q = {:?}", report.uniform_ok_at);
    if let Some(w) = &report.triangle_witness {
        println!("tightest triple: {:?}", w.labels);
    }

    let check = uniform_check(&k, 1.5, DEFAULT_TOL)?;
    println!(
        "at q = 1.5: first bound {}, second bound {}",
        check.first_bound, check.second_bound
    );

    for p in [1.0, 2.0, 4.0] {
        let root = entrywise_power(&k, 1.0 / p)?;
        println!(
            "p = {p}: q of κ^(1/p) = {:.4}",
            minimal_q(&root, DEFAULT_TOL)?
        );
    }
    Ok(())
}
