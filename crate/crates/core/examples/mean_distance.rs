//! Mean distance on the discretized interval and circle.

use std::f64::consts::PI;

use kernel_calculus::{
    check_measure_preserving_isometry, fixture, mean_dist, orbit_transitive, FixtureKind,
    FixtureMetric, DEFAULT_TOL,
};

fn main() -> kernel_calculus::Result<()> {
    let f = fixture(FixtureKind::Interval, 201, FixtureMetric::Euclid)?;
    let phi = mean_dist(&f.kernel, &f.space, DEFAULT_TOL)?;
    let err = f
        .positions
        .iter()
        .zip(phi.values())
        .map(|(x, v)| (v - (x * x - x + 0.5)).abs())
        .fold(0.0, f64::max);
    println!("interval, n = 201: max |φ(x) − (x² − x + ½)| = {err:.2e}");

    for (metric, expected) in [
        (FixtureMetric::Arc, PI / 2.0),
        (FixtureMetric::Chord, 4.0 / PI),
    ] {
        let f = fixture(FixtureKind::Circle, 360, metric)?;
        let phi = mean_dist(&f.kernel, &f.space, DEFAULT_TOL)?;
        let err = phi
            .values()
            .iter()
            .map(|v| (v - expected).abs())
            .fold(0.0, f64::max);
        println!("circle {metric}, n = 360: max |φ − {expected:.6}| = {err:.2e}");
    }

    let f = fixture(FixtureKind::Circle, 360, FixtureMetric::Arc)?;
    let rotation: Vec<usize> = (0..360).map(|i| (i + 1) % 360).collect();
    let iso = check_measure_preserving_isometry(&f.kernel, &f.space, &rotation, 1e-12)?;
    println!("rotation is a measure-preserving isometry: {}", iso.holds);
    println!(
        "rotation acts transitively: {}",
        orbit_transitive(&[rotation], 360)?
    );
    Ok(())
}
