//! Classify a kernel, then replace it with the largest distance below it.

use kernel_calculus::{classify, hat, minimizing_chain, Kernel, DEFAULT_TOL};

fn main() -> kernel_calculus::Result<()> {
    let k = Kernel::from_rows(vec![
        vec![0.0, 0.0, 2.0],
        vec![0.0, 0.0, 1.0],
        vec![2.0, 1.0, 0.0],
    ])?;
    let report = classify(&k, DEFAULT_TOL);
    println!("conditions: {:?}", report.conditions);
    for w in &report.witnesses {
        println!(
            "  {:?} fails at {:?} by {}",
            w.condition, w.witness.labels, w.witness.magnitude
        );
    }

    let d = hat(&k)?;
    println!("hat:");
    for row in d.to_rows() {
        println!("  {row:?}");
    }
    let chain = minimizing_chain(&k, 0, 2)?;
    println!(
        "cheapest chain p0 -> p2: {:?}",
        k.points().labels_of(&chain)
    );
    println!(
        "hat is a distance: {}",
        classify(&d, DEFAULT_TOL).taxonomy.distance
    );
    Ok(())
}
