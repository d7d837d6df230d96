//! Glue two point sets along a bridge and build a separable bridge above it.

use kernel_calculus::{
    classify, flood_pestov_dominating, glue, validate_bridge, GlueLabels, PointSet, DEFAULT_TOL,
};

fn main() -> kernel_calculus::Result<()> {
    let xs = PointSet::new(["a", "b", "c"])?;
    let ys = PointSet::new(["u", "v"])?;
    let f = validate_bridge(
        vec![vec![1.0, 2.0], vec![2.0, 1.0], vec![1.5, 1.5]],
        xs,
        ys,
        DEFAULT_TOL,
    )?;

    let d = glue(&f, GlueLabels::AsIs)?;
    println!("glued on {:?}:", d.points().labels());
    for row in d.to_rows() {
        println!("  {row:?}");
    }
    let t = classify(&d, DEFAULT_TOL).taxonomy;
    println!("distance {}, pseudometric {}", t.distance, t.pseudometric);

    let g = flood_pestov_dominating(&f, "a", "u", DEFAULT_TOL)?;
    println!("dominating bridge at (a, u): {:?}", g.to_rows());
    Ok(())
}
