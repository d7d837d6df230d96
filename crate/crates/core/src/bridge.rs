//! Bridges on a disjoint union X ⊔ Y.
//!
//! A bridge is a matrix `F` over `X × Y` with
//! `F(x₁, y₁) − F(x₂, y₂) ≤ F(x₁, y₂) + F(x₂, y₁)` for all quadruples. It
//! induces symmetric kernels on each side and glues the two sides into one
//! symmetric distance on the union.

use serde::Serialize;

use crate::classify::classify;
use crate::error::{Error, Result, Witness};
use crate::kernel::{Kernel, PointSet, RealFunction};
use crate::lattice::hat;
use crate::scan::Worst;

#[derive(Clone, Debug, PartialEq)]
pub struct Bridge {
    x_points: PointSet,
    y_points: PointSet,
    values: Vec<f64>,
}

impl Bridge {
    pub fn x_points(&self) -> &PointSet {
        &self.x_points
    }

    pub fn y_points(&self) -> &PointSet {
        &self.y_points
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.values[x * self.y_points.len() + y]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.values
            .chunks(self.y_points.len())
            .map(<[f64]>::to_vec)
            .collect()
    }

    /// F(x, ·) as a function on Y.
    pub fn row_function(&self, x: usize) -> RealFunction {
        let m = self.y_points.len();
        RealFunction::new(
            self.y_points.clone(),
            self.values[x * m..(x + 1) * m].to_vec(),
        )
        .expect("bridge entries are finite")
    }

    /// F(·, y) as a function on X.
    pub fn column_function(&self, y: usize) -> RealFunction {
        let values = (0..self.x_points.len()).map(|x| self.get(x, y)).collect();
        RealFunction::new(self.x_points.clone(), values).expect("bridge entries are finite")
    }
}

/// Largest excess of the bridge inequality, as `(x₁, y₁, x₂, y₂)`.
fn worst_quadruple(
    x_points: &PointSet,
    y_points: &PointSet,
    values: &[f64],
    tol: f64,
) -> Option<Witness> {
    let (n, m) = (x_points.len(), y_points.len());
    let f = |x: usize, y: usize| values[x * m + y];
    let mut worst = Worst::<4>::new();
    for x1 in 0..n {
        for y1 in 0..m {
            for x2 in 0..n {
                for y2 in 0..m {
                    let excess = f(x1, y1) - f(x2, y2) - f(x1, y2) - f(x2, y1);
                    if excess > tol {
                        worst.consider(excess, [x1, y1, x2, y2]);
                    }
                }
            }
        }
    }
    worst.witness_with(|pos, i| {
        if pos % 2 == 0 {
            x_points.label(i).to_string()
        } else {
            y_points.label(i).to_string()
        }
    })
}

/// Checks shape, finiteness, nonnegativity and the bridge inequality.
pub fn validate_bridge(
    values: Vec<Vec<f64>>,
    x_points: PointSet,
    y_points: PointSet,
    tol: f64,
) -> Result<Bridge> {
    let (n, m) = (x_points.len(), y_points.len());
    if values.len() != n || values.iter().any(|r| r.len() != m) {
        return Err(Error::Dimension {
            expected: format!("{n}×{m} matrix"),
            found: format!(
                "{} rows of lengths {:?}",
                values.len(),
                values.iter().map(Vec::len).collect::<Vec<_>>()
            ),
        });
    }
    let flat: Vec<f64> = values.into_iter().flatten().collect();
    if let Some(k) = flat.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            row: k / m,
            col: k % m,
        });
    }
    if let Some(k) = flat.iter().position(|&v| v < -tol) {
        return Err(Error::NegativeEntry {
            row: k / m,
            col: k % m,
            value: flat[k],
        });
    }
    if let Some(witness) = worst_quadruple(&x_points, &y_points, &flat, tol) {
        return Err(Error::BridgeViolation { witness });
    }
    Ok(Bridge {
        x_points,
        y_points,
        values: flat,
    })
}

/// κ_X(x₁, x₂) = min_y F(x₁, y) + F(x₂, y) and κ_Y dually.
pub fn induced_kernels(f: &Bridge) -> (Kernel, Kernel) {
    let (n, m) = (f.x_points.len(), f.y_points.len());
    let kx = Kernel::from_fn(f.x_points.clone(), |a, b| {
        (0..m)
            .map(|y| f.get(a, y) + f.get(b, y))
            .fold(f64::INFINITY, f64::min)
    })
    .expect("finite");
    let ky = Kernel::from_fn(f.y_points.clone(), |a, b| {
        (0..n)
            .map(|x| f.get(x, a) + f.get(x, b))
            .fold(f64::INFINITY, f64::min)
    })
    .expect("finite");
    (kx, ky)
}

/// How labels of the glued point set are formed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GlueLabels {
    /// Keep labels as they are; a shared label is an error.
    #[default]
    AsIs,
    /// Prefix with `X:` and `Y:`.
    Prefixed,
}

/// The symmetric distance `[[κ̂_X, F], [ᵗF, κ̂_Y]]` on X ⊔ Y.
pub fn glue(f: &Bridge, labels: GlueLabels) -> Result<Kernel> {
    let n = f.x_points.len();
    let names: Vec<String> = match labels {
        GlueLabels::AsIs => {
            if let Some(shared) = f
                .y_points
                .labels()
                .iter()
                .find(|l| f.x_points.index_of(l).is_ok())
            {
                return Err(Error::LabelCollision(shared.clone()));
            }
            f.x_points
                .labels()
                .iter()
                .chain(f.y_points.labels())
                .cloned()
                .collect()
        }
        GlueLabels::Prefixed => f
            .x_points
            .labels()
            .iter()
            .map(|l| format!("X:{l}"))
            .chain(f.y_points.labels().iter().map(|l| format!("Y:{l}")))
            .collect(),
    };
    let (kx, ky) = induced_kernels(f);
    let (hx, hy) = (hat(&kx)?, hat(&ky)?);
    Kernel::from_fn(PointSet::new(names)?, |i, j| match (i < n, j < n) {
        (true, true) => hx[(i, j)],
        (true, false) => f.get(i, j - n),
        (false, true) => f.get(j, i - n),
        (false, false) => hy[(i - n, j - n)],
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormFunctionCheck {
    pub holds: bool,
    /// Pair `(x₁, x₂)` with the largest excess over either inequality.
    pub witness: Option<Witness>,
    /// Whether f(x) = max_z [d(x, z) − f(z)] for every x, when requested.
    pub sup_identity: Option<bool>,
}

/// |f(x₁) − f(x₂)| ≤ d(x₁, x₂) ≤ f(x₁) + f(x₂) for all pairs, without any
/// requirement on `d` itself.
pub fn norm_function_inequalities(
    f: &RealFunction,
    d: &Kernel,
    tol: f64,
) -> Result<NormFunctionCheck> {
    if f.points() != d.points() {
        return Err(Error::PointSetMismatch);
    }
    let n = d.len();
    let mut worst = Worst::<2>::new();
    for a in 0..n {
        for b in 0..n {
            let lower = (f.get(a) - f.get(b)).abs() - d[(a, b)];
            let upper = d[(a, b)] - f.get(a) - f.get(b);
            let excess = lower.max(upper);
            if excess > tol {
                worst.consider(excess, [a, b]);
            }
        }
    }
    Ok(NormFunctionCheck {
        holds: worst.is_clear(),
        witness: worst.witness(d.points()),
        sup_identity: None,
    })
}

/// Norm-function check on a pseudometric space.
pub fn check_norm_function(
    f: &RealFunction,
    d: &Kernel,
    tol: f64,
    verify_sup_identity: bool,
) -> Result<NormFunctionCheck> {
    let report = classify(d, tol);
    if !report.taxonomy.pseudometric {
        let witness = report.witnesses.first().map(|w| w.witness.clone());
        return Err(Error::precondition("d is not a pseudometric", witness));
    }
    let mut check = norm_function_inequalities(f, d, tol)?;
    if verify_sup_identity {
        let n = d.len();
        let identity = (0..n).all(|x| {
            let sup = (0..n)
                .map(|z| d[(x, z)] - f.get(z))
                .fold(f64::NEG_INFINITY, f64::max);
            (sup - f.get(x)).abs() <= tol
        });
        check.sup_identity = Some(identity);
    }
    Ok(check)
}

/// Separable bridge `G(x, y) = f(x) + g(y)`.
pub fn separable_bridge(f: &RealFunction, g: &RealFunction, tol: f64) -> Result<Bridge> {
    let rows = f
        .values()
        .iter()
        .map(|a| g.values().iter().map(|b| a + b).collect())
        .collect();
    validate_bridge(rows, f.points().clone(), g.points().clone(), tol)
}

/// Flood–Pestov bridge G ≥ F built at base point `(x₀, y₀)`:
/// `f(x) = F(x₀, y₀) + F(x, y₀)`, `g(y) = F(x₀, y)`.
pub fn flood_pestov_dominating(f: &Bridge, x0: &str, y0: &str, tol: f64) -> Result<Bridge> {
    let xi = f.x_points.index_of(x0)?;
    let yi = f.y_points.index_of(y0)?;
    let base = f.get(xi, yi);
    let fx = RealFunction::new(
        f.x_points.clone(),
        (0..f.x_points.len()).map(|x| base + f.get(x, yi)).collect(),
    )?;
    let gy = f.row_function(xi);
    separable_bridge(&fx, &gy, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::DEFAULT_TOL;

    fn pts(prefix: &str, n: usize) -> PointSet {
        PointSet::new((0..n).map(|i| format!("{prefix}{i}"))).unwrap()
    }

    fn constant(c: f64, n: usize, m: usize) -> Bridge {
        validate_bridge(vec![vec![c; m]; n], pts("x", n), pts("y", m), DEFAULT_TOL).unwrap()
    }

    #[test]
    fn isolated_entry_breaks_the_bridge_inequality() {
        let err = validate_bridge(
            vec![vec![0.0, 3.0], vec![0.0, 0.0]],
            pts("x", 2),
            pts("y", 2),
            DEFAULT_TOL,
        )
        .unwrap_err();
        match err {
            Error::BridgeViolation { witness } => {
                assert_eq!(witness.indices, vec![0, 1, 1, 0]);
                assert_eq!(witness.labels, vec!["x0", "y1", "x1", "y0"]);
                assert_eq!(witness.magnitude, 3.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn negative_entries_rejected() {
        assert!(matches!(
            validate_bridge(vec![vec![-1.0]], pts("x", 1), pts("y", 1), DEFAULT_TOL),
            Err(Error::NegativeEntry { .. })
        ));
    }

    #[test]
    fn constant_bridge_kernels_and_glue() {
        let c = 1.5;
        let f = constant(c, 2, 2);
        let (kx, ky) = induced_kernels(&f);
        assert_eq!(kx.to_rows(), vec![vec![2.0 * c; 2]; 2]);
        assert_eq!(ky.to_rows(), vec![vec![2.0 * c; 2]; 2]);
        let g = glue(&f, GlueLabels::AsIs).unwrap();
        let (a, b) = (2.0 * c, c);
        assert_eq!(
            g.to_rows(),
            vec![
                vec![a, a, b, b],
                vec![a, a, b, b],
                vec![b, b, a, a],
                vec![b, b, a, a]
            ]
        );
        assert!(classify(&g, DEFAULT_TOL).is_symmetric_distance());

        let single = glue(&constant(c, 1, 1), GlueLabels::AsIs).unwrap();
        assert_eq!(single.to_rows(), vec![vec![2.0 * c, c], vec![c, 2.0 * c]]);
    }

    #[test]
    fn separable_induced_kernel() {
        let f = RealFunction::new(pts("x", 3), vec![0.5, 1.0, 2.0]).unwrap();
        let g = RealFunction::new(pts("y", 2), vec![0.75, 0.25]).unwrap();
        let b = separable_bridge(&f, &g, DEFAULT_TOL).unwrap();
        let (kx, _) = induced_kernels(&b);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(kx[(i, j)], f.get(i) + f.get(j) + 2.0 * 0.25);
            }
        }
    }

    #[test]
    fn glue_label_collision() {
        let f = validate_bridge(vec![vec![1.0]], pts("p", 1), pts("p", 1), DEFAULT_TOL).unwrap();
        assert!(matches!(glue(&f, GlueLabels::AsIs), Err(Error::LabelCollision(l)) if l == "p0"));
        let g = glue(&f, GlueLabels::Prefixed).unwrap();
        assert_eq!(g.points().labels(), &["X:p0", "Y:p0"]);
    }

    #[test]
    fn flood_pestov_of_constant_is_triple() {
        let c = 0.7;
        let g = flood_pestov_dominating(&constant(c, 3, 2), "x1", "y0", DEFAULT_TOL).unwrap();
        for row in g.to_rows() {
            for v in row {
                assert!((v - 3.0 * c).abs() < 1e-15);
            }
        }
        let one = flood_pestov_dominating(&constant(c, 1, 1), "x0", "y0", DEFAULT_TOL).unwrap();
        assert!((one.get(0, 0) - 3.0 * c).abs() < 1e-15);
        assert!(matches!(
            flood_pestov_dominating(&constant(c, 1, 1), "nope", "y0", DEFAULT_TOL),
            Err(Error::UnknownLabel(_))
        ));
    }

    #[test]
    fn flood_pestov_of_separable_bridge() {
        // f(x₀) = 0, so G = F + F(x₀, y₀) + g(y₀).
        let f = RealFunction::new(pts("x", 3), vec![0.0, 1.0, 2.5]).unwrap();
        let g = RealFunction::new(pts("y", 3), vec![0.4, 0.1, 1.2]).unwrap();
        let b = separable_bridge(&f, &g, DEFAULT_TOL).unwrap();
        let fp = flood_pestov_dominating(&b, "x0", "y0", DEFAULT_TOL).unwrap();
        let shift = b.get(0, 0) + g.get(0);
        for x in 0..3 {
            for y in 0..3 {
                assert!((fp.get(x, y) - (b.get(x, y) + shift)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn norm_functions() {
        let d = Kernel::from_rows(vec![
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 1.5],
            vec![2.0, 1.5, 0.0],
        ])
        .unwrap();
        let row = RealFunction::from_row(&d, 1);
        let c = check_norm_function(&row, &d, DEFAULT_TOL, true).unwrap();
        assert!(c.holds);
        assert_eq!(c.sup_identity, Some(true));

        let zero = RealFunction::constant(d.points().clone(), 0.0).unwrap();
        let c = check_norm_function(&zero, &d, DEFAULT_TOL, false).unwrap();
        assert!(!c.holds);
        assert_eq!(c.witness.unwrap().indices, vec![0, 2]);

        // A large constant is a norm function whose sup identity fails.
        let big = RealFunction::constant(d.points().clone(), 10.0).unwrap();
        let c = check_norm_function(&big, &d, DEFAULT_TOL, true).unwrap();
        assert!(c.holds);
        assert_eq!(c.sup_identity, Some(false));

        let not_pseudo = Kernel::from_rows(vec![vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let f = RealFunction::constant(not_pseudo.points().clone(), 1.0).unwrap();
        assert!(check_norm_function(&f, &not_pseudo, DEFAULT_TOL, false).is_err());
    }
}
