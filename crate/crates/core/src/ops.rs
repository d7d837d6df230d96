//! Algebra on kernels: transposition, entrywise combinations, the diagonal
//! projections Z and Λ, zero sets, the weak-metric quotient and Lipschitz norms.

use serde::Serialize;

use crate::classify::classify;
use crate::error::{Error, Result, Witness};
use crate::kernel::{Kernel, PointSet, RealFunction};

/// ᵗκ(x, y) = κ(y, x).
pub fn transpose(k: &Kernel) -> Kernel {
    Kernel::from_fn(k.points().clone(), |i, j| k[(j, i)]).expect("entries stay finite")
}

/// Entrywise rule used by [`combine`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Combine {
    Min,
    Max,
    Sum,
    /// `t·κ + (1 − t)·σ`, `0 ≤ t ≤ 1`.
    Convex(f64),
    /// `(κᵖ + σᵖ)^{1/p}`, `p ≥ 1`, nonnegative operands.
    PNorm(f64),
}

pub fn combine(k: &Kernel, s: &Kernel, mode: Combine) -> Result<Kernel> {
    k.require_same_points(s)?;
    match mode {
        Combine::Min => k.zip_with(s, f64::min),
        Combine::Max => k.zip_with(s, f64::max),
        Combine::Sum => k.zip_with(s, |a, b| a + b),
        Combine::Convex(t) => {
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::ParameterOutOfRange {
                    name: "t",
                    value: t,
                });
            }
            k.zip_with(s, |a, b| t * a + (1.0 - t) * b)
        }
        Combine::PNorm(p) => {
            if !(p >= 1.0 && p.is_finite()) {
                return Err(Error::ParameterOutOfRange {
                    name: "p",
                    value: p,
                });
            }
            k.require_nonnegative()?;
            s.require_nonnegative()?;
            if p == 1.0 {
                k.zip_with(s, |a, b| a + b)
            } else {
                k.zip_with(s, |a, b| (a.powf(p) + b.powf(p)).powf(p.recip()))
            }
        }
    }
}

/// `κ ∧ ᵗκ`, `κ ∨ ᵗκ` or `(κᵖ + ᵗκᵖ)^{1/p}`.
pub fn symmetrize(k: &Kernel, mode: Combine) -> Result<Kernel> {
    combine(k, &transpose(k), mode)
}

/// Result of splitting a kernel into its zero-diagonal part and its diagonal part.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalSplit {
    /// Zκ = κ − Λκ, zero on the diagonal.
    pub zero_diagonal: Kernel,
    /// (Λκ)(x, y) = ½[κ(x, x) + κ(y, y)].
    pub diagonal_part: Kernel,
}

pub fn zero_diag_projection(k: &Kernel) -> DiagonalSplit {
    let d = k.diagonal();
    let lambda = Kernel::from_fn(k.points().clone(), |i, j| 0.5 * (d[i] + d[j]))
        .expect("entries stay finite");
    let z = Kernel::from_fn(k.points().clone(), |i, j| {
        if i == j {
            0.0
        } else {
            k[(i, j)] - lambda[(i, j)]
        }
    })
    .expect("entries stay finite");
    DiagonalSplit {
        zero_diagonal: z,
        diagonal_part: lambda,
    }
}

/// κ₀: κ off the diagonal, 0 on it.
pub fn with_zero_diagonal(k: &Kernel) -> Kernel {
    Kernel::from_fn(
        k.points().clone(),
        |i, j| if i == j { 0.0 } else { k[(i, j)] },
    )
    .expect("entries stay finite")
}

/// Indices x with |κ(x, x)| ≤ tol.
pub fn zero_set(k: &Kernel, tol: f64) -> Vec<usize> {
    (0..k.len()).filter(|&i| k[(i, i)].abs() <= tol).collect()
}

/// Weak-metric quotient by the relation κ(x, y) = κ(y, x) = 0.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Quotient {
    #[serde(skip)]
    pub kernel: Kernel,
    /// Member indices of each class, lowest member first; classes ordered by that member.
    pub classes: Vec<Vec<usize>>,
    /// Class index of every original point.
    pub projection: Vec<usize>,
}

/// Collapses points at mutual zero distance. The quotient kernel is indexed by
/// the lowest-index member of each class and takes its values from those
/// representatives.
pub fn quotient(k: &Kernel, tol: f64) -> Result<Quotient> {
    let report = classify(k, tol);
    if !report.taxonomy.weak_metric {
        let witness = report.witnesses.first().map(|w| w.witness.clone());
        return Err(Error::precondition("kernel is not a weak metric", witness));
    }
    let n = k.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for x in 0..n {
        for y in (x + 1)..n {
            if k[(x, y)] <= tol && k[(y, x)] <= tol {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx.max(ry)] = rx.min(ry);
                }
            }
        }
    }
    let mut projection = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        let root = find(&mut parent, x);
        if projection[root] == usize::MAX {
            projection[root] = classes.len();
            classes.push(Vec::new());
        }
        let c = projection[root];
        projection[x] = c;
        classes[c].push(x);
    }

    // Every member pair must reproduce the representative value to 2·tol.
    for cx in &classes {
        for cy in &classes {
            let reference = k[(cx[0], cy[0])];
            for &x in cx {
                for &y in cy {
                    let gap = (k[(x, y)] - reference).abs();
                    if gap > 2.0 * tol {
                        let idx = vec![cx[0], cy[0], x, y];
                        return Err(Error::InconsistentQuotient {
                            witness: Witness::new(idx.clone(), k.points().labels_of(&idx), gap),
                        });
                    }
                }
            }
        }
    }

    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let points = k.points().subset(&reps)?;
    let kernel = Kernel::from_fn(points, |i, j| k[(reps[i], reps[j])])?;
    Ok(Quotient {
        kernel,
        classes,
        projection,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LipNorm {
    pub sup: f64,
    pub lip: f64,
    pub norm: f64,
}

/// `sup |f| ∨ Lip_κ(f)`, with Lip taken against the symmetrized `κ(x, x′) ∨ κ(x′, x)`.
pub fn lip_norm(f: &RealFunction, k: &Kernel) -> Result<LipNorm> {
    if f.points() != k.points() {
        return Err(Error::PointSetMismatch);
    }
    let n = k.len();
    let mut lip: f64 = 0.0;
    for x in 0..n {
        for y in (x + 1)..n {
            let denom = k[(x, y)].max(k[(y, x)]);
            if denom <= 0.0 {
                return Err(Error::DegenerateDenominator(
                    k.points().label(x).to_string(),
                    k.points().label(y).to_string(),
                ));
            }
            lip = lip.max((f.get(x) - f.get(y)).abs() / denom);
        }
    }
    let sup = f.sup_abs();
    Ok(LipNorm {
        sup,
        lip,
        norm: sup.max(lip),
    })
}

/// Relabels class representatives with the member labels of each class.
pub fn class_labels(q: &Quotient, points: &PointSet) -> Vec<Vec<String>> {
    q.classes.iter().map(|c| points.labels_of(c)).collect()
}
