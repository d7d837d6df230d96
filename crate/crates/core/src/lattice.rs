//! Chain infima: the largest distance below a nonnegative kernel, the
//! generalized Ŝ(κ, σ), and the right/left domination relations.
//!
//! κ̂(x, y) is the cheapest chain `x = z₀, z₁, …, z_n = y` with at least one
//! step, each step costing κ(zᵢ, zᵢ₊₁). On the complete digraph weighted by κ
//! this is an all-pairs shortest walk with one or more edges. The diagonal is
//! seeded with the self-loop weight κ(x, x), never with 0, so κ̂(x, x) is the
//! cheapest closed walk through x.

use serde::Serialize;

use crate::error::{Error, Result, Witness};
use crate::kernel::Kernel;
use crate::scan::Worst;

/// Cheapest walks of length ≥ 1, plus the first hop of one minimizing walk.
fn closure(k: &Kernel) -> (Vec<f64>, Vec<usize>) {
    let n = k.len();
    let mut d = k.as_slice().to_vec();
    let mut next: Vec<usize> = (0..n * n).map(|ij| ij % n).collect();
    for m in 0..n {
        for i in 0..n {
            let dim = d[i * n + m];
            for j in 0..n {
                let via = dim + d[m * n + j];
                if via < d[i * n + j] {
                    d[i * n + j] = via;
                    next[i * n + j] = next[i * n + m];
                }
            }
        }
    }
    (d, next)
}

/// The largest distance κ̂ ≤ κ.
pub fn hat(k: &Kernel) -> Result<Kernel> {
    k.require_nonnegative()?;
    let (d, _) = closure(k);
    Kernel::from_flat(k.points().clone(), d)
}

/// One minimizing chain for κ̂(x, y), as the full vertex sequence `[x, …, y]`.
pub fn minimizing_chain(k: &Kernel, x: usize, y: usize) -> Result<Vec<usize>> {
    k.require_nonnegative()?;
    let n = k.len();
    if x >= n || y >= n {
        return Err(Error::Dimension {
            expected: format!("indices below {n}"),
            found: format!("({x}, {y})"),
        });
    }
    let (_, next) = closure(k);
    let mut chain = vec![x];
    let mut cur = next[x * n + y];
    chain.push(cur);
    // Pointer chasing terminates on nonnegative weights; the bound guards the loop.
    while cur != y && chain.len() <= n + 1 {
        cur = next[cur * n + y];
        chain.push(cur);
    }
    Ok(chain)
}

/// Ŝ(κ, σ)(x, y) = min(κ(x, y), min_z κ(x, z) + σ̂(z, y)).
///
/// A chain starts with one κ step and continues with σ steps; the empty
/// chain contributes κ(x, y) itself.
pub fn s_hat(k: &Kernel, s: &Kernel) -> Result<Kernel> {
    k.require_same_points(s)?;
    k.require_nonnegative()?;
    s.require_nonnegative()?;
    let n = k.len();
    let (tail, _) = closure(s);
    Kernel::from_fn(k.points().clone(), |x, y| {
        (0..n).fold(k[(x, y)], |best, z| best.min(k[(x, z)] + tail[z * n + y]))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
    Left,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Domination {
    pub side: Side,
    pub holds: bool,
    /// Maximal-violation triple `(x, y, z)`.
    pub witness: Option<Witness>,
}

/// κ ⊴_R σ: κ(x, z) ≤ κ(x, y) + σ(y, z) + tol for all triples.
pub fn dominates_right(k: &Kernel, s: &Kernel, tol: f64) -> Result<Domination> {
    dominates(k, s, tol, Side::Right)
}

/// κ ⊴_L σ: κ(x, z) ≤ σ(x, y) + κ(y, z) + tol for all triples.
pub fn dominates_left(k: &Kernel, s: &Kernel, tol: f64) -> Result<Domination> {
    dominates(k, s, tol, Side::Left)
}

fn dominates(k: &Kernel, s: &Kernel, tol: f64, side: Side) -> Result<Domination> {
    k.require_same_points(s)?;
    let n = k.len();
    let mut worst = Worst::<3>::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let bound = match side {
                    Side::Right => k[(x, y)] + s[(y, z)],
                    Side::Left => s[(x, y)] + k[(y, z)],
                };
                let excess = k[(x, z)] - bound;
                if excess > tol {
                    worst.consider(excess, [x, y, z]);
                }
            }
        }
    }
    Ok(Domination {
        side,
        holds: worst.is_clear(),
        witness: worst.witness(k.points()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, DEFAULT_TOL};
    use crate::kernel::PointSet;

    fn three_point() -> Kernel {
        Kernel::from_rows(vec![
            vec![0.0, 0.0, 2.0],
            vec![0.0, 0.0, 1.0],
            vec![2.0, 1.0, 0.0],
        ])
        .unwrap()
    }

    #[test]
    fn three_point_hat() {
        let h = hat(&three_point()).unwrap();
        assert_eq!(
            h.to_rows(),
            vec![
                vec![0.0, 0.0, 1.0],
                vec![0.0, 0.0, 1.0],
                vec![1.0, 1.0, 0.0]
            ]
        );
        assert_eq!(
            minimizing_chain(&three_point(), 0, 2).unwrap(),
            vec![0, 1, 2]
        );
    }

    #[test]
    fn diagonal_uses_closed_walks() {
        // κ(0,0) = 5 but 0 → 1 → 0 costs 2.
        let k = Kernel::from_rows(vec![vec![5.0, 1.0], vec![1.0, 3.0]]).unwrap();
        let h = hat(&k).unwrap();
        assert_eq!(h.to_rows(), vec![vec![2.0, 1.0], vec![1.0, 2.0]]);
        assert_eq!(minimizing_chain(&k, 0, 0).unwrap(), vec![0, 1, 0]);
        assert!(classify(&h, DEFAULT_TOL).taxonomy.distance);
    }

    #[test]
    fn hat_rejects_negative_entries() {
        let k = Kernel::from_rows(vec![vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        assert!(matches!(
            hat(&k),
            Err(Error::NegativeEntry { row: 0, col: 1, .. })
        ));
    }

    #[test]
    fn distances_are_fixed_points() {
        let d = Kernel::from_rows(vec![
            vec![0.0, 1.0, 2.0],
            vec![0.0, 0.0, 1.0],
            vec![0.0, 0.0, 0.0],
        ])
        .unwrap();
        assert_eq!(hat(&d).unwrap(), d);
        assert_eq!(s_hat(&d, &d).unwrap(), d);
    }

    #[test]
    fn zero_sigma_domination_fails_on_three_point() {
        let k = three_point();
        let zero = Kernel::zeros(PointSet::numbered(3).unwrap());
        let r = dominates_right(&k, &zero, DEFAULT_TOL).unwrap();
        assert!(!r.holds);
        // (0, 0, 2) and (0, 1, 2) tie at 2; the lower tuple wins.
        assert_eq!(r.witness.unwrap().indices, vec![0, 0, 2]);
    }

    #[test]
    fn domination_of_distance_by_itself() {
        let h = hat(&three_point()).unwrap();
        assert!(dominates_right(&h, &h, DEFAULT_TOL).unwrap().holds);
        assert!(dominates_left(&h, &h, DEFAULT_TOL).unwrap().holds);
    }
}
