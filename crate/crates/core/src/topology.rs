//! The κ-topology on a finite point set: the coarsest topology in which every
//! row `κ(x, ·)` and every column `κ(·, x)` is continuous.
//!
//! Open sets are bitmasks over point indices. On a finite set the generated
//! topology is determined by the minimal neighbourhood of each point (the
//! intersection of all subbasis sets containing it); a set is open iff it
//! contains the minimal neighbourhood of each of its points.

use crate::error::{Error, Result};
use crate::kernel::Kernel;

pub const DEFAULT_MAX_POINTS: usize = 12;
/// Hard ceiling; the enumeration walks all `2^n` subsets.
pub const MAX_POINTS_LIMIT: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Topology {
    n: usize,
    open_sets: Vec<u32>,
}

impl Topology {
    pub fn len(&self) -> usize {
        self.open_sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.open_sets.is_empty()
    }

    /// Open sets in increasing bitmask order.
    pub fn open_sets(&self) -> &[u32] {
        &self.open_sets
    }

    pub fn contains(&self, set: u32) -> bool {
        self.open_sets.binary_search(&set).is_ok()
    }

    pub fn full(&self) -> u32 {
        full_mask(self.n)
    }

    pub fn is_discrete(&self) -> bool {
        self.open_sets.len() == 1 << self.n
    }

    pub fn is_indiscrete(&self) -> bool {
        self.open_sets == [0, self.full()] || (self.n == 0 && self.open_sets == [0])
    }

    /// Members of each open set as index lists.
    pub fn as_index_sets(&self) -> Vec<Vec<usize>> {
        self.open_sets.iter().map(|&m| members(m, self.n)).collect()
    }

    /// Closed under pairwise union and intersection, with ∅ and X present.
    pub fn satisfies_axioms(&self) -> bool {
        if !self.contains(0) || !self.contains(self.full()) {
            return false;
        }
        self.open_sets.iter().all(|&a| {
            self.open_sets
                .iter()
                .all(|&b| self.contains(a | b) && self.contains(a & b))
        })
    }
}

fn full_mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

pub(crate) fn members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask & (1 << i) != 0).collect()
}

/// U^R[ε, x](y) and U^L[ε, x](y) for every ε in the grid and every x, y.
pub fn subbasis(k: &Kernel, eps_grid: &[f64]) -> Vec<u32> {
    let n = k.len();
    let mut sets = Vec::with_capacity(2 * n * n * eps_grid.len());
    for &eps in eps_grid {
        for x in 0..n {
            for y in 0..n {
                let mut right = 0u32;
                let mut left = 0u32;
                for z in 0..n {
                    if (k[(x, z)] - k[(x, y)]).abs() < eps {
                        right |= 1 << z;
                    }
                    if (k[(z, x)] - k[(y, x)]).abs() < eps {
                        left |= 1 << z;
                    }
                }
                sets.push(right);
                sets.push(left);
            }
        }
    }
    sets.sort_unstable();
    sets.dedup();
    sets
}

/// Grid that realizes every distinct subbasis set: midpoints between
/// consecutive distinct gaps `|κ(x,z) − κ(x,y)|`, `|κ(z,x) − κ(y,x)|`, plus
/// one value above the largest gap.
pub fn default_eps_grid(k: &Kernel) -> Vec<f64> {
    let n = k.len();
    let mut gaps = Vec::with_capacity(2 * n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                gaps.push((k[(x, z)] - k[(x, y)]).abs());
                gaps.push((k[(z, x)] - k[(y, x)]).abs());
            }
        }
    }
    gaps.sort_unstable_by(f64::total_cmp);
    gaps.dedup();
    let mut grid: Vec<f64> = gaps.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    let top = gaps.last().copied().unwrap_or(0.0);
    grid.push(top + 1.0);
    grid
}

pub fn kappa_topology(k: &Kernel, eps_grid: &[f64], max_points: usize) -> Result<Topology> {
    let n = k.len();
    let cap = max_points.min(MAX_POINTS_LIMIT);
    if n > cap {
        return Err(Error::TooManyPoints { n, max: cap });
    }
    if let Some(&bad) = eps_grid.iter().find(|e| !(**e > 0.0 && e.is_finite())) {
        return Err(Error::ParameterOutOfRange {
            name: "eps",
            value: bad,
        });
    }
    let full = full_mask(n);
    let sub = subbasis(k, eps_grid);
    let neighbourhood: Vec<u32> = (0..n)
        .map(|p| {
            sub.iter()
                .filter(|&&s| s & (1 << p) != 0)
                .fold(full, |acc, &s| acc & s)
        })
        .collect();
    let open_sets = (0..=full)
        .filter(|&set| (0..n).all(|p| set & (1 << p) == 0 || neighbourhood[p] & !set == 0))
        .collect();
    Ok(Topology { n, open_sets })
}
