//! Dense kernels over a finite, labeled point set.
//!
//! A [`Kernel`] is an arbitrary real function of two points, stored as a
//! row-major `n × n` matrix whose rows and columns follow the order of its
//! [`PointSet`]. Nothing about the triangle inequality, symmetry or the
//! diagonal is assumed here; see [`crate::classify`] for that.

use std::collections::HashMap;
use std::fmt;
use std::ops::Index;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Ordered set of distinct point labels.
#[derive(Clone)]
pub struct PointSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl PointSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self { labels, index })
    }

    /// Points labeled `p0`, `p1`, ...
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| format!("p{i}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Labels for a tuple of indices.
    pub fn labels_of(&self, indices: &[usize]) -> Vec<String> {
        indices.iter().map(|&i| self.labels[i].clone()).collect()
    }

    /// Subset of labels selected by index.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        Self::new(self.labels_of(indices))
    }
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels.serialize(s)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.labels).finish()
    }
}

/// Square real matrix indexed by a point set.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel {
    points: PointSet,
    values: Vec<f64>,
}

impl Kernel {
    pub fn new(points: PointSet, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = points.len();
        if rows.len() != n {
            return Err(Error::Dimension {
                expected: format!("{n} rows"),
                found: format!("{} rows", rows.len()),
            });
        }
        let mut values = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension {
                    expected: format!("{n} columns in row {i}"),
                    found: format!("{} columns", row.len()),
                });
            }
            values.extend(row);
        }
        Self::from_flat(points, values)
    }

    /// Kernel over `p0..p{n-1}` built from literal rows.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(PointSet::numbered(rows.len())?, rows)
    }

    pub fn from_flat(points: PointSet, values: Vec<f64>) -> Result<Self> {
        let n = points.len();
        if values.len() != n * n {
            return Err(Error::Dimension {
                expected: format!("{} entries", n * n),
                found: format!("{} entries", values.len()),
            });
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: k / n,
                col: k % n,
            });
        }
        Ok(Self { points, values })
    }

    pub fn from_fn(points: PointSet, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let n = points.len();
        let mut values = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                values.push(f(i, j));
            }
        }
        Self::from_flat(points, values)
    }

    pub fn zeros(points: PointSet) -> Self {
        let n = points.len();
        Self {
            points,
            values: vec![0.0; n * n],
        }
    }

    pub fn constant(points: PointSet, c: f64) -> Result<Self> {
        let n = points.len();
        Self::from_flat(points, vec![c; n * n])
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.len();
        &self.values[i * n..(i + 1) * n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.values
            .chunks(self.len())
            .map(<[f64]>::to_vec)
            .collect()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.get(i, i)).collect()
    }

    /// Entrywise image under `f`. The result must stay finite.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_flat(
            self.points.clone(),
            self.values.iter().map(|&v| f(v)).collect(),
        )
    }

    /// Entrywise combination with a kernel over the same point set.
    pub fn zip_with(&self, other: &Kernel, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.require_same_points(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Self::from_flat(self.points.clone(), values)
    }

    pub fn scale(&self, r: f64) -> Result<Self> {
        self.map(|v| r * v)
    }

    pub fn max_entry(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_entry(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Largest `|self - other|` over all entries.
    pub fn max_abs_diff(&self, other: &Kernel) -> Result<f64> {
        self.require_same_points(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// `self ≤ other + tol` entrywise.
    pub fn le_within(&self, other: &Kernel, tol: f64) -> bool {
        self.points == other.points
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| *a <= b + tol)
    }

    pub fn require_same_points(&self, other: &Kernel) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::Dimension {
                expected: format!("{} points", self.len()),
                found: format!("{} points", other.len()),
            });
        }
        if self.points != other.points {
            return Err(Error::PointSetMismatch);
        }
        Ok(())
    }

    /// Fails on the first negative entry (members of K⁺ only).
    pub fn require_nonnegative(&self) -> Result<()> {
        let n = self.len();
        match self.values.iter().position(|&v| v < 0.0) {
            Some(k) => Err(Error::NegativeEntry {
                row: k / n,
                col: k % n,
                value: self.values[k],
            }),
            None => Ok(()),
        }
    }
}

impl Index<(usize, usize)> for Kernel {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.values[i * self.len() + j]
    }
}

/// Real-valued function on a point set.
#[derive(Clone, Debug, PartialEq)]
pub struct RealFunction {
    points: PointSet,
    values: Vec<f64>,
}

impl RealFunction {
    pub fn new(points: PointSet, values: Vec<f64>) -> Result<Self> {
        if values.len() != points.len() {
            return Err(Error::Dimension {
                expected: format!("{} values", points.len()),
                found: format!("{} values", values.len()),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: i, col: 0 });
        }
        Ok(Self { points, values })
    }

    pub fn constant(points: PointSet, c: f64) -> Result<Self> {
        let n = points.len();
        Self::new(points, vec![c; n])
    }

    /// The row `κ(x, ·)` as a function.
    pub fn from_row(kernel: &Kernel, x: usize) -> Self {
        Self {
            points: kernel.points().clone(),
            values: kernel.row(x).to_vec(),
        }
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn sup_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn sub(&self, other: &RealFunction) -> Result<Self> {
        if self.points != other.points {
            return Err(Error::PointSetMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        Self::new(self.points.clone(), values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_labels_rejected() {
        assert!(matches!(
            PointSet::new(["a", "b", "a"]),
            Err(Error::DuplicateLabel(l)) if l == "a"
        ));
        assert!(matches!(
            PointSet::new(Vec::<String>::new()),
            Err(Error::EmptyPointSet)
        ));
    }

    #[test]
    fn ragged_and_nonfinite_rows_rejected() {
        assert!(Kernel::from_rows(vec![vec![0.0, 1.0], vec![0.0]]).is_err());
        assert!(matches!(
            Kernel::from_rows(vec![vec![0.0, f64::NAN], vec![0.0, 0.0]]),
            Err(Error::NonFinite { row: 0, col: 1 })
        ));
    }

    #[test]
    fn index_follows_row_major_order() {
        let k = Kernel::from_rows(vec![vec![0.0, 1.0], vec![2.0, 3.0]]).unwrap();
        assert_eq!(k[(1, 0)], 2.0);
        assert_eq!(k.row(1), &[2.0, 3.0]);
        assert_eq!(k.points().index_of("p1").unwrap(), 1);
    }
}
