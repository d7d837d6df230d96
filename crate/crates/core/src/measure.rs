//! Kernels acting on a finite probability space.
//!
//! Functions live in discrete L²(μ) with `⟨u, v⟩ = Σ u(z) v(z) μ(z)`. The
//! canonical embedding stores `κ(x, z)·√μ(z)` so plain Euclidean geometry on
//! its rows is the L²(μ) geometry of the rows of κ.

use serde::Serialize;

use crate::classify::{classify, Condition};
use crate::error::{Error, Result, Witness};
use crate::kernel::{Kernel, PointSet, RealFunction};
use crate::ops::{lip_norm, zero_diag_projection};
use crate::scan::Worst;

/// Weights may deviate from a total of 1 by at most this much.
pub const MEASURE_SUM_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasuredSpace {
    points: PointSet,
    weights: Vec<f64>,
}

impl MeasuredSpace {
    pub fn new(points: PointSet, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != points.len() {
            return Err(Error::Dimension {
                expected: format!("{} weights", points.len()),
                found: format!("{} weights", weights.len()),
            });
        }
        if let Some(i) = weights.iter().position(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::InvalidMeasure(format!(
                "weight of `{}` is {}, expected a positive number",
                points.label(i),
                weights[i]
            )));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > MEASURE_SUM_TOL {
            return Err(Error::InvalidMeasure(format!(
                "weights sum to {total}, not 1"
            )));
        }
        Ok(Self { points, weights })
    }

    pub fn uniform(points: PointSet) -> Self {
        let n = points.len();
        Self {
            points,
            weights: vec![1.0 / n as f64; n],
        }
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    fn require_kernel(&self, k: &Kernel) -> Result<()> {
        if k.points() != &self.points {
            return Err(Error::PointSetMismatch);
        }
        Ok(())
    }

    fn require_function(&self, f: &RealFunction) -> Result<()> {
        if f.points() != &self.points {
            return Err(Error::PointSetMismatch);
        }
        Ok(())
    }

    /// ‖f‖₂ in L²(μ).
    pub fn l2_norm(&self, f: &RealFunction) -> Result<f64> {
        self.require_function(f)?;
        Ok(f.values()
            .iter()
            .zip(&self.weights)
            .map(|(v, w)| v * v * w)
            .sum::<f64>()
            .sqrt())
    }
}

/// `(Σ κ(x, y)² μ(x) μ(y))^½`.
pub fn hs_norm(k: &Kernel, m: &MeasuredSpace) -> Result<f64> {
    m.require_kernel(k)?;
    let w = m.weights();
    let mut total = 0.0;
    for (x, wx) in w.iter().enumerate() {
        for (v, wy) in k.row(x).iter().zip(w) {
            total += v * v * wx * wy;
        }
    }
    Ok(total.sqrt())
}

/// `(κ∗φ)(x, y) = Σ_z κ(x, z) φ(z, y) μ(z)`.
pub fn star(k: &Kernel, phi: &Kernel, m: &MeasuredSpace) -> Result<Kernel> {
    m.require_kernel(k)?;
    m.require_kernel(phi)?;
    let n = k.len();
    let w = m.weights();
    let mut out = vec![0.0; n * n];
    for x in 0..n {
        let row = &mut out[x * n..(x + 1) * n];
        for z in 0..n {
            let a = k[(x, z)] * w[z];
            for (o, b) in row.iter_mut().zip(phi.row(z)) {
                *o += a * b;
            }
        }
    }
    Kernel::from_flat(k.points().clone(), out)
}

/// `(κ·f)(x) = Σ_z κ(x, z) f(z) μ(z)`.
pub fn act(k: &Kernel, f: &RealFunction, m: &MeasuredSpace) -> Result<RealFunction> {
    m.require_kernel(k)?;
    m.require_function(f)?;
    let values = (0..k.len())
        .map(|x| {
            k.row(x)
                .iter()
                .zip(f.values())
                .zip(m.weights())
                .map(|((a, b), w)| a * b * w)
                .sum()
        })
        .collect();
    RealFunction::new(k.points().clone(), values)
}

/// Matrix of the integral operator: `T_κ(x, z) = κ(x, z) μ(z)`.
pub fn t_matrix(k: &Kernel, m: &MeasuredSpace) -> Result<Kernel> {
    m.require_kernel(k)?;
    let w = m.weights();
    Kernel::from_fn(k.points().clone(), |x, z| k[(x, z)] * w[z])
}

/// Canonical map `x ↦ κ(x, ·)` in coordinates where L²(μ) is Euclidean.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Embedding {
    pub space: MeasuredSpace,
    /// Row `x` is `(κ(x, z)·√μ(z))_z`.
    pub coords: Vec<Vec<f64>>,
}

impl Embedding {
    pub fn distance(&self, x: usize, y: usize) -> f64 {
        self.coords[x]
            .iter()
            .zip(&self.coords[y])
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// ρ_κ(x, y) = ‖ι_κ(x) − ι_κ(y)‖₂.
    pub fn pseudometric(&self) -> Kernel {
        Kernel::from_fn(self.space.points().clone(), |x, y| self.distance(x, y))
            .expect("distances are finite")
    }
}

pub fn canonical_embedding(k: &Kernel, m: &MeasuredSpace) -> Result<(Embedding, Kernel)> {
    m.require_kernel(k)?;
    let roots: Vec<f64> = m.weights().iter().map(|w| w.sqrt()).collect();
    let coords = (0..k.len())
        .map(|x| k.row(x).iter().zip(&roots).map(|(v, r)| v * r).collect())
        .collect();
    let emb = Embedding {
        space: m.clone(),
        coords,
    };
    let rho = emb.pseudometric();
    Ok((emb, rho))
}

/// ρ_κ alone.
pub fn rho(k: &Kernel, m: &MeasuredSpace) -> Result<Kernel> {
    canonical_embedding(k, m).map(|(_, r)| r)
}

fn require_symmetric(k: &Kernel, tol: f64) -> Result<()> {
    match Condition::Symmetry.worst_violation(k, tol) {
        Some(w) => Err(Error::precondition("κ is not symmetric", Some(w))),
        None => Ok(()),
    }
}

/// `max |Z(κ∗κ)(x, y) + ½ρ_κ(x, y)²|` over all pairs.
pub fn verify_z_rho(k: &Kernel, m: &MeasuredSpace, tol: f64) -> Result<f64> {
    m.require_kernel(k)?;
    require_symmetric(k, tol)?;
    k.require_nonnegative()?;
    let z = zero_diag_projection(&star(k, k, m)?).zero_diagonal;
    let r = rho(k, m)?;
    let n = k.len();
    let mut err: f64 = 0.0;
    for x in 0..n {
        for y in 0..n {
            err = err.max((z[(x, y)] + 0.5 * r[(x, y)] * r[(x, y)]).abs());
        }
    }
    Ok(err)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JNormCheck {
    pub holds: bool,
    /// `1 ∨ max κ`.
    pub factor: f64,
    /// Largest `‖κ·f‖_Lip − factor·‖f‖₂` over the samples.
    pub max_excess: f64,
    /// Index of the first sample exceeding the bound.
    pub failing_sample: Option<usize>,
}

/// `‖κ·f‖_Lip ≤ (1 ∨ max κ)·‖f‖₂` for every sample `f`.
pub fn j_norm_check(
    k: &Kernel,
    m: &MeasuredSpace,
    samples: &[RealFunction],
    tol: f64,
) -> Result<JNormCheck> {
    m.require_kernel(k)?;
    let report = classify(k, tol);
    if !(report.taxonomy.distance && report.conditions.c) {
        let witness = report.witnesses.first().map(|w| w.witness.clone());
        return Err(Error::precondition(
            "κ is not a distance with zero diagonal",
            witness,
        ));
    }
    let factor = k.max_entry().max(1.0);
    let mut max_excess = f64::NEG_INFINITY;
    let mut failing_sample = None;
    for (i, f) in samples.iter().enumerate() {
        let lhs = lip_norm(&act(k, f, m)?, k)?.norm;
        let excess = lhs - factor * m.l2_norm(f)?;
        max_excess = max_excess.max(excess);
        if excess > tol && failing_sample.is_none() {
            failing_sample = Some(i);
        }
    }
    Ok(JNormCheck {
        holds: failing_sample.is_none(),
        factor,
        max_excess,
        failing_sample,
    })
}

fn require_metric(d: &Kernel, tol: f64) -> Result<()> {
    let report = classify(d, tol);
    if report.taxonomy.metric {
        return Ok(());
    }
    let witness = report.witnesses.first().map(|w| w.witness.clone());
    Err(Error::precondition("d is not a metric", witness))
}

/// φ(x) = Σ_z d(x, z) μ(z).
pub fn mean_dist(d: &Kernel, m: &MeasuredSpace, tol: f64) -> Result<RealFunction> {
    m.require_kernel(d)?;
    require_metric(d, tol)?;
    act(d, &RealFunction::constant(d.points().clone(), 1.0)?, m)
}

/// Permutation given as `perm[i] = image of i`.
fn require_bijection(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::NotBijection);
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::NotBijection);
        }
    }
    Ok(())
}

/// Resolves a label map into an index permutation.
pub fn permutation_from_labels(
    points: &PointSet,
    images: &[(String, String)],
) -> Result<Vec<usize>> {
    let mut perm = vec![usize::MAX; points.len()];
    for (from, to) in images {
        perm[points.index_of(from)?] = points.index_of(to)?;
    }
    require_bijection(&perm, points.len())?;
    Ok(perm)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsometryCheck {
    pub holds: bool,
    /// Pair `(x, y)` maximizing `|d(πx, πy) − d(x, y)|`, or the point `x`
    /// maximizing `|μ(πx) − μ(x)|` when distances are preserved.
    pub witness: Option<Witness>,
}

pub fn check_measure_preserving_isometry(
    d: &Kernel,
    m: &MeasuredSpace,
    perm: &[usize],
    tol: f64,
) -> Result<IsometryCheck> {
    m.require_kernel(d)?;
    let n = d.len();
    require_bijection(perm, n)?;
    let mut pairs = Worst::<2>::new();
    for x in 0..n {
        for y in 0..n {
            let gap = (d[(perm[x], perm[y])] - d[(x, y)]).abs();
            if gap > tol {
                pairs.consider(gap, [x, y]);
            }
        }
    }
    let mut points = Worst::<1>::new();
    for (x, &px) in perm.iter().enumerate() {
        let gap = (m.weights()[px] - m.weights()[x]).abs();
        if gap > tol {
            points.consider(gap, [x]);
        }
    }
    let witness = pairs
        .witness(d.points())
        .or_else(|| points.witness(d.points()));
    Ok(IsometryCheck {
        holds: witness.is_none(),
        witness,
    })
}

/// Whether the group generated by `perms` acts transitively on `n` points.
/// The orbit of one point under the generators is the orbit under the group.
pub fn orbit_transitive(perms: &[Vec<usize>], n: usize) -> Result<bool> {
    for p in perms {
        require_bijection(p, n)?;
    }
    if n == 0 {
        return Ok(true);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for p in perms {
            let y = p[x];
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    Ok(count == n)
}
