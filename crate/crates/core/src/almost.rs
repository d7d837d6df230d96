//! q-almost distances: κ(x, z) ≤ q·[κ(x, y) + κ(y, z)], and the uniform
//! variant that also bounds both reverse-triangle defects
//!
//! ```text
//! (R1)  |κ(x,z) − κ(y,z)| ≤ 2q·[κ(x,y) ∨ κ(y,x)]
//! (R2)  |κ(x,z) − κ(x,y)| ≤ 2q·[κ(z,y) ∨ κ(y,z)]
//! ```
//!
//! for every triple.

use serde::{Serialize, Serializer};

use crate::classify::classify;
use crate::error::{Error, Result, Witness};
use crate::kernel::Kernel;
use crate::scan::Worst;

pub(crate) fn serialize_q<S: Serializer>(q: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if q.is_finite() {
        s.serialize_f64(*q)
    } else {
        s.serialize_str("inf")
    }
}

/// Smallest q for which κ is a q-almost distance; `f64::INFINITY` when none.
///
/// Triples whose left side is at most `tol` impose nothing. A triple with a
/// left side above `tol` and a right side at most `tol` makes κ unbounded.
/// Returns 0 when no triple constrains q.
pub fn minimal_q(k: &Kernel, tol: f64) -> Result<f64> {
    Ok(minimal_q_with_witness(k, tol)?.0)
}

fn minimal_q_with_witness(k: &Kernel, tol: f64) -> Result<(f64, Option<Witness>)> {
    k.require_nonnegative()?;
    let n = k.len();
    let mut worst = Worst::<3>::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let num = k[(x, z)];
                if num <= tol {
                    continue;
                }
                let den = k[(x, y)] + k[(y, z)];
                let ratio = if den <= tol { f64::INFINITY } else { num / den };
                worst.consider(ratio, [x, y, z]);
            }
        }
    }
    let w = worst.witness(k.points());
    Ok((w.as_ref().map_or(0.0, |w| w.magnitude), w))
}

/// Least q satisfying one reverse-triangle bound, with its maximizing triple.
fn reverse_bound_q(k: &Kernel, tol: f64, second: bool) -> (f64, Option<Witness>) {
    let n = k.len();
    let mut worst = Worst::<3>::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (lhs, scale) = reverse_terms(k, x, y, z, second);
                if lhs <= tol {
                    continue;
                }
                let q = if scale <= tol {
                    f64::INFINITY
                } else {
                    lhs / (2.0 * scale)
                };
                worst.consider(q, [x, y, z]);
            }
        }
    }
    let w = worst.witness(k.points());
    (w.as_ref().map_or(0.0, |w| w.magnitude), w)
}

#[inline]
fn reverse_terms(k: &Kernel, x: usize, y: usize, z: usize, second: bool) -> (f64, f64) {
    if second {
        ((k[(x, z)] - k[(x, y)]).abs(), k[(z, y)].max(k[(y, z)]))
    } else {
        ((k[(x, z)] - k[(y, z)]).abs(), k[(x, y)].max(k[(y, x)]))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniformCheck {
    pub q: f64,
    /// (R1) holds for every triple.
    pub first_bound: bool,
    /// (R2) holds for every triple.
    pub second_bound: bool,
    pub first_witness: Option<Witness>,
    pub second_witness: Option<Witness>,
}

/// The two reverse-triangle bounds at `q` for one specific triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TripleBounds {
    pub first_bound: bool,
    pub second_bound: bool,
}

pub fn triple_bounds(
    k: &Kernel,
    q: f64,
    (x, y, z): (usize, usize, usize),
    tol: f64,
) -> TripleBounds {
    let holds = |second| {
        let (lhs, scale) = reverse_terms(k, x, y, z, second);
        lhs <= 2.0 * q * scale + tol
    };
    TripleBounds {
        first_bound: holds(false),
        second_bound: holds(true),
    }
}

/// Checks (R1) and (R2) over all triples at `q ≥ 1/2`.
pub fn uniform_check(k: &Kernel, q: f64, tol: f64) -> Result<UniformCheck> {
    if q.is_nan() || q < 0.5 {
        return Err(Error::ParameterOutOfRange {
            name: "q",
            value: q,
        });
    }
    k.require_nonnegative()?;
    let n = k.len();
    let mut first = Worst::<3>::new();
    let mut second = Worst::<3>::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (lhs, scale) = reverse_terms(k, x, y, z, false);
                let excess = lhs - 2.0 * q * scale;
                if excess > tol {
                    first.consider(excess, [x, y, z]);
                }
                let (lhs, scale) = reverse_terms(k, x, y, z, true);
                let excess = lhs - 2.0 * q * scale;
                if excess > tol {
                    second.consider(excess, [x, y, z]);
                }
            }
        }
    }
    Ok(UniformCheck {
        q,
        first_bound: first.is_clear(),
        second_bound: second.is_clear(),
        first_witness: first.witness(k.points()),
        second_witness: second.witness(k.points()),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlmostDistanceReport {
    #[serde(serialize_with = "serialize_q")]
    pub minimal_q: f64,
    /// Least q ≥ 1/2 at which κ is a uniform q-almost distance.
    pub uniform_ok_at: Option<f64>,
    pub triangle_witness: Option<Witness>,
    pub first_bound_witness: Option<Witness>,
    pub second_bound_witness: Option<Witness>,
}

impl AlmostDistanceReport {
    pub fn is_almost_distance(&self) -> bool {
        self.minimal_q.is_finite()
    }
}

/// Closed form for the least uniform q: each triple contributes a ratio,
/// and the answer is the largest of ½, the triangle ratio and both reverse ratios.
pub fn almost_distance_report(k: &Kernel, tol: f64) -> Result<AlmostDistanceReport> {
    let (mq, triangle_witness) = minimal_q_with_witness(k, tol)?;
    let (q1, first_bound_witness) = reverse_bound_q(k, tol, false);
    let (q2, second_bound_witness) = reverse_bound_q(k, tol, true);
    let q = 0.5f64.max(mq).max(q1).max(q2);
    Ok(AlmostDistanceReport {
        minimal_q: mq,
        uniform_ok_at: q.is_finite().then_some(q),
        triangle_witness,
        first_bound_witness,
        second_bound_witness,
    })
}

/// Ratio bounds ℓσ ≤ κ ≤ Lσ against a distance σ and the almost-distance
/// constants they imply.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BilipAlmostBounds {
    pub lower: f64,
    pub upper: f64,
    /// L/ℓ: κ is an (L/ℓ)-almost distance.
    #[serde(serialize_with = "serialize_q")]
    pub q_bound: f64,
    /// (1 − ℓ)/(1 − L) for σ − κ, present when L < 1.
    pub complement_q_bound: Option<f64>,
}

pub fn bilip_almost_bounds(k: &Kernel, s: &Kernel, tol: f64) -> Result<BilipAlmostBounds> {
    k.require_same_points(s)?;
    k.require_nonnegative()?;
    let report = classify(s, tol);
    if !report.taxonomy.distance {
        let witness = report.witnesses.first().map(|w| w.witness.clone());
        return Err(Error::precondition("σ is not a distance", witness));
    }
    let n = k.len();
    let mut lower = f64::INFINITY;
    let mut upper: f64 = 0.0;
    for x in 0..n {
        for y in 0..n {
            if s[(x, y)] > tol {
                let r = k[(x, y)] / s[(x, y)];
                lower = lower.min(r);
                upper = upper.max(r);
            } else if k[(x, y)] > tol {
                return Err(Error::Incomparable(
                    k.points().label(x).to_string(),
                    k.points().label(y).to_string(),
                ));
            }
        }
    }
    if !lower.is_finite() {
        return Err(Error::precondition("σ vanishes identically", None));
    }
    let q_bound = if lower > 0.0 {
        upper / lower
    } else {
        f64::INFINITY
    };
    Ok(BilipAlmostBounds {
        lower,
        upper,
        q_bound,
        complement_q_bound: (upper < 1.0).then(|| (1.0 - lower) / (1.0 - upper)),
    })
}

/// Entrywise power κ^e (κ ≥ 0).
pub fn entrywise_power(k: &Kernel, e: f64) -> Result<Kernel> {
    k.require_nonnegative()?;
    k.map(|v| v.powf(e))
}
