//! Uniform point separation, bi-Lipschitz constants between comparable
//! kernels, the inverse-map Lipschitz equality for canonical embeddings, and
//! stability of separation under bi-Lipschitz perturbation.
//!
//! The separating set of a pair is
//!
//! ```text
//! E(x, y, ε; d) = { z : |d(x, z) − d(y, z)| ≥ ε·d(x, y) }
//! ```

use serde::Serialize;

use crate::almost::almost_distance_report;
use crate::classify::classify;
use crate::error::{Error, Result, Witness};
use crate::kernel::Kernel;
use crate::measure::{rho, MeasuredSpace};
use crate::scan::Worst;

/// Relative slack on E-set membership, so that `r·d` and `d` agree exactly.
pub const MEMBERSHIP_RTOL: f64 = 1e-12;

/// Twenty log-spaced values from 0.05 to 1.
pub fn default_eps_grid() -> Vec<f64> {
    let (lo, hi) = (0.05f64.ln(), 0.0f64);
    (0..20)
        .map(|i| (lo + (hi - lo) * i as f64 / 19.0).exp())
        .collect()
}

fn require_metric(d: &Kernel, name: &str, tol: f64) -> Result<()> {
    let report = classify(d, tol);
    if report.taxonomy.metric {
        return Ok(());
    }
    let witness = report.witnesses.first().map(|w| w.witness.clone());
    Err(Error::precondition(
        format!("{name} is not a metric"),
        witness,
    ))
}

fn require_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange {
            name: "eps",
            value: eps,
        })
    }
}

#[inline]
fn separates(d: &Kernel, x: usize, y: usize, z: usize, eps: f64) -> bool {
    let (a, b, c) = (d[(x, z)], d[(y, z)], d[(x, y)]);
    (a - b).abs() >= eps * c - MEMBERSHIP_RTOL * a.max(b).max(c)
}

fn e_set_indices(d: &Kernel, x: usize, y: usize, eps: f64) -> Vec<usize> {
    (0..d.len())
        .filter(|&z| separates(d, x, y, z, eps))
        .collect()
}

/// E(x, y, ε; d) as sorted point indices.
pub fn e_set(d: &Kernel, x: &str, y: &str, eps: f64, tol: f64) -> Result<Vec<usize>> {
    let (xi, yi) = (d.points().index_of(x)?, d.points().index_of(y)?);
    if xi == yi {
        return Err(Error::precondition(format!("x = y = `{x}`"), None));
    }
    require_eps(eps)?;
    require_metric(d, "d", tol)?;
    Ok(e_set_indices(d, xi, yi, eps))
}

fn measure_of(m: &MeasuredSpace, set: impl IntoIterator<Item = usize>) -> f64 {
    set.into_iter().map(|z| m.weights()[z]).sum()
}

/// min over x ≠ y of μ(E(x, y, ε; d)).
fn c_value(d: &Kernel, m: &MeasuredSpace, eps: f64) -> f64 {
    let n = d.len();
    let mut c = f64::INFINITY;
    for x in 0..n {
        for y in 0..n {
            if x != y {
                c = c.min(measure_of(m, e_set_indices(d, x, y, eps)));
            }
        }
    }
    c
}

/// Extreme ratios ρ/d over pairs x ≠ y.
fn ratio_range(num: &Kernel, den: &Kernel) -> (f64, f64) {
    let n = den.len();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for x in 0..n {
        for y in 0..n {
            if x != y {
                let r = num[(x, y)] / den[(x, y)];
                lo = lo.min(r);
                hi = hi.max(r);
            }
        }
    }
    (lo, hi)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeparationReport {
    pub eps_grid: Vec<f64>,
    /// c(ε) for each grid value.
    pub c_profile: Vec<f64>,
    /// min ρ_d/d over distinct pairs.
    pub ell: f64,
    /// max ρ_d/d over distinct pairs.
    #[serde(rename = "L")]
    pub big_l: f64,
    /// ell ≥ max over the grid of ε·√c(ε), within tol.
    pub derived_bound_ok: bool,
    /// ell ≤ tol: the canonical map is not bi-Lipschitz.
    pub degenerate: bool,
}

pub fn separation_profile(
    d: &Kernel,
    m: &MeasuredSpace,
    eps_grid: &[f64],
    tol: f64,
) -> Result<SeparationReport> {
    if d.points() != m.points() {
        return Err(Error::PointSetMismatch);
    }
    if d.len() < 2 {
        return Err(Error::precondition("at least two points are needed", None));
    }
    for &eps in eps_grid {
        require_eps(eps)?;
    }
    require_metric(d, "d", tol)?;
    let c_profile: Vec<f64> = eps_grid.iter().map(|&e| c_value(d, m, e)).collect();
    let (ell, big_l) = ratio_range(&rho(d, m)?, d);
    let bound = eps_grid
        .iter()
        .zip(&c_profile)
        .map(|(e, c)| e * c.sqrt())
        .fold(0.0, f64::max);
    Ok(SeparationReport {
        eps_grid: eps_grid.to_vec(),
        c_profile,
        ell,
        big_l,
        derived_bound_ok: ell >= bound - tol,
        degenerate: ell <= tol,
    })
}

/// ℓ(σ, κ) σ ≤ κ ≤ L(σ, κ) σ and u = ln(L/ℓ), evaluated as
/// `ln L(σ, κ) + ln L(κ, σ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BilipConstants {
    pub lower: f64,
    pub upper: f64,
    pub u: f64,
}

pub fn bilip_constants(k: &Kernel, s: &Kernel, tol: f64) -> Result<BilipConstants> {
    k.require_same_points(s)?;
    k.require_nonnegative()?;
    s.require_nonnegative()?;
    let n = k.len();
    let (mut lower, mut upper, mut inverse_upper) = (f64::INFINITY, 0.0f64, 0.0f64);
    for x in 0..n {
        for y in 0..n {
            let (kv, sv) = (k[(x, y)], s[(x, y)]);
            match (sv > tol, kv > tol) {
                (true, true) => {
                    lower = lower.min(kv / sv);
                    upper = upper.max(kv / sv);
                    inverse_upper = inverse_upper.max(sv / kv);
                }
                (false, false) => {}
                _ => {
                    return Err(Error::Incomparable(
                        k.points().label(x).to_string(),
                        k.points().label(y).to_string(),
                    ))
                }
            }
        }
    }
    if !lower.is_finite() {
        return Err(Error::precondition("both kernels vanish identically", None));
    }
    Ok(BilipConstants {
        lower,
        upper,
        u: (upper.ln() + inverse_upper.ln()).max(0.0),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IvtReport {
    /// Exponent of the product norm ρ ⊕ ρ on X × X.
    pub p: f64,
    pub lip_of_kappa: f64,
    pub lip_inverse: f64,
    /// |lip_of_kappa − lip_inverse| ≤ tol.
    pub agree: bool,
}

/// Lipschitz constants of κ on (X × X, ρ_σ ⊕ ρ_σ) and of ι_σ⁻¹ into (X, κ ∨ ᵗκ),
/// with ⊕ the ℓ¹ sum.
pub fn ivt_check(k: &Kernel, s_map: &Kernel, m: &MeasuredSpace, tol: f64) -> Result<IvtReport> {
    ivt_check_pnorm(k, s_map, m, 1.0, tol)
}

/// As [`ivt_check`] with ⊕ the ℓᵖ combination; the equality is only
/// guaranteed for `p = 1`.
pub fn ivt_check_pnorm(
    k: &Kernel,
    s_map: &Kernel,
    m: &MeasuredSpace,
    p: f64,
    tol: f64,
) -> Result<IvtReport> {
    k.require_same_points(s_map)?;
    if p.is_nan() || p < 1.0 {
        return Err(Error::ParameterOutOfRange {
            name: "p",
            value: p,
        });
    }
    let report = classify(k, tol);
    if !report.taxonomy.weak_metric {
        let witness = report.witnesses.first().map(|w| w.witness.clone());
        return Err(Error::precondition("κ is not a weak metric", witness));
    }
    let r = rho(s_map, m)?;
    let n = k.len();
    let mut lip_inverse = 0.0f64;
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            if r[(x, y)] <= tol {
                return Err(Error::NotInjective(
                    k.points().label(x).to_string(),
                    k.points().label(y).to_string(),
                ));
            }
            lip_inverse = lip_inverse.max(k[(x, y)].max(k[(y, x)]) / r[(x, y)]);
        }
    }
    let oplus = |a: f64, b: f64| {
        if p == 1.0 {
            a + b
        } else if p.is_infinite() {
            a.max(b)
        } else {
            (a.powf(p) + b.powf(p)).powf(p.recip())
        }
    };
    let mut lip_of_kappa = 0.0f64;
    for x in 0..n {
        for y in 0..n {
            for x2 in 0..n {
                for y2 in 0..n {
                    let den = oplus(r[(x, x2)], r[(y, y2)]);
                    if den > 0.0 {
                        lip_of_kappa = lip_of_kappa.max((k[(x, y)] - k[(x2, y2)]).abs() / den);
                    }
                }
            }
        }
    }
    Ok(IvtReport {
        p,
        lip_of_kappa,
        lip_inverse,
        agree: (lip_of_kappa - lip_inverse).abs() <= tol,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PerturbationReport {
    /// ℓ d ≤ τ ≤ L d.
    pub ell: f64,
    #[serde(rename = "L")]
    pub big_l: f64,
    /// Least uniform almost-distance constant of δ = L·d − τ.
    pub delta_q: f64,
    pub eps: f64,
    /// ε′ = ε − 2q(1 − ℓ/L).
    pub eps_prime: f64,
    /// 1 − ε/(2q); separation survives when ℓ/L exceeds it.
    pub threshold: f64,
    /// ℓ/L − threshold.
    pub margin: f64,
    /// E(x, y, ε; d) ⊆ E(x, y, ε′; τ) for every pair.
    pub containment_holds: bool,
    /// `(x, y, z)` with z in the first set but not the second.
    pub containment_witness: Option<Witness>,
    /// c(ε) for d.
    pub c_d: f64,
    /// c(ε′) for τ.
    pub c_tau: f64,
}

pub fn perturb_separation(
    d: &Kernel,
    tau: &Kernel,
    m: &MeasuredSpace,
    eps: f64,
    tol: f64,
) -> Result<PerturbationReport> {
    d.require_same_points(tau)?;
    if d.points() != m.points() {
        return Err(Error::PointSetMismatch);
    }
    require_eps(eps)?;
    require_metric(d, "d", tol)?;
    require_metric(tau, "τ", tol)?;
    let b = bilip_constants(tau, d, tol)?;
    let (ell, big_l) = (b.lower, b.upper);
    let mut delta = Vec::with_capacity(d.len() * d.len());
    for (dv, tv) in d.as_slice().iter().zip(tau.as_slice()) {
        let v = big_l * dv - tv;
        delta.push(if v < 0.0 && v >= -tol { 0.0 } else { v });
    }
    let delta = Kernel::from_flat(d.points().clone(), delta)?;
    let q = almost_distance_report(&delta, tol)?
        .uniform_ok_at
        .ok_or_else(|| Error::precondition("L·d − τ is not a uniform almost distance", None))?;
    let threshold = 1.0 - eps / (2.0 * q);
    let ratio = ell / big_l;
    if ratio.is_nan() || ratio <= threshold {
        return Err(Error::precondition(
            format!("ℓ/L = {ratio} does not exceed 1 − ε/(2q) = {threshold}"),
            None,
        ));
    }
    let eps_prime = eps - 2.0 * q * (1.0 - ratio);
    let n = d.len();
    let mut worst = Worst::<3>::new();
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            for z in 0..n {
                if separates(d, x, y, z, eps) && !separates(tau, x, y, z, eps_prime) {
                    let gap = eps_prime * tau[(x, y)] - (tau[(x, z)] - tau[(y, z)]).abs();
                    worst.consider(gap, [x, y, z]);
                }
            }
        }
    }
    Ok(PerturbationReport {
        ell,
        big_l,
        delta_q: q,
        eps,
        eps_prime,
        threshold,
        margin: ratio - threshold,
        containment_holds: worst.is_clear(),
        containment_witness: worst.witness(d.points()),
        c_d: c_value(d, m, eps),
        c_tau: c_value(tau, m, eps_prime),
    })
}
