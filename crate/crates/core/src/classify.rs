//! The six kernel conditions and the taxonomy built from them.
//!
//! | condition | statement |
//! |-----------|-----------|
//! | (a) | κ(x,z) ≤ κ(x,y) + κ(y,z) |
//! | (b) | κ(x,y) ≥ 0 |
//! | (c) | κ(x,x) = 0 |
//! | (d) | κ(x,y) = 0 and κ(y,x) = 0 imply x = y |
//! | (e) | κ(x,y) = 0 implies x = y |
//! | (f) | κ(x,y) = κ(y,x) |
//!
//! Every check takes an explicit tolerance: a condition holds iff no tuple
//! violates it by more than `tol`. For (d) and (e), a value counts as zero
//! when its absolute value is at most `tol`, and the witness magnitude is
//! `tol - |value|` (the most clearly vanishing pair wins).

use serde::Serialize;

use crate::error::Witness;
use crate::kernel::Kernel;
use crate::scan::Worst;

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Condition {
    #[serde(rename = "a")]
    Triangle,
    #[serde(rename = "b")]
    Nonnegative,
    #[serde(rename = "c")]
    ZeroDiagonal,
    #[serde(rename = "d")]
    MutualSeparation,
    #[serde(rename = "e")]
    Separation,
    #[serde(rename = "f")]
    Symmetry,
}

impl Condition {
    pub const ALL: [Condition; 6] = [
        Condition::Triangle,
        Condition::Nonnegative,
        Condition::ZeroDiagonal,
        Condition::MutualSeparation,
        Condition::Separation,
        Condition::Symmetry,
    ];

    /// Number of points in a tuple for this condition.
    pub fn arity(self) -> usize {
        match self {
            Condition::Triangle => 3,
            Condition::ZeroDiagonal => 1,
            _ => 2,
        }
    }

    /// Violation magnitude of `tuple`, or `None` when the tuple complies.
    pub fn violation(self, k: &Kernel, tuple: &[usize], tol: f64) -> Option<f64> {
        assert_eq!(tuple.len(), self.arity(), "wrong tuple arity for {self:?}");
        match self {
            Condition::Triangle => {
                let (x, y, z) = (tuple[0], tuple[1], tuple[2]);
                let excess = k[(x, z)] - k[(x, y)] - k[(y, z)];
                (excess > tol).then_some(excess)
            }
            Condition::Nonnegative => {
                let v = -k[(tuple[0], tuple[1])];
                (v > tol).then_some(v)
            }
            Condition::ZeroDiagonal => {
                let v = k[(tuple[0], tuple[0])].abs();
                (v > tol).then_some(v)
            }
            Condition::MutualSeparation => {
                let (x, y) = (tuple[0], tuple[1]);
                let v = k[(x, y)].abs().max(k[(y, x)].abs());
                (x != y && v <= tol).then_some(tol - v)
            }
            Condition::Separation => {
                let (x, y) = (tuple[0], tuple[1]);
                let v = k[(x, y)].abs();
                (x != y && v <= tol).then_some(tol - v)
            }
            Condition::Symmetry => {
                let (x, y) = (tuple[0], tuple[1]);
                let v = (k[(x, y)] - k[(y, x)]).abs();
                (v > tol).then_some(v)
            }
        }
    }

    /// Maximal violation over all tuples, ties broken by the lowest tuple.
    pub fn worst_violation(self, k: &Kernel, tol: f64) -> Option<Witness> {
        let n = k.len();
        match self.arity() {
            1 => {
                let mut worst = Worst::<1>::new();
                for x in 0..n {
                    if let Some(m) = self.violation(k, &[x], tol) {
                        worst.consider(m, [x]);
                    }
                }
                worst.witness(k.points())
            }
            2 => {
                let mut worst = Worst::<2>::new();
                for x in 0..n {
                    for y in 0..n {
                        if let Some(m) = self.violation(k, &[x, y], tol) {
                            worst.consider(m, [x, y]);
                        }
                    }
                }
                worst.witness(k.points())
            }
            _ => {
                let mut worst = Worst::<3>::new();
                for x in 0..n {
                    for y in 0..n {
                        for z in 0..n {
                            let excess = k[(x, z)] - k[(x, y)] - k[(y, z)];
                            if excess > tol {
                                worst.consider(excess, [x, y, z]);
                            }
                        }
                    }
                }
                worst.witness(k.points())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Conditions {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
    pub e: bool,
    pub f: bool,
}

impl Conditions {
    pub fn get(&self, c: Condition) -> bool {
        match c {
            Condition::Triangle => self.a,
            Condition::Nonnegative => self.b,
            Condition::ZeroDiagonal => self.c,
            Condition::MutualSeparation => self.d,
            Condition::Separation => self.e,
            Condition::Symmetry => self.f,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Taxonomy {
    pub distance: bool,
    pub weak_metric: bool,
    pub multimetric: bool,
    pub quasi_metric: bool,
    pub pseudometric: bool,
    pub metric: bool,
}

impl From<Conditions> for Taxonomy {
    fn from(c: Conditions) -> Self {
        let distance = c.a && c.b;
        let weak_metric = distance && c.c;
        let multimetric = weak_metric && c.d;
        Taxonomy {
            distance,
            weak_metric,
            multimetric,
            quasi_metric: multimetric && c.e,
            pseudometric: weak_metric && c.f,
            metric: multimetric && c.e && c.f,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionWitness {
    pub condition: Condition,
    #[serde(flatten)]
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub tol: f64,
    pub conditions: Conditions,
    pub taxonomy: Taxonomy,
    pub witnesses: Vec<ConditionWitness>,
}

impl ClassificationReport {
    pub fn witness(&self, c: Condition) -> Option<&Witness> {
        self.witnesses
            .iter()
            .find(|w| w.condition == c)
            .map(|w| &w.witness)
    }

    pub fn is_symmetric_distance(&self) -> bool {
        self.taxonomy.distance && self.conditions.f
    }
}

/// Evaluates (a)–(f) on `k` and derives the taxonomy.
pub fn classify(k: &Kernel, tol: f64) -> ClassificationReport {
    let mut flags = [true; 6];
    let mut witnesses = Vec::new();
    for (slot, c) in flags.iter_mut().zip(Condition::ALL) {
        if let Some(w) = c.worst_violation(k, tol) {
            *slot = false;
            witnesses.push(ConditionWitness {
                condition: c,
                witness: w,
            });
        }
    }
    let conditions = Conditions {
        a: flags[0],
        b: flags[1],
        c: flags[2],
        d: flags[3],
        e: flags[4],
        f: flags[5],
    };
    ClassificationReport {
        tol,
        conditions,
        taxonomy: conditions.into(),
        witnesses,
    }
}

/// Just condition (a) and (b).
pub fn is_distance(k: &Kernel, tol: f64) -> bool {
    Condition::Nonnegative.worst_violation(k, tol).is_none()
        && Condition::Triangle.worst_violation(k, tol).is_none()
}
