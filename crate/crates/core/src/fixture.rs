//! Generated test spaces: a uniform grid on [0, 1] and equally spaced points
//! on the unit circle, each with the uniform probability measure.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kernel::{Kernel, PointSet};
use crate::measure::MeasuredSpace;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureKind {
    Interval,
    Circle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureMetric {
    Euclid,
    Arc,
    Chord,
}

impl FromStr for FixtureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "interval" => Ok(Self::Interval),
            "circle" => Ok(Self::Circle),
            _ => Err(Error::InvalidFixture(format!("unknown kind `{s}`"))),
        }
    }
}

impl FromStr for FixtureMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclid" => Ok(Self::Euclid),
            "arc" => Ok(Self::Arc),
            "chord" => Ok(Self::Chord),
            _ => Err(Error::InvalidFixture(format!("unknown metric `{s}`"))),
        }
    }
}

impl fmt::Display for FixtureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Interval => "interval",
            Self::Circle => "circle",
        })
    }
}

impl fmt::Display for FixtureMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Euclid => "euclid",
            Self::Arc => "arc",
            Self::Chord => "chord",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fixture {
    /// Grid coordinate in [0, 1] or angle in [0, 2π).
    pub positions: Vec<f64>,
    pub kernel: Kernel,
    pub space: MeasuredSpace,
}

type DistFn = Box<dyn Fn(usize, usize) -> f64>;

/// `n ≥ 2` points with the uniform measure. On the circle, `euclid` is the
/// chord metric.
pub fn fixture(kind: FixtureKind, n: usize, metric: FixtureMetric) -> Result<Fixture> {
    if n < 2 {
        return Err(Error::InvalidFixture(format!(
            "n = {n}, need at least 2 points"
        )));
    }
    let (positions, dist): (Vec<f64>, DistFn) = match (kind, metric) {
        (FixtureKind::Interval, FixtureMetric::Euclid) => {
            let h = 1.0 / (n - 1) as f64;
            let pos: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
            let p = pos.clone();
            (pos, Box::new(move |i, j| (p[i] - p[j]).abs()))
        }
        (FixtureKind::Interval, m) => {
            return Err(Error::InvalidFixture(format!(
                "metric `{m}` is not defined on the interval"
            )))
        }
        (FixtureKind::Circle, m) => {
            let step = 2.0 * PI / n as f64;
            let pos = (0..n).map(|i| i as f64 * step).collect();
            let arc = m == FixtureMetric::Arc;
            (
                pos,
                Box::new(move |i, j| {
                    let k = i.abs_diff(j);
                    let k = k.min(n - k) as f64;
                    if arc {
                        k * step
                    } else {
                        2.0 * (0.5 * k * step).sin()
                    }
                }),
            )
        }
    };
    let points = PointSet::numbered(n)?;
    let kernel = Kernel::from_fn(points.clone(), dist)?;
    Ok(Fixture {
        positions,
        kernel,
        space: MeasuredSpace::uniform(points),
    })
}
