//! Random generators and brute-force oracles shared by the integration tests.
//! Oracles use plain nested loops over `Vec<Vec<f64>>` and never call the
//! routine they check.

#![allow(dead_code)]

use kernel_calculus::{hat, Kernel, MeasuredSpace, PointSet};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Matrix = Vec<Vec<f64>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn kernel(rows: Matrix) -> Kernel {
    Kernel::from_rows(rows).unwrap()
}

pub fn random_matrix(rng: &mut impl Rng, n: usize, lo: f64, hi: f64) -> Matrix {
    (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(lo..=hi)).collect())
        .collect()
}

pub fn random_kernel(rng: &mut impl Rng, n: usize, lo: f64, hi: f64) -> Kernel {
    kernel(random_matrix(rng, n, lo, hi))
}

pub fn random_symmetric(rng: &mut impl Rng, n: usize, lo: f64, hi: f64) -> Matrix {
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(lo..=hi);
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    m
}

/// Hat of a random symmetric zero-diagonal kernel with positive off-diagonal
/// entries, checked to separate points.
pub fn random_metric(rng: &mut impl Rng, n: usize) -> Kernel {
    let mut m = random_symmetric(rng, n, 0.5, 10.0);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    let d = hat(&kernel(m)).unwrap();
    for i in 0..n {
        for j in 0..n {
            assert!(
                i == j || d[(i, j)] > 0.0,
                "generated metric fails to separate"
            );
        }
    }
    d
}

pub fn random_measure(rng: &mut impl Rng, points: &PointSet) -> MeasuredSpace {
    let raw: Vec<f64> = (0..points.len())
        .map(|_| rng.gen_range(0.1..=1.0))
        .collect();
    let total: f64 = raw.iter().sum();
    MeasuredSpace::new(points.clone(), raw.iter().map(|w| w / total).collect()).unwrap()
}

pub fn rows(k: &Kernel) -> Matrix {
    k.to_rows()
}

/// Cheapest chain cost between every ordered pair, by enumerating every walk
/// with between 1 and `max_len` steps.
pub fn brute_force_hat(k: &Matrix, max_len: usize) -> Matrix {
    let n = k.len();
    let mut best = vec![vec![f64::INFINITY; n]; n];
    fn walk(
        k: &Matrix,
        start: usize,
        at: usize,
        cost: f64,
        steps: usize,
        max_len: usize,
        best: &mut Matrix,
    ) {
        if steps == max_len {
            return;
        }
        for next in 0..k.len() {
            let c = cost + k[at][next];
            if c < best[start][next] {
                best[start][next] = c;
            }
            walk(k, start, next, c, steps + 1, max_len, best);
        }
    }
    for start in 0..n {
        walk(k, start, start, 0.0, 0, max_len, &mut best);
    }
    best
}

/// Cost of a chain `[z₀, …, z_m]`.
pub fn chain_cost(k: &Matrix, chain: &[usize]) -> f64 {
    chain.windows(2).map(|w| k[w[0]][w[1]]).sum()
}

pub fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn triangle_ok(k: &Matrix, tol: f64) -> bool {
    let n = k.len();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| k[x][z] <= k[x][y] + k[y][z] + tol)))
}

pub fn symmetric(k: &Matrix) -> bool {
    let n = k.len();
    (0..n).all(|x| (0..n).all(|y| k[x][y] == k[y][x]))
}

pub fn le(a: &Matrix, b: &Matrix, tol: f64) -> bool {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .all(|(x, y)| *x <= *y + tol)
}

pub fn right_dominated(k: &Matrix, s: &Matrix, tol: f64) -> bool {
    let n = k.len();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| k[x][z] <= k[x][y] + s[y][z] + tol)))
}

pub fn left_dominated(k: &Matrix, s: &Matrix, tol: f64) -> bool {
    let n = k.len();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| k[x][z] <= s[x][y] + k[y][z] + tol)))
}

/// Largest κ(x,z)/(κ(x,y)+κ(y,z)), skipping triples with κ(x,z) ≤ tol.
pub fn ratio_q(k: &Matrix, tol: f64) -> f64 {
    let n = k.len();
    let mut q: f64 = 0.0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if k[x][z] <= tol {
                    continue;
                }
                let den = k[x][y] + k[y][z];
                q = q.max(if den <= tol {
                    f64::INFINITY
                } else {
                    k[x][z] / den
                });
            }
        }
    }
    q
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b[0].len();
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..inner).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Euclidean distance between rows of κ weighted by μ.
pub fn weighted_row_distance(k: &Matrix, w: &[f64], x: usize, y: usize) -> f64 {
    k[x].iter()
        .zip(&k[y])
        .zip(w)
        .map(|((a, b), m)| (a - b) * (a - b) * m)
        .sum::<f64>()
        .sqrt()
}

/// Bridge inequality over all quadruples.
pub fn bridge_ok(f: &Matrix, tol: f64) -> bool {
    let (n, m) = (f.len(), f[0].len());
    for x1 in 0..n {
        for y1 in 0..m {
            for x2 in 0..n {
                for y2 in 0..m {
                    if f[x1][y1] - f[x2][y2] > f[x1][y2] + f[x2][y1] + tol {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn labels(prefix: &str, n: usize) -> PointSet {
    PointSet::new((0..n).map(|i| format!("{prefix}{i}"))).unwrap()
}

/// A valid bridge: the larger of a separable bridge built from norm
/// functions and the cross block of a metric on X ⊔ Y, plus a constant.
pub fn random_bridge(rng: &mut impl Rng, n: usize, m: usize) -> Matrix {
    let dx = random_metric(rng, n);
    let dy = random_metric(rng, m);
    let (x0, y0) = (rng.gen_range(0..n), rng.gen_range(0..m));
    let eps = rng.gen_range(0.0..1.0);
    let f: Vec<f64> = (0..n).map(|x| dx[(x0, x)] + eps).collect();
    let g: Vec<f64> = (0..m).map(|y| dy[(y0, y)] + eps).collect();
    let joint = random_metric(rng, n + m);
    let c = rng.gen_range(0.0..2.0);
    let use_metric = rng.gen_bool(0.5);
    (0..n)
        .map(|x| {
            (0..m)
                .map(|y| {
                    let sep = f[x] + g[y];
                    let base = if use_metric {
                        sep.max(joint[(x, n + y)])
                    } else {
                        sep
                    };
                    base + c
                })
                .collect()
        })
        .collect()
}

pub mod strategy {
    use super::Matrix;
    use proptest::collection::vec;
    use proptest::prelude::*;

    pub fn square(max_n: usize, lo: f64, hi: f64) -> impl Strategy<Value = Matrix> {
        (1..=max_n).prop_flat_map(move |n| vec(vec(lo..=hi, n), n))
    }

    /// Two matrices of the same size.
    pub fn pair(max_n: usize, lo: f64, hi: f64) -> impl Strategy<Value = (Matrix, Matrix)> {
        (1..=max_n).prop_flat_map(move |n| (vec(vec(lo..=hi, n), n), vec(vec(lo..=hi, n), n)))
    }

    pub fn symmetric_zero_diagonal(
        max_n: usize,
        lo: f64,
        hi: f64,
    ) -> impl Strategy<Value = Matrix> {
        square(max_n, lo, hi).prop_map(|mut m| {
            let n = m.len();
            for i in 0..n {
                m[i][i] = 0.0;
                for j in 0..i {
                    m[i][j] = m[j][i];
                }
            }
            m
        })
    }
}
