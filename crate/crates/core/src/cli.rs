//! Command-line front end. Every subcommand reads kernel or bridge files
//! (`-` for standard input), calls one library routine and prints a JSON
//! report on standard output.
//!
//! Exit codes: 0 on success, 1 when an input violates a precondition, 2 on
//! usage, I/O or parse errors. Failures print `{"code", "message", "witness"}`
//! on standard error.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::almost::almost_distance_report;
use crate::bridge::{flood_pestov_dominating, glue, norm_function_inequalities, GlueLabels};
use crate::classify::{classify, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::fixture::{fixture, FixtureKind, FixtureMetric};
use crate::io::{
    emit, emit_value, parse_bridge, parse_kernel, read_source, BridgeFile, KernelFile, LoadedKernel,
};
use crate::kernel::Kernel;
use crate::lattice::{hat, minimizing_chain, s_hat};
use crate::measure::{canonical_embedding, mean_dist, star};
use crate::ops::{quotient, symmetrize, zero_diag_projection, Combine};
use crate::separation::{bilip_constants, default_eps_grid, ivt_check_pnorm, separation_profile};
use crate::topology::{
    default_eps_grid as topology_grid, kappa_topology, members, DEFAULT_MAX_POINTS,
};

#[derive(Debug, Parser)]
#[command(name = "kcalc", version, about = "Finite kernel and distance calculus")]
struct Cli {
    /// Comparison tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Kernel file (JSON or CSV), `-` for standard input.
    input: PathBuf,
}

#[derive(Debug, Args)]
struct Pair {
    /// First kernel (κ).
    kappa: PathBuf,
    /// Second kernel (σ).
    sigma: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SymMode {
    Min,
    Max,
    Sum,
    Pnorm,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Interval,
    Circle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MetricArg {
    Euclid,
    Arc,
    Chord,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Conditions (a)–(f) and the resulting taxonomy.
    Classify {
        #[command(flatten)]
        input: Input,
        /// Also report the almost-distance constants.
        #[arg(long)]
        almost: bool,
    },
    /// Largest distance below a nonnegative kernel.
    Hat {
        #[command(flatten)]
        input: Input,
        /// Include one minimizing chain per pair.
        #[arg(long)]
        chains: bool,
    },
    /// Ŝ(κ, σ): chains with one κ step followed by σ steps.
    Shat(Pair),
    /// κ ∧ ᵗκ, κ ∨ ᵗκ, κ + ᵗκ or (κᵖ + ᵗκᵖ)^{1/p}.
    Symmetrize {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "max")]
        mode: SymMode,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
    },
    /// Split into zero-diagonal and diagonal parts.
    Zerodiag(Input),
    /// Collapse points at mutual zero distance.
    Quotient(Input),
    /// Open sets of the κ-topology.
    Topology {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',')]
        eps_grid: Option<Vec<f64>>,
        #[arg(long, default_value_t = DEFAULT_MAX_POINTS)]
        max_points: usize,
    },
    /// Glue a bridge into a symmetric distance on the disjoint union.
    Glue {
        /// Bridge file, `-` for standard input.
        bridge: PathBuf,
        /// Prefix labels with `X:` and `Y:`.
        #[arg(long)]
        prefix: bool,
    },
    /// Separable bridge dominating the input, built at a base pair.
    FpBridge {
        bridge: PathBuf,
        /// Base pair as `X_LABEL,Y_LABEL`.
        #[arg(long, value_delimiter = ',', num_args = 1, required = true)]
        base: Vec<String>,
    },
    /// Canonical embedding into L²(μ) and its pseudometric.
    Embed(Input),
    /// κ ∗ φ against the measure of κ; φ defaults to κ.
    Convolve {
        kappa: PathBuf,
        phi: Option<PathBuf>,
    },
    /// Mean distance function of a metric.
    Meandist(Input),
    /// Separation profile c(ε) and bi-Lipschitz constants of the canonical map.
    Separation {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',')]
        eps_grid: Option<Vec<f64>>,
    },
    /// ℓ(σ, κ), L(σ, κ) and u = ln(L/ℓ).
    Udist(Pair),
    /// Lipschitz constants of κ and of the inverse canonical map of σ.
    Ivt {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
    },
    /// Generate an interval or circle fixture.
    Fixture {
        #[arg(value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "euclid")]
        metric: MetricArg,
    },
}

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
    tol: f64,
}

impl Ctx<'_> {
    fn text(&mut self, path: &Path) -> Result<String> {
        if path.as_os_str() == "-" {
            if self.stdin_used {
                return Err(Error::Parse("standard input can be read only once".into()));
            }
            self.stdin_used = true;
        }
        read_source(path, self.stdin)
    }

    fn kernel(&mut self, path: &Path) -> Result<LoadedKernel> {
        let text = self.text(path)?;
        parse_kernel(&text)
    }
}

fn kernel_value(k: &Kernel) -> Value {
    serde_json::to_value(KernelFile::from_kernel(k, None)).expect("kernel serializes")
}

fn execute(cmd: Command, ctx: &mut Ctx) -> Result<String> {
    let tol = ctx.tol;
    let out = match cmd {
        Command::Classify { input, almost } => {
            let k = ctx.kernel(&input.input)?.kernel;
            let mut v = serde_json::to_value(classify(&k, tol)).expect("report serializes");
            if almost {
                v["almost_distance"] = serde_json::to_value(almost_distance_report(&k, tol)?)
                    .expect("report serializes");
            }
            emit_value(&v)
        }
        Command::Hat { input, chains } => {
            let k = ctx.kernel(&input.input)?.kernel;
            let mut v = kernel_value(&hat(&k)?);
            if chains {
                let n = k.len();
                let mut all = Vec::with_capacity(n);
                for x in 0..n {
                    let mut row = Vec::with_capacity(n);
                    for y in 0..n {
                        row.push(k.points().labels_of(&minimizing_chain(&k, x, y)?));
                    }
                    all.push(row);
                }
                v["chains"] = json!(all);
            }
            emit_value(&v)
        }
        Command::Shat(p) => {
            let k = ctx.kernel(&p.kappa)?.kernel;
            let s = ctx.kernel(&p.sigma)?.kernel;
            emit_value(&kernel_value(&s_hat(&k, &s)?))
        }
        Command::Symmetrize { input, mode, p } => {
            let k = ctx.kernel(&input.input)?.kernel;
            let mode = match mode {
                SymMode::Min => Combine::Min,
                SymMode::Max => Combine::Max,
                SymMode::Sum => Combine::Sum,
                SymMode::Pnorm => Combine::PNorm(p),
            };
            emit_value(&kernel_value(&symmetrize(&k, mode)?))
        }
        Command::Zerodiag(input) => {
            let split = zero_diag_projection(&ctx.kernel(&input.input)?.kernel);
            emit_value(&json!({
                "zero_diagonal": kernel_value(&split.zero_diagonal),
                "diagonal_part": kernel_value(&split.diagonal_part),
            }))
        }
        Command::Quotient(input) => {
            let k = ctx.kernel(&input.input)?.kernel;
            let q = quotient(&k, tol)?;
            let classes: Vec<Vec<String>> =
                q.classes.iter().map(|c| k.points().labels_of(c)).collect();
            emit_value(&json!({
                "kernel": kernel_value(&q.kernel),
                "classes": classes,
                "projection": q.projection,
            }))
        }
        Command::Topology {
            input,
            eps_grid,
            max_points,
        } => {
            let k = ctx.kernel(&input.input)?.kernel;
            let grid = eps_grid.unwrap_or_else(|| topology_grid(&k));
            let t = kappa_topology(&k, &grid, max_points)?;
            let open: Vec<Vec<String>> = t
                .open_sets()
                .iter()
                .map(|&s| k.points().labels_of(&members(s, k.len())))
                .collect();
            emit_value(&json!({
                "points": k.points().labels(),
                "eps_grid": grid,
                "open_sets": open,
                "count": t.len(),
                "discrete": t.is_discrete(),
                "indiscrete": t.is_indiscrete(),
            }))
        }
        Command::Glue { bridge, prefix } => {
            let b = parse_bridge(&ctx.text(&bridge)?, tol)?;
            let labels = if prefix {
                GlueLabels::Prefixed
            } else {
                GlueLabels::AsIs
            };
            emit_value(&kernel_value(&glue(&b, labels)?))
        }
        Command::FpBridge { bridge, base } => {
            let [x0, y0] = base.as_slice() else {
                return Err(Error::Parse(format!(
                    "--base expects X_LABEL,Y_LABEL, got {} values",
                    base.len()
                )));
            };
            let b = parse_bridge(&ctx.text(&bridge)?, tol)?;
            emit(&BridgeFile::from_bridge(&flood_pestov_dominating(
                &b, x0, y0, tol,
            )?))
        }
        Command::Embed(input) => {
            let l = ctx.kernel(&input.input)?;
            let (emb, rho) = canonical_embedding(&l.kernel, &l.space)?;
            emit_value(&json!({
                "points": l.kernel.points().labels(),
                "measure": l.space.weights(),
                "coords": emb.coords,
                "rho": rho.to_rows(),
            }))
        }
        Command::Convolve { kappa, phi } => {
            let l = ctx.kernel(&kappa)?;
            let phi = match phi {
                Some(p) => ctx.kernel(&p)?.kernel,
                None => l.kernel.clone(),
            };
            let out = star(&l.kernel, &phi, &l.space)?;
            let m = l.explicit_measure.then_some(&l.space);
            emit(&KernelFile::from_kernel(&out, m))
        }
        Command::Meandist(input) => {
            let l = ctx.kernel(&input.input)?;
            let phi = mean_dist(&l.kernel, &l.space, tol)?;
            let mean: f64 = phi
                .values()
                .iter()
                .zip(l.space.weights())
                .map(|(a, w)| a * w)
                .sum();
            let norm = norm_function_inequalities(&phi, &l.kernel, tol)?;
            emit_value(&json!({
                "points": l.kernel.points().labels(),
                "values": phi.values(),
                "mean": mean,
                "min": phi.min(),
                "norm_function": norm.holds,
            }))
        }
        Command::Separation { input, eps_grid } => {
            let l = ctx.kernel(&input.input)?;
            let grid = eps_grid.unwrap_or_else(default_eps_grid);
            emit(&separation_profile(&l.kernel, &l.space, &grid, tol)?)
        }
        Command::Udist(p) => {
            let k = ctx.kernel(&p.kappa)?.kernel;
            let s = ctx.kernel(&p.sigma)?.kernel;
            emit(&bilip_constants(&k, &s, tol)?)
        }
        Command::Ivt { pair, p } => {
            let l = ctx.kernel(&pair.kappa)?;
            let s = ctx.kernel(&pair.sigma)?.kernel;
            emit(&ivt_check_pnorm(&l.kernel, &s, &l.space, p, tol)?)
        }
        Command::Fixture { kind, n, metric } => {
            let kind = match kind {
                KindArg::Interval => FixtureKind::Interval,
                KindArg::Circle => FixtureKind::Circle,
            };
            let metric = match metric {
                MetricArg::Euclid => FixtureMetric::Euclid,
                MetricArg::Arc => FixtureMetric::Arc,
                MetricArg::Chord => FixtureMetric::Chord,
            };
            let f = fixture(kind, n, metric)?;
            emit(&KernelFile::from_kernel(&f.kernel, Some(&f.space)))
        }
    };
    Ok(out)
}

fn error_object(e: &Error) -> Value {
    let mut v = json!({ "code": e.code(), "message": e.to_string() });
    if let Some(w) = e.witness() {
        v["witness"] = serde_json::to_value(w).expect("witness serializes");
    }
    v
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                2
            } else {
                let _ = write!(stdout, "{}", e.render());
                0
            };
            return code;
        }
    };
    if !(cli.tol >= 0.0 && cli.tol.is_finite()) {
        let e = Error::ParameterOutOfRange {
            name: "tol",
            value: cli.tol,
        };
        let _ = write!(stderr, "{}", emit_value(&error_object(&e)));
        return 2;
    }
    let mut ctx = Ctx {
        stdin,
        stdin_used: false,
        tol: cli.tol,
    };
    match execute(cli.command, &mut ctx) {
        Ok(text) => match stdout.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(_) => 2,
        },
        Err(e) => {
            let _ = write!(stderr, "{}", emit_value(&error_object(&e)));
            if e.is_input_error() {
                2
            } else {
                1
            }
        }
    }
}
