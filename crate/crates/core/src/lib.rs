//! Finite kernels and the distances they generate.
//!
//! A kernel is any real function of two points of a finite labeled set. The
//! crate classifies kernels by the usual metric axioms, computes the largest
//! distance below a kernel, measures how far a kernel is from satisfying the
//! triangle inequality, glues two spaces along a bridge, and studies kernels
//! as integral operators on a finite probability space.
//!
//! ```
//! use kernel_calculus::{classify, hat, Kernel, DEFAULT_TOL};
//!
//! let k = Kernel::from_rows(vec![
//!     vec![0.0, 0.0, 2.0],
//!     vec![0.0, 0.0, 1.0],
//!     vec![2.0, 1.0, 0.0],
//! ])
//! .unwrap();
//! assert!(!classify(&k, DEFAULT_TOL).conditions.a);
//! let d = hat(&k).unwrap();
//! assert_eq!(d[(0, 2)], 1.0);
//! assert!(classify(&d, DEFAULT_TOL).taxonomy.distance);
//! ```

pub mod almost;
pub mod bridge;
pub mod classify;
pub mod cli;
pub mod error;
pub mod fixture;
pub mod io;
pub mod kernel;
pub mod lattice;
pub mod measure;
pub mod ops;
pub mod separation;
pub mod topology;

mod scan;

pub use almost::{
    almost_distance_report, bilip_almost_bounds, entrywise_power, minimal_q, triple_bounds,
    uniform_check, AlmostDistanceReport, BilipAlmostBounds, TripleBounds, UniformCheck,
};
pub use bridge::{
    check_norm_function, flood_pestov_dominating, glue, induced_kernels,
    norm_function_inequalities, separable_bridge, validate_bridge, Bridge, GlueLabels,
    NormFunctionCheck,
};
pub use classify::{
    classify, is_distance, ClassificationReport, Condition, Conditions, Taxonomy, DEFAULT_TOL,
};
pub use error::{Error, Result, Witness};
pub use fixture::{fixture, Fixture, FixtureKind, FixtureMetric};
pub use kernel::{Kernel, PointSet, RealFunction};
pub use lattice::{
    dominates_left, dominates_right, hat, minimizing_chain, s_hat, Domination, Side,
};
pub use measure::{
    act, canonical_embedding, check_measure_preserving_isometry, hs_norm, j_norm_check, mean_dist,
    orbit_transitive, rho, star, t_matrix, verify_z_rho, Embedding, MeasuredSpace,
};
pub use ops::{
    combine, lip_norm, quotient, symmetrize, transpose, with_zero_diagonal, zero_diag_projection,
    zero_set, Combine, LipNorm, Quotient,
};
pub use separation::{
    bilip_constants, e_set, ivt_check, perturb_separation, separation_profile, BilipConstants,
    IvtReport, PerturbationReport, SeparationReport,
};
pub use topology::{kappa_topology, Topology};
