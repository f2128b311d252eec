//! Approximation and exact algorithms for Weighted c-Bond Cover.
//!
//! Given a vertex-weighted multigraph G and an integer c ≥ 1, a *c-bond cover*
//! is a vertex set S such that G − S has no θ_c minor, where θ_c is the
//! two-vertex multigraph with c parallel edges. Equivalently, G − S has no
//! bond (minimal edge cut) with c or more edges.
//!
//! The crate provides
//!
//! * [`solve`], a primal-dual peeling algorithm that repeatedly finds either
//!   a small θ_c-model, a dense cluster collection or a large two-terminal
//!   piece (an *outgrowth*), peels a thin weight layer or shrinks the piece,
//!   and reconstructs a cover backwards;
//! * [`exact_cover`] and friends, exhaustive oracles for small instances;
//! * [`find_theta_model`] and related detection routines;
//! * a plain-text instance format, seeded generators and a benchmark harness.
//!
//! ```
//! use bondcover::{parse_instance, solve, SolveConfig};
//!
//! let g = parse_instance("p bond 2 1\nv 1 5\nv 2 1\ne 1 2 3\n")?;
//! let out = solve(&g, &SolveConfig::new(3))?;
//! assert_eq!(out.weight, bondcover::parse_weight("1")?);
//! # Ok::<(), bondcover::Error>(())
//! ```

mod dense;
pub mod bench;
pub mod detect;
pub mod driver;
pub mod error;
pub mod exact;
pub mod generate;
pub mod io;
pub mod multigraph;
pub mod replacer;
pub mod structure;
pub mod weighting;

#[cfg(test)]
pub(crate) mod test_util;

/// Exact vertex weight.
pub type Weight = num_rational::BigRational;

pub use dense::DENSE_LIMIT;
pub use detect::{
    find_separating_model, find_theta_model, is_theta_free, max_separating_theta, minimize_model,
    model_to_bond, ThetaModel,
};
pub use driver::{reconstruct, solve, verify_cover, PeelEvent, PeelTrace, SolveConfig, Solution};
pub use error::{Error, Result};
pub use exact::{
    anchored_cover, constrained_cover, enumerate_minimal_covers, exact_cover, exact_cover_with,
    exact_cover_restricted, ExactOptions,
};
pub use io::{parse_instance, parse_weight, serialize_instance};
pub use multigraph::{ClusterCollection, VertexId, VertexSet, WeightedMultigraph};
pub use replacer::{lift_solution, replace_outgrowth, ReplacementRecord};
pub use structure::{structure, Outgrowth, StructureOutcome, StructureParams};
pub use weighting::ThinLayer;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/instances.md")]
    mod instances {}
    #[doc = include_str!("../../../book/src/models.md")]
    mod models {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/outgrowths.md")]
    mod outgrowths {}
    #[doc = include_str!("../../../book/src/peeling.md")]
    mod peeling {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}
