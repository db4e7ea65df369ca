//! Fair panel selection with proportional representation guarantees.
//!
//! A population lives in a metric space; a panel of `k` seats should give
//! every person the same chance `k/N` of selection (fairness) while every
//! realized panel stays close to the core, i.e. no sufficiently large group
//! could pick a panel of its entitled size that serves all its members much
//! better.
//!
//! The crate provides the FairGreedyCapture selector ([`fgc_distribution`]),
//! uniform and augmented selectors, an auditing algorithm and exact oracles
//! for ex post, ex ante and expected-cost versions of the core.

pub mod allocation;
pub mod audit;
pub mod birkhoff;
pub mod error;
pub mod fixtures;
pub mod metric;
pub mod scalar;
pub mod selectors;

pub use audit::{
    audit_panel, exact_core_violation, exante_exact, exante_monte_carlo, expected_cost_core_violation, opt_social_cost,
    partition_by_topq, social_cost, AuditReport, CoreViolationResult, ExAnteSource, ExactOracle, SocialCostMethod,
};
pub use allocation::{fractional_allocation, Ball, FractionalAllocation};
pub use birkhoff::{
    birkhoff_decompose, capacitated_decompose, complete_bistochastic, decompose_permutations, distribution_from_allocation,
    fgc_distribution, fgc_distribution_with, sample_panel, BirkhoffDecomposition, FgcOptions, PanelDistribution, PanelTerm,
    Route, SquareBistochastic,
};
pub use error::{Error, Result};
pub use metric::{MetricInstance, Panel};
pub use scalar::{BigRational, Improvement, Rational, Scalar};
pub use selectors::{afgc_sample, uniform_sample, AfgcSampler, Selector, SelectorConfig, SelectorKind};

/// Instance with double-precision distances.
pub type Metric = MetricInstance<f64>;
/// Instance with single-precision distances.
pub type Metric32 = MetricInstance<f32>;
/// Instance with exact rational distances.
pub type ExactMetric = MetricInstance<Rational>;
