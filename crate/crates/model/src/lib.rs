//! Closed-form resource model for entanglement sneakernets built on
//! error-corrected neutral-atom memories.
//!
//! A central hub loads Bell-pair halves into high-rate HGP (hypergraph
//! product) memory patches, drives one set to destination kiosks where
//! they are measured and sold as correlation bits, and later completes
//! delayed-choice entanglement swaps on the retained halves. The crate
//! provides:
//!
//! - per-cycle timing and logical-failure-rate models for HGP and surface
//!   patches, including the idling-error gate adjustment ([`qec`]);
//! - stage-by-stage failure and time accounting for the HGP protocol
//!   ([`pipeline`]) and the surface-code-only baseline ([`surface`]);
//! - inversion utilities: longest tolerable transport time and smallest
//!   viable patch ([`solvers`]);
//! - fleet sizing and per-bit cost economics ([`logistics`]);
//! - exact and Monte-Carlo validation of the additive error propagation
//!   ([`validation`]).
//!
//! Everything is a pure function of its inputs: no global state, no
//! hidden randomness (Monte Carlo is keyed on an explicit seed), so all
//! of it can be evaluated concurrently and reproduces bit for bit.

pub mod codes;
pub mod error;
pub mod logistics;
pub mod params;
pub mod pipeline;
pub mod qec;
pub mod solvers;
pub mod surface;
pub mod validation;
pub mod warnings;

pub use codes::{HgpConfig, SurfaceConfig};
pub use error::{ModelError, Result};
pub use logistics::{
    bandwidth_from_usage, cost_per_bit, fleet_qldpc, fleet_surface, format_dollars,
    BandwidthEstimate, CodeFamily, CostBreakdown, FleetReport, UsageProfile,
};
pub use params::{IdlingMode, PhysicalParams};
pub use pipeline::{
    evaluate, evaluate_code, stage_lfrs, stage_spec, storage_and_swap_lfrs, total_failure_rate,
    Scenario, StageBreakdown,
};
pub use qec::{
    cycle_time, hgp_lfr_per_cycle, idling_adjusted_gate_error, rearrangement_time,
    surface_lfr_per_cycle, Lfr,
};
pub use solvers::{
    max_transport_time, min_hgp_patch, min_surface_patch, SolveResult, DEFAULT_HGP_BRACKET,
    DEFAULT_SURFACE_BRACKET,
};
pub use surface::{
    evaluate_surface, evaluate_surface_code, total_failure_rate_surface, SurfaceBreakdown,
    SurfaceScenario,
};
pub use validation::{
    approx_failure_prob, exact_failure_prob, monte_carlo_failure, ApproxFailure,
    MonteCarloEstimate, StageSpec,
};
pub use warnings::Warning;
