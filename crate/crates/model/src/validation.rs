//! Independent checks of first-order (additive) error propagation.
//!
//! The pipeline accumulates stage failure rates by addition, which is the
//! first-order expansion of the exact survival product
//! (1-p) = prod_i (1-p_i)^(n_i). This module evaluates that product
//! exactly, evaluates the additive approximation, and estimates the same
//! probability by seeded Monte Carlo, so the approximation error can be
//! quantified for any stage structure.

use serde::Serialize;

use crate::error::{ModelError, Result};
use crate::warnings::Warning;

/// A protocol as a list of (cycles, per-cycle failure rate) stages.
/// Cycle counts are continuous, matching the pipeline's cycle accounting.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageSpec {
    pub stages: Vec<(f64, f64)>,
}

impl StageSpec {
    pub fn new(stages: Vec<(f64, f64)>) -> Result<Self> {
        for &(cycles, rate) in &stages {
            if !cycles.is_finite() || cycles < 0.0 {
                return Err(ModelError::OutOfRange {
                    name: "cycles",
                    range: "[0, inf)",
                    value: cycles,
                });
            }
            if !rate.is_finite() || !(0.0..=1.0).contains(&rate) {
                return Err(ModelError::OutOfRange {
                    name: "per_cycle_rate",
                    range: "[0, 1]",
                    value: rate,
                });
            }
        }
        Ok(Self { stages })
    }

    /// Per-stage failure probability 1 - (1-p)^n, computed in log space.
    fn stage_failure_probs(&self) -> Vec<f64> {
        self.stages
            .iter()
            .map(|&(cycles, rate)| {
                if cycles == 0.0 || rate == 0.0 {
                    0.0
                } else if rate >= 1.0 {
                    1.0
                } else {
                    -f64::exp_m1(cycles * f64::ln_1p(-rate))
                }
            })
            .collect()
    }
}

/// Exact failure probability 1 - prod_i (1-p_i)^(n_i), via logarithms.
pub fn exact_failure_prob(spec: &StageSpec) -> Result<f64> {
    StageSpec::new(spec.stages.clone())?;
    let mut log_survival = 0.0_f64;
    for &(cycles, rate) in &spec.stages {
        if cycles == 0.0 {
            continue;
        }
        if rate >= 1.0 {
            return Ok(1.0);
        }
        log_survival += cycles * f64::ln_1p(-rate);
    }
    Ok(-f64::exp_m1(log_survival))
}

/// First-order failure probability sum_i n_i * p_i.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproxFailure {
    pub value: f64,
    pub warning: Option<Warning>,
}

/// The additive approximation. May exceed 1; it is returned untruncated
/// with a warning attached when it does.
pub fn approx_failure_prob(spec: &StageSpec) -> Result<ApproxFailure> {
    StageSpec::new(spec.stages.clone())?;
    let mut total = 0.0_f64;
    for &(cycles, rate) in &spec.stages {
        total += cycles * rate;
    }
    Ok(ApproxFailure {
        value: total,
        warning: (total > 1.0).then_some(Warning::RateExceedsUnity { value: total }),
    })
}

/// Monte-Carlo estimate of the exact failure probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    pub failure_prob: f64,
    pub std_error: f64,
    pub trials: u64,
    pub failures: u64,
}

// splitmix64 finalizer: full-avalanche mixing of a 64-bit counter.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

const TRIAL_KEY: u64 = 0x9e3779b97f4a7c15;
const STAGE_KEY: u64 = 0xd1b54a32d192ed03;

/// Uniform draw in [0, 1) keyed on (seed, trial, stage). Counter-based, so
/// any execution order (including parallel) reproduces the same stream.
fn unit_draw(seed: u64, trial: u64, stage: u64) -> f64 {
    let stream = mix(seed ^ trial.wrapping_mul(TRIAL_KEY));
    let bits = mix(stream ^ stage.wrapping_mul(STAGE_KEY).wrapping_add(1));
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Estimate the failure probability by simulation. Each stage fires as a
/// single Bernoulli draw with its aggregate probability 1 - (1-p)^n, which
/// is distributionally identical to n per-cycle draws. Deterministic for a
/// fixed (spec, trials, seed) regardless of evaluation order.
pub fn monte_carlo_failure(spec: &StageSpec, trials: u64, seed: u64) -> Result<MonteCarloEstimate> {
    StageSpec::new(spec.stages.clone())?;
    if trials == 0 {
        return Err(ModelError::Invalid("trials must be >= 1".into()));
    }
    let stage_probs = spec.stage_failure_probs();
    let mut failures = 0u64;
    for trial in 0..trials {
        let failed = stage_probs
            .iter()
            .enumerate()
            .any(|(stage, &p)| unit_draw(seed, trial, stage as u64) < p);
        failures += u64::from(failed);
    }
    let p_hat = failures as f64 / trials as f64;
    Ok(MonteCarloEstimate {
        failure_prob: p_hat,
        std_error: (p_hat * (1.0 - p_hat) / trials as f64).sqrt(),
        trials,
        failures,
    })
}
