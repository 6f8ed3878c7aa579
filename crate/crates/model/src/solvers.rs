//! Inversion of the total-failure-rate model: longest tolerable transport
//! time at a target rate, and smallest patch meeting a target at fixed
//! transport time.
//!
//! The total rate is exactly affine in transport time, so that inversion is
//! closed form. Patch-size inversion bisects the (monotone-decreasing)
//! rate-vs-size curve; the bracket is monotonicity-checked first and a
//! linear scan recovers a valid sub-bracket if the check fails.

use serde::Serialize;

use crate::codes::{HgpConfig, SurfaceConfig};
use crate::error::{ensure_non_negative, ModelError, Result};
use crate::params::PhysicalParams;
use crate::pipeline::total_failure_rate;
use crate::qec::{cycle_time, hgp_lfr_per_cycle};
use crate::surface::total_failure_rate_surface;

/// Default patch-size bracket for HGP solves, physical qubits.
pub const DEFAULT_HGP_BRACKET: (f64, f64) = (5_000.0, 500_000.0);

/// Default patch-size bracket for surface solves, physical qubits.
pub const DEFAULT_SURFACE_BRACKET: (f64, f64) = (4.0, 100_000.0);

/// Relative residual tolerance for feasible solves.
pub const RESIDUAL_REL_TOL: f64 = 1e-9;

const MAX_ITERATIONS: u32 = 200;

/// Outcome of an inversion query.
///
/// `residual` is the forward-evaluated total rate at `value` minus the
/// target. Feasible interior solutions satisfy |residual| <= 1e-9 * target;
/// a min-patch query whose target is already met at the bracket's lower
/// edge returns that edge with a non-positive residual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolveResult {
    pub value: f64,
    pub feasible: bool,
    pub residual: f64,
    pub iterations: u32,
}

fn ensure_target(target: f64) -> Result<()> {
    if !target.is_finite() || target <= 0.0 || target >= 1.0 {
        return Err(ModelError::OutOfRange {
            name: "target_total_rate",
            range: "(0, 1)",
            value: target,
        });
    }
    Ok(())
}

/// Longest transport time whose total failure rate stays at `target`.
///
/// Uses the affine structure r_total(T) = A + B*T with
/// B = 4 * R_L(n_m) / t_cyc(n_m): two transported-memory legs plus the
/// equal storage contribution. When even T = 0 overshoots the target the
/// query is infeasible and the value is clamped to zero, never negative.
pub fn max_transport_time(
    code: &HgpConfig,
    params: &PhysicalParams,
    target_total_rate: f64,
) -> Result<SolveResult> {
    ensure_target(target_total_rate)?;
    let base = total_failure_rate(code, params, 0.0)?;
    let gate_error = params.effective_gate_error(code.memory_qubits)?;
    let slope = 4.0 * hgp_lfr_per_cycle(code.memory_qubits, gate_error)?.value
        / cycle_time(code.memory_qubits, params)?;

    let t = (target_total_rate - base) / slope;
    if t < 0.0 {
        return Ok(SolveResult {
            value: 0.0,
            feasible: false,
            residual: base - target_total_rate,
            iterations: 0,
        });
    }
    let residual = total_failure_rate(code, params, t)? - target_total_rate;
    Ok(SolveResult {
        value: t,
        feasible: residual.abs() <= RESIDUAL_REL_TOL * target_total_rate,
        residual,
        iterations: 0,
    })
}

/// Bisection on a decreasing rate-vs-size curve.
fn min_patch<F>(rate_at: F, target: f64, bracket: (f64, f64)) -> Result<SolveResult>
where
    F: Fn(f64) -> Result<f64>,
{
    ensure_target(target)?;
    let (lo, hi) = bracket;
    if !(lo.is_finite() && hi.is_finite()) || lo < 1.0 || hi <= lo {
        return Err(ModelError::Invalid(format!(
            "bracket [{lo}, {hi}] must satisfy 1 <= lo < hi"
        )));
    }

    let rate_lo = rate_at(lo)?;
    let rate_hi = rate_at(hi)?;
    if rate_lo <= target {
        // Already met at the smallest patch considered.
        return Ok(SolveResult {
            value: lo,
            feasible: true,
            residual: rate_lo - target,
            iterations: 0,
        });
    }
    if rate_hi > target {
        // Unbracketed: even the largest patch misses the target.
        return Ok(SolveResult {
            value: hi,
            feasible: false,
            residual: rate_hi - target,
            iterations: 0,
        });
    }

    // The curve should fall from rate_lo to rate_hi; confirm on a coarse
    // grid and, if it wobbles, narrow to the last descending crossing.
    let (mut lo, mut hi) = (lo, hi);
    let mut prev = rate_lo;
    let mut monotone = true;
    const PROBES: usize = 16;
    for i in 1..=PROBES {
        let x = bracket.0 + (bracket.1 - bracket.0) * i as f64 / PROBES as f64;
        let r = rate_at(x)?;
        if r > prev {
            monotone = false;
            break;
        }
        prev = r;
    }
    if !monotone {
        // Linear scan for a descending crossing of the target.
        const SCAN: usize = 512;
        let mut found = false;
        let mut left = bracket.0;
        let mut r_left = rate_lo;
        for i in 1..=SCAN {
            let x = bracket.0 + (bracket.1 - bracket.0) * i as f64 / SCAN as f64;
            let r = rate_at(x)?;
            if r_left > target && r <= target {
                lo = left;
                hi = x;
                found = true;
                break;
            }
            left = x;
            r_left = r;
        }
        if !found {
            return Ok(SolveResult {
                value: hi,
                feasible: false,
                residual: rate_hi - target,
                iterations: 0,
            });
        }
    }

    let mut iterations = 0;
    let mut residual = f64::INFINITY;
    let mut mid = 0.5 * (lo + hi);
    while iterations < MAX_ITERATIONS {
        mid = 0.5 * (lo + hi);
        let r = rate_at(mid)?;
        residual = r - target;
        iterations += 1;
        if residual.abs() <= RESIDUAL_REL_TOL * target {
            break;
        }
        if r > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * mid {
            break;
        }
    }
    Ok(SolveResult {
        value: mid,
        feasible: residual.abs() <= RESIDUAL_REL_TOL * target,
        residual,
        iterations,
    })
}

/// Smallest HGP memory patch meeting `target` at the given transport time.
pub fn min_hgp_patch(
    transport_time_s: f64,
    params: &PhysicalParams,
    target_total_rate: f64,
    bracket: (f64, f64),
) -> Result<SolveResult> {
    ensure_non_negative("transport_time_s", transport_time_s)?;
    min_patch(
        |n| total_failure_rate(&HgpConfig { memory_qubits: n }, params, transport_time_s),
        target_total_rate,
        bracket,
    )
}

/// Smallest surface patch meeting `target` at the given transport time.
pub fn min_surface_patch(
    transport_time_s: f64,
    params: &PhysicalParams,
    target_total_rate: f64,
    bracket: (f64, f64),
) -> Result<SolveResult> {
    ensure_non_negative("transport_time_s", transport_time_s)?;
    min_patch(
        |n| {
            total_failure_rate_surface(&SurfaceConfig { patch_qubits: n }, params, transport_time_s)
        },
        target_total_rate,
        bracket,
    )
}
