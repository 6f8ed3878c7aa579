//! Per-cycle timing and logical-failure-rate models for neutral-atom code
//! patches.
//!
//! Syndrome extraction on the HGP memories is rearrangement-limited: one
//! cycle costs eight atom rearrangements of `rearrangement_time` each, and
//! gate times are negligible against it. The failure-rate formulas are
//! fitted closed forms; above the fit threshold (p_g = 0.006 for the HGP
//! family, 70*p_g = 1 for surface codes) they are extrapolations and the
//! result is tagged accordingly.

use crate::error::{ensure_probability, ModelError, Result};
use crate::params::PhysicalParams;

/// Gate error at which the HGP failure-rate fit stops shrinking with patch
/// size.
pub const HGP_THRESHOLD_GATE_ERROR: f64 = 0.006;

/// Gate error at which the surface-code fit stops shrinking with distance
/// (70 * p_g = 1).
pub const SURFACE_THRESHOLD_GATE_ERROR: f64 = 1.0 / 70.0;

/// A per-cycle logical failure rate, tagged when the underlying gate error
/// sits at or above the fit threshold (the value is then an extrapolation
/// that grows with code size).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lfr {
    pub value: f64,
    pub above_threshold: bool,
}

fn ensure_patch_size(n: f64) -> Result<()> {
    if !n.is_finite() || n < 1.0 {
        return Err(ModelError::OutOfRange {
            name: "patch_qubits",
            range: "[1, inf)",
            value: n,
        });
    }
    Ok(())
}

/// Time for one atom rearrangement of an n-qubit patch, in seconds.
///
/// 2*tau_t*ln(L) + (3 + 2*sqrt(2))*sqrt(6*L*d_p/a_p) with L = sqrt(n) atoms
/// per rearranged line, evaluated in microseconds and converted. The
/// logarithm is natural.
pub fn rearrangement_time(n: f64, params: &PhysicalParams) -> Result<f64> {
    ensure_patch_size(n)?;
    params.validate()?;
    let line_atoms = n.sqrt();
    let transfer = 2.0 * params.trap_transfer_us * line_atoms.ln();
    let motion = (3.0 + 2.0 * 2.0_f64.sqrt())
        * (6.0 * line_atoms * params.atom_spacing_um / params.acceleration_um_per_us2).sqrt();
    Ok((transfer + motion) * 1e-6)
}

/// Duration of one syndrome-extraction cycle: eight rearrangements.
pub fn cycle_time(n: f64, params: &PhysicalParams) -> Result<f64> {
    Ok(8.0 * rearrangement_time(n, params)?)
}

/// Per-cycle logical failure rate of an n-qubit HGP memory patch:
/// 0.07 * (p_g / 0.006)^(0.47 * n^0.27).
pub fn hgp_lfr_per_cycle(n: f64, gate_error: f64) -> Result<Lfr> {
    ensure_patch_size(n)?;
    ensure_probability("gate_error", gate_error)?;
    let exponent = 0.47 * n.powf(0.27);
    Ok(Lfr {
        value: 0.07 * (gate_error / HGP_THRESHOLD_GATE_ERROR).powf(exponent),
        above_threshold: gate_error >= HGP_THRESHOLD_GATE_ERROR,
    })
}

/// Per-cycle logical failure rate of a distance-d surface code:
/// 0.3 * (70 * p_g)^((d + 1) / 2).
pub fn surface_lfr_per_cycle(distance: f64, gate_error: f64) -> Result<Lfr> {
    if !distance.is_finite() || distance < 1.0 {
        return Err(ModelError::OutOfRange {
            name: "distance",
            range: "[1, inf)",
            value: distance,
        });
    }
    ensure_probability("gate_error", gate_error)?;
    Ok(Lfr {
        value: 0.3 * (70.0 * gate_error).powf((distance + 1.0) / 2.0),
        above_threshold: gate_error >= SURFACE_THRESHOLD_GATE_ERROR,
    })
}

/// Gate error inflated by idling decoherence over one rearrangement:
/// p_g * (1 + 3*t_r(n) / (0.005*T_c)).
pub fn idling_adjusted_gate_error(
    base_gate_error: f64,
    n: f64,
    params: &PhysicalParams,
) -> Result<f64> {
    ensure_probability("gate_error", base_gate_error)?;
    let t_r = rearrangement_time(n, params)?;
    Ok(base_gate_error * (1.0 + 3.0 * t_r / (0.005 * params.coherence_time_s)))
}
