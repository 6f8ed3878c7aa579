use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, ensure_probability, Result};

/// How idling decoherence enters the two-qubit gate error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdlingMode {
    /// `gate_error` is used as-is for every patch. The default preset bakes
    /// the worst-case (100k-qubit) idling inflation into a flat 0.001.
    Fixed,
    /// `gate_error` is treated as the bare gate error and inflated per patch
    /// by the rearrangement-time adjustment before any failure rate is
    /// evaluated.
    PerPatch,
}

/// Hardware constants of the neutral-atom platform.
///
/// Times that are microsecond-scale by nature (`trap_transfer_us`,
/// `gate_time_s` excepted) are stored in their natural unit and converted to
/// seconds at the formula boundary; everything downstream of this struct is
/// in seconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Transfer time between atomic traps, in microseconds.
    pub trap_transfer_us: f64,
    /// Maximum atom acceleration, in micrometers per microsecond squared.
    pub acceleration_um_per_us2: f64,
    /// Atom spacing in the code lattice, in micrometers.
    pub atom_spacing_um: f64,
    /// One-qubit gate time, in seconds.
    pub gate_time_s: f64,
    /// Qubit coherence time, in seconds.
    pub coherence_time_s: f64,
    /// Two-qubit gate error. Under `IdlingMode::Fixed` this is the effective
    /// error used everywhere; under `IdlingMode::PerPatch` it is the bare
    /// error before the per-patch idling adjustment.
    pub gate_error: f64,
    pub idling_mode: IdlingMode,
}

impl Default for PhysicalParams {
    /// Built-in defaults: tau_t = 50 us, a_p = 0.02 um/us^2, d_p = 5 um,
    /// t_g = 2 us, T_c = 10 s, flat p_g = 0.001.
    fn default() -> Self {
        Self {
            trap_transfer_us: 50.0,
            acceleration_um_per_us2: 0.02,
            atom_spacing_um: 5.0,
            gate_time_s: 2e-6,
            coherence_time_s: 10.0,
            gate_error: 1e-3,
            idling_mode: IdlingMode::Fixed,
        }
    }
}

impl PhysicalParams {
    /// The per-patch variant of the defaults: bare p_g = 0.0008, inflated
    /// per patch size by the idling adjustment.
    pub fn default_per_patch() -> Self {
        Self {
            gate_error: 8e-4,
            idling_mode: IdlingMode::PerPatch,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("trap_transfer_us", self.trap_transfer_us)?;
        ensure_positive("acceleration_um_per_us2", self.acceleration_um_per_us2)?;
        ensure_positive("atom_spacing_um", self.atom_spacing_um)?;
        ensure_positive("gate_time_s", self.gate_time_s)?;
        ensure_positive("coherence_time_s", self.coherence_time_s)?;
        ensure_probability("gate_error", self.gate_error)?;
        Ok(())
    }

    /// Effective two-qubit gate error for a patch of `patch_qubits` atoms,
    /// resolved according to the idling mode.
    pub fn effective_gate_error(&self, patch_qubits: f64) -> Result<f64> {
        match self.idling_mode {
            IdlingMode::Fixed => Ok(self.gate_error),
            IdlingMode::PerPatch => {
                crate::qec::idling_adjusted_gate_error(self.gate_error, patch_qubits, self)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        PhysicalParams::default().validate().unwrap();
        PhysicalParams::default_per_patch().validate().unwrap();
    }

    #[test]
    fn rejects_nonpositive_constants() {
        let p = PhysicalParams {
            coherence_time_s: 0.0,
            ..PhysicalParams::default()
        };
        assert!(p.validate().is_err());
        for gate_error in [1.0, -0.2] {
            let p = PhysicalParams {
                gate_error,
                ..PhysicalParams::default()
            };
            assert!(p.validate().is_err());
        }
    }

    #[test]
    fn fixed_mode_uses_gate_error_directly() {
        let p = PhysicalParams::default();
        assert_eq!(p.effective_gate_error(100_000.0).unwrap(), 1e-3);
    }
}
