use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Result};

/// Hypergraph-product memory patch with the fixed rate-1/25 family:
/// k = n/25 logical qubits, distance sqrt(n)/5, and a teleportation
/// ancilla patch of n/25 physical qubits (same distance as the memory).
///
/// Patch sizes are continuous reals. The model sweeps them continuously;
/// use [`HgpConfig::snapped`] when a realizable integer-distance patch is
/// wanted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HgpConfig {
    /// Physical qubits in the memory patch (n_m).
    pub memory_qubits: f64,
}

impl HgpConfig {
    pub fn new(memory_qubits: f64) -> Result<Self> {
        ensure_positive("memory_qubits", memory_qubits)?;
        Ok(Self { memory_qubits })
    }

    /// Nearest patch with integer code distance, i.e. 25*d^2 for the
    /// integer d closest to sqrt(n)/5 (at least 1).
    pub fn snapped(memory_qubits: f64) -> Result<Self> {
        ensure_positive("memory_qubits", memory_qubits)?;
        let d = (memory_qubits.sqrt() / 5.0).round().max(1.0);
        Ok(Self {
            memory_qubits: 25.0 * d * d,
        })
    }

    /// Logical qubits k = n/25.
    pub fn logical_qubits(&self) -> f64 {
        self.memory_qubits / 25.0
    }

    /// Code distance d = sqrt(n)/5. Also the distance of the ancilla patch
    /// and of the computational surface code attached to this memory.
    pub fn distance(&self) -> f64 {
        self.memory_qubits.sqrt() / 5.0
    }

    /// Physical qubits in the teleportation ancilla patch, n/25.
    pub fn ancilla_qubits(&self) -> f64 {
        self.memory_qubits / 25.0
    }
}

/// A single surface-code patch holding one logical qubit; distance is
/// sqrt(n_ms), continuous.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceConfig {
    /// Physical qubits in the patch (n_ms).
    pub patch_qubits: f64,
}

impl SurfaceConfig {
    pub fn new(patch_qubits: f64) -> Result<Self> {
        ensure_positive("patch_qubits", patch_qubits)?;
        Ok(Self { patch_qubits })
    }

    pub fn distance(&self) -> f64 {
        self.patch_qubits.sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_quantities() {
        let c = HgpConfig::new(60_000.0).unwrap();
        assert_eq!(c.logical_qubits(), 2400.0);
        assert_eq!(c.ancilla_qubits(), 2400.0);
        assert!((c.distance() - 48.98979485566356).abs() < 1e-12);
        // distance of the ancilla patch equals the memory distance
        assert_eq!(c.ancilla_qubits().sqrt(), c.distance() * 5.0 / 5.0);
    }

    #[test]
    fn snap_rounds_to_integer_distance() {
        // sqrt(60000)/5 = 48.99 -> d = 49 -> 25*49^2 = 60025
        assert_eq!(
            HgpConfig::snapped(60_000.0).unwrap().memory_qubits,
            60_025.0
        );
        assert_eq!(HgpConfig::snapped(20.0).unwrap().memory_qubits, 25.0);
    }

    #[test]
    fn rejects_nonpositive_sizes() {
        assert!(HgpConfig::new(0.0).is_err());
        assert!(HgpConfig::new(-5.0).is_err());
        assert!(SurfaceConfig::new(f64::NAN).is_err());
    }

    #[test]
    fn surface_distance() {
        assert_eq!(
            SurfaceConfig::new(257.0).unwrap().distance(),
            257.0_f64.sqrt()
        );
    }
}
