//! Run configuration: built-in defaults, overlaid by an optional JSON
//! config file, overlaid by command-line flags. Unknown config keys are
//! hard errors and every value is type-checked before any computation.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Deserialize;

use qsneakernet_model::{
    HgpConfig, IdlingMode, PhysicalParams, Scenario, SurfaceConfig, SurfaceScenario,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeChoice {
    Qldpc,
    Surface,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdlingChoice {
    Fixed,
    PerPatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormatChoice {
    Csv,
    Json,
}

/// The JSON config file. Every field is optional; present fields override
/// the built-in defaults and are in turn overridden by flags.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub physical: PhysicalSection,
    #[serde(default)]
    pub network: NetworkSection,
    #[serde(default)]
    pub economics: EconomicsSection,
    #[serde(default)]
    pub run: RunSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalSection {
    pub trap_transfer_us: Option<f64>,
    pub acceleration_um_per_us2: Option<f64>,
    pub atom_spacing_um: Option<f64>,
    pub gate_time_s: Option<f64>,
    pub coherence_time_s: Option<f64>,
    pub gate_error: Option<f64>,
    pub idling: Option<IdlingChoice>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkSection {
    pub code: Option<CodeChoice>,
    pub memory_qubits: Option<f64>,
    pub surface_qubits: Option<f64>,
    pub transport_time_s: Option<f64>,
    pub destinations: Option<u32>,
    pub truck_capacity_qubits: Option<f64>,
    pub ebit_rate: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EconomicsSection {
    pub truck_rent_per_hour: Option<f64>,
    pub maintenance_per_device_year: Option<f64>,
    pub device_qubits: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub format: Option<FormatChoice>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub target: Option<f64>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

/// Flag-level overrides, filled by clap in `main`.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub code: Option<CodeChoice>,
    pub memory_qubits: Option<f64>,
    pub surface_qubits: Option<f64>,
    pub transport_time_s: Option<f64>,
    pub gate_error: Option<f64>,
    pub idling: Option<IdlingChoice>,
    pub ebit_rate: Option<f64>,
    pub destinations: Option<u32>,
    pub truck_capacity_qubits: Option<f64>,
    pub rent_per_hour: Option<f64>,
    pub maintenance_per_device_year: Option<f64>,
    pub device_qubits: Option<f64>,
    pub config: Option<PathBuf>,
    pub format: Option<FormatChoice>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub target: Option<f64>,
}

/// Fully resolved run settings.
#[derive(Debug, Clone)]
pub struct Settings {
    pub params: PhysicalParams,
    pub code: CodeChoice,
    pub memory_qubits: f64,
    pub surface_qubits: f64,
    pub transport_time_s: f64,
    pub destinations: u32,
    pub truck_capacity_qubits: f64,
    pub ebit_rate: f64,
    pub rent_per_hour: f64,
    pub maintenance_per_device_year: f64,
    pub device_qubits: f64,
    pub format: Option<FormatChoice>,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub trials: u64,
    pub target: f64,
}

impl Settings {
    /// Defaults, then config file (if given), then flags.
    pub fn resolve(overrides: &Overrides) -> Result<Self> {
        let file = match &overrides.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };

        let idling = overrides
            .idling
            .or(file.physical.idling)
            .unwrap_or(IdlingChoice::Fixed);
        let idling_mode = match idling {
            IdlingChoice::Fixed => IdlingMode::Fixed,
            IdlingChoice::PerPatch => IdlingMode::PerPatch,
        };
        // The flat default folds worst-case idling into 0.001; the
        // per-patch default starts from the bare 0.0008 instead.
        let default_gate_error = match idling_mode {
            IdlingMode::Fixed => 1e-3,
            IdlingMode::PerPatch => 8e-4,
        };
        let base = PhysicalParams::default();
        let params = PhysicalParams {
            trap_transfer_us: file
                .physical
                .trap_transfer_us
                .unwrap_or(base.trap_transfer_us),
            acceleration_um_per_us2: file
                .physical
                .acceleration_um_per_us2
                .unwrap_or(base.acceleration_um_per_us2),
            atom_spacing_um: file
                .physical
                .atom_spacing_um
                .unwrap_or(base.atom_spacing_um),
            gate_time_s: file.physical.gate_time_s.unwrap_or(base.gate_time_s),
            coherence_time_s: file
                .physical
                .coherence_time_s
                .unwrap_or(base.coherence_time_s),
            gate_error: overrides
                .gate_error
                .or(file.physical.gate_error)
                .unwrap_or(default_gate_error),
            idling_mode,
        };

        Ok(Self {
            params,
            code: overrides
                .code
                .or(file.network.code)
                .unwrap_or(CodeChoice::Qldpc),
            memory_qubits: overrides
                .memory_qubits
                .or(file.network.memory_qubits)
                .unwrap_or(60_000.0),
            surface_qubits: overrides
                .surface_qubits
                .or(file.network.surface_qubits)
                .unwrap_or(257.0),
            transport_time_s: overrides
                .transport_time_s
                .or(file.network.transport_time_s)
                .unwrap_or(5_400.0),
            destinations: overrides
                .destinations
                .or(file.network.destinations)
                .unwrap_or(5),
            truck_capacity_qubits: overrides
                .truck_capacity_qubits
                .or(file.network.truck_capacity_qubits)
                .unwrap_or(1_000_000.0),
            ebit_rate: overrides
                .ebit_rate
                .or(file.network.ebit_rate)
                .unwrap_or(2_300.0),
            rent_per_hour: overrides
                .rent_per_hour
                .or(file.economics.truck_rent_per_hour)
                .unwrap_or(150.0),
            maintenance_per_device_year: overrides
                .maintenance_per_device_year
                .or(file.economics.maintenance_per_device_year)
                .unwrap_or(2_000_000.0),
            device_qubits: overrides
                .device_qubits
                .or(file.economics.device_qubits)
                .unwrap_or(60_000.0),
            format: overrides.format.or(file.run.format),
            out: overrides.out.clone().or(file.run.out),
            seed: overrides.seed.or(file.run.seed).unwrap_or(1),
            trials: overrides.trials.or(file.run.trials).unwrap_or(1_000_000),
            target: overrides.target.or(file.run.target).unwrap_or(0.08),
        })
    }

    pub fn qldpc_scenario(&self) -> Scenario {
        Scenario {
            code: HgpConfig {
                memory_qubits: self.memory_qubits,
            },
            params: self.params,
            transport_time_s: self.transport_time_s,
            destinations: self.destinations,
            truck_capacity_qubits: self.truck_capacity_qubits,
            ebit_rate: self.ebit_rate,
            truck_rent_per_hour: self.rent_per_hour,
            maintenance_per_device_year: self.maintenance_per_device_year,
        }
    }

    pub fn surface_scenario(&self) -> SurfaceScenario {
        SurfaceScenario {
            code: SurfaceConfig {
                patch_qubits: self.surface_qubits,
            },
            params: self.params,
            transport_time_s: self.transport_time_s,
            device_qubits: self.device_qubits,
            destinations: self.destinations,
            truck_capacity_qubits: self.truck_capacity_qubits,
            ebit_rate: self.ebit_rate,
            truck_rent_per_hour: self.rent_per_hour,
            maintenance_per_device_year: self.maintenance_per_device_year,
        }
    }

    pub fn format_or(&self, default: FormatChoice) -> FormatChoice {
        self.format.unwrap_or(default)
    }
}
