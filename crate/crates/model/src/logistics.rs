//! Fleet sizing and per-bit economics.
//!
//! A destination consumes blocks (code patches) at the target bit rate;
//! trucks shuttle replacement blocks on a fixed life cycle of load, drive
//! out, unload, drive back. The unrounded totals keep the full real value
//! so that sweeps stay smooth; the reported fleet size is the ceiling.

use serde::Serialize;

use crate::error::{ensure_non_negative, ensure_positive, ModelError, Result};
use crate::pipeline::{Scenario, StageBreakdown};
use crate::surface::{SurfaceBreakdown, SurfaceScenario};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeFamily {
    Qldpc,
    Surface,
}

impl std::fmt::Display for CodeFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CodeFamily::Qldpc => write!(f, "qldpc"),
            CodeFamily::Surface => write!(f, "surface"),
        }
    }
}

/// Fleet size and unit economics for one network.
///
/// For the HGP family a "cycle" is one unload duration (a block yields
/// n_m/25 bits over t_unload); for the surface family it is one measurement
/// round (a block is a single-qubit patch measured on arrival, and the
/// blocks in flight per round follow from the target rate).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FleetReport {
    pub code_family: CodeFamily,
    /// Logical bits per second one block sustains while unloading (r_L).
    pub block_bit_rate: f64,
    /// Blocks consumed per destination per cycle.
    pub parallel_blocks: f64,
    /// Blocks one vehicle carries.
    pub blocks_per_truck: f64,
    /// Vehicles dispatched per cycle across all destinations.
    pub trucks_per_cycle: f64,
    /// Vehicles needed for continuous operation, before rounding.
    pub total_trucks_unrounded: f64,
    /// Ceiling of the unrounded total.
    pub total_trucks: u64,
    /// Transport cost per delivered bit (C_t), dollars.
    pub cost_transport_per_bit: f64,
    /// Memory-maintenance cost per delivered bit (C_q), dollars.
    pub cost_memory_per_bit: f64,
    /// C_t + C_q, dollars.
    pub cost_per_bit: f64,
}

/// Per-bit cost split.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostBreakdown {
    pub transport: f64,
    pub memory: f64,
    pub total: f64,
}

/// Cost per delivered bit for a fleet of `total_trucks`.
///
/// Transport: hourly rent prorated over the network-wide bit rate. Memory:
/// two devices per transported device-load (hub half plus transported
/// half), maintained year-round, prorated over yearly bits.
/// `device_qubits` is the per-device qubit count (the HGP memory size; for
/// the surface family the same device size is kept, hosting many patches).
#[allow(clippy::too_many_arguments)]
pub fn cost_per_bit(
    total_trucks: u64,
    rent_per_hour: f64,
    maintenance_per_device_year: f64,
    ebit_rate: f64,
    destinations: u32,
    truck_capacity_qubits: f64,
    device_qubits: f64,
) -> Result<CostBreakdown> {
    ensure_positive("ebit_rate", ebit_rate)?;
    ensure_positive("device_qubits", device_qubits)?;
    ensure_positive("truck_capacity_qubits", truck_capacity_qubits)?;
    ensure_non_negative("rent_per_hour", rent_per_hour)?;
    ensure_non_negative("maintenance_per_device_year", maintenance_per_device_year)?;
    if destinations < 1 {
        return Err(ModelError::Invalid("destinations must be >= 1".into()));
    }
    let trucks = total_trucks as f64;
    let s = f64::from(destinations);
    let transport = rent_per_hour * trucks / (3_600.0 * ebit_rate * s);
    let devices_per_truck = truck_capacity_qubits / device_qubits;
    let memory = 2.0 * devices_per_truck * trucks * maintenance_per_device_year
        / (ebit_rate * s * 86_400.0 * 365.0);
    Ok(CostBreakdown {
        transport,
        memory,
        total: transport + memory,
    })
}

/// Shared fleet arithmetic. The destination count multiplies last so that
/// totals are exactly linear in it.
#[allow(clippy::too_many_arguments)]
fn fleet(
    family: CodeFamily,
    bits_per_block: f64,
    unload_duration_s: f64,
    lifecycle_s: f64,
    ebit_rate: f64,
    destinations: u32,
    blocks_per_truck: f64,
    rent_per_hour: f64,
    maintenance_per_device_year: f64,
    truck_capacity_qubits: f64,
    device_qubits: f64,
) -> Result<FleetReport> {
    let block_bit_rate = bits_per_block / unload_duration_s;
    let parallel_blocks = ebit_rate / block_bit_rate;
    let per_destination = parallel_blocks / blocks_per_truck * (lifecycle_s / unload_duration_s);
    let s = f64::from(destinations);
    let total_trucks_unrounded = s * per_destination;
    let total_trucks = total_trucks_unrounded.ceil() as u64;
    let costs = cost_per_bit(
        total_trucks,
        rent_per_hour,
        maintenance_per_device_year,
        ebit_rate,
        destinations,
        truck_capacity_qubits,
        device_qubits,
    )?;
    Ok(FleetReport {
        code_family: family,
        block_bit_rate,
        parallel_blocks,
        blocks_per_truck,
        trucks_per_cycle: s * (parallel_blocks / blocks_per_truck),
        total_trucks_unrounded,
        total_trucks,
        cost_transport_per_bit: costs.transport,
        cost_memory_per_bit: costs.memory,
        cost_per_bit: costs.total,
    })
}

/// Fleet and costs for an HGP network. `breakdown` must come from
/// `pipeline::evaluate` on the same scenario.
pub fn fleet_qldpc(scenario: &Scenario, breakdown: &StageBreakdown) -> Result<FleetReport> {
    scenario.validate()?;
    let lifecycle = breakdown.t_load_s + 2.0 * scenario.transport_time_s + breakdown.t_unload_s;
    fleet(
        CodeFamily::Qldpc,
        scenario.code.logical_qubits(),
        breakdown.t_unload_s,
        lifecycle,
        scenario.ebit_rate,
        scenario.destinations,
        scenario.truck_capacity_qubits / scenario.code.memory_qubits,
        scenario.truck_rent_per_hour,
        scenario.maintenance_per_device_year,
        scenario.truck_capacity_qubits,
        scenario.code.memory_qubits,
    )
}

/// Fleet and costs for the surface baseline. `breakdown` must come from
/// `surface::evaluate_surface` on the same scenario.
pub fn fleet_surface(
    scenario: &SurfaceScenario,
    breakdown: &SurfaceBreakdown,
) -> Result<FleetReport> {
    scenario.validate()?;
    let round = 6.0 * scenario.params.gate_time_s;
    let lifecycle = breakdown.t_total_s + scenario.transport_time_s;
    fleet(
        CodeFamily::Surface,
        1.0,
        round,
        lifecycle,
        scenario.ebit_rate,
        scenario.destinations,
        scenario.truck_capacity_qubits / scenario.code.patch_qubits,
        scenario.truck_rent_per_hour,
        scenario.maintenance_per_device_year,
        scenario.truck_capacity_qubits,
        scenario.device_qubits,
    )
}

/// Daily usage pattern at a kiosk, used to derive the target bit rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UsageProfile {
    pub messages_per_day: f64,
    pub bits_per_message: f64,
    /// Time one user spends topping up at the kiosk, seconds.
    pub wait_seconds: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandwidthEstimate {
    /// Required delivered bit rate, bits/s.
    pub ebit_rate: f64,
    /// Kiosk time slots available per day.
    pub users_per_day: f64,
}

/// Bit rate needed so one kiosk visit of `wait_seconds` covers a day of
/// messages, plus the daily slot count of the kiosk.
pub fn bandwidth_from_usage(profile: &UsageProfile) -> Result<BandwidthEstimate> {
    ensure_positive("messages_per_day", profile.messages_per_day)?;
    ensure_positive("bits_per_message", profile.bits_per_message)?;
    ensure_positive("wait_seconds", profile.wait_seconds)?;
    let bits_per_day = profile.messages_per_day * profile.bits_per_message;
    Ok(BandwidthEstimate {
        ebit_rate: bits_per_day / profile.wait_seconds,
        users_per_day: 86_400.0 / profile.wait_seconds,
    })
}

/// Dollars rounded half-up to the cent, e.g. "1.40". Full precision stays
/// in the numeric fields; this is display only.
pub fn format_dollars(amount: f64) -> String {
    format!("{:.2}", (amount * 100.0).round() / 100.0)
}
