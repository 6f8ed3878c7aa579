//! Stage-by-stage failure and time accounting for the HGP-memory protocol.
//!
//! The protocol distributes Bell-pair halves between a hub memory and a
//! transported memory, measures the transported halves at the destination,
//! and later swaps entanglement at the hub: initialize two HGP patches,
//! create a surface-code Bell pair, teleport both halves onto the HGP
//! patches through an ancilla patch, drive the loaded memory to the
//! destination, unload and measure there, and finally (after storing the hub
//! halves for the full round trip of the protocol) unload two hub qubits and
//! Bell-measure them. Stage failure rates accumulate additively; wall-clock
//! durations accrue only where stages cannot be overlapped with the previous
//! batch.

use serde::Serialize;

use crate::codes::HgpConfig;
use crate::error::{ensure_non_negative, ensure_positive, ModelError, Result};
use crate::params::PhysicalParams;
use crate::qec::{cycle_time, hgp_lfr_per_cycle, surface_lfr_per_cycle, Lfr};
use crate::warnings::Warning;

/// One full network instance: code, hardware, route, and economics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Scenario {
    pub code: HgpConfig,
    pub params: PhysicalParams,
    /// One-way transport time to a destination, seconds.
    pub transport_time_s: f64,
    /// Number of destination kiosks served by the hub.
    pub destinations: u32,
    /// Physical qubits one vehicle can carry.
    pub truck_capacity_qubits: f64,
    /// Target delivered bit rate per destination, bits/s.
    pub ebit_rate: f64,
    /// Hourly vehicle rent, dollars.
    pub truck_rent_per_hour: f64,
    /// Yearly maintenance per memory device, dollars.
    pub maintenance_per_device_year: f64,
}

impl Default for Scenario {
    /// The bundled metropolitan operating point: a 60,000-qubit memory, a
    /// 90-minute drive, five destinations, million-qubit trucks at $150/h,
    /// 2.3 kb/s per destination, and $2M/year device maintenance.
    fn default() -> Self {
        Self {
            code: HgpConfig {
                memory_qubits: 60_000.0,
            },
            params: PhysicalParams::default(),
            transport_time_s: 5_400.0,
            destinations: 5,
            truck_capacity_qubits: 1_000_000.0,
            ebit_rate: 2_300.0,
            truck_rent_per_hour: 150.0,
            maintenance_per_device_year: 2_000_000.0,
        }
    }
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        ensure_positive("memory_qubits", self.code.memory_qubits)?;
        ensure_non_negative("transport_time_s", self.transport_time_s)?;
        if self.destinations < 1 {
            return Err(ModelError::Invalid("destinations must be >= 1".into()));
        }
        ensure_positive("ebit_rate", self.ebit_rate)?;
        ensure_non_negative("truck_rent_per_hour", self.truck_rent_per_hour)?;
        ensure_non_negative(
            "maintenance_per_device_year",
            self.maintenance_per_device_year,
        )?;
        if !self.truck_capacity_qubits.is_finite()
            || self.truck_capacity_qubits < self.code.memory_qubits
        {
            return Err(ModelError::Invalid(format!(
                "truck_capacity_qubits ({}) must hold at least one memory patch ({})",
                self.truck_capacity_qubits, self.code.memory_qubits
            )));
        }
        Ok(())
    }
}

/// Accumulated failure rates and durations for one delivered correlation.
///
/// `r_net` is the one-sided distribution total (init through unload) and
/// enters the grand total twice, once per end user. `transport_cycles` and
/// `storage_cycles` are continuous QEC cycle counts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageBreakdown {
    /// Initializing the hub and transport HGP patches.
    pub r_init: f64,
    /// Creating one surface-code Bell pair.
    pub r_bell_create: f64,
    /// Teleporting both halves onto their HGP patches.
    pub r_load: f64,
    /// QEC cycles on the transported memory while driving.
    pub r_transport: f64,
    /// Unloading and measuring one full patch at the destination.
    pub r_unload_measure: f64,
    /// Sum of the five distribution stages above.
    pub r_net: f64,
    /// Hub-side storage of both halves until the swap decision.
    pub r_store: f64,
    /// Teleporting two hub qubits back onto surface codes.
    pub r_unload_swap: f64,
    /// The final logical Bell measurement.
    pub r_bell_measure: f64,
    /// Grand total for the delivered correlation.
    pub r_total: f64,
    /// Loading duration (one patch of logical qubits), seconds.
    pub t_load_s: f64,
    /// Unload-and-measure duration at the destination, seconds.
    pub t_unload_s: f64,
    /// Load + transport + unload, seconds.
    pub t_total_s: f64,
    /// QEC cycles on the transported memory during the drive.
    pub transport_cycles: f64,
    /// QEC cycles on each hub memory until the swap decision.
    pub storage_cycles: f64,
    /// Success probability 1 - r_total.
    pub fidelity: f64,
    /// True iff 0 <= r_total < 1.
    pub feasible: bool,
    pub warnings: Vec<Warning>,
}

/// The distribution stages: everything up to and including the destination
/// measurement, with the durations that are not overlapped away.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionStages {
    pub r_init: f64,
    pub r_bell_create: f64,
    pub r_load: f64,
    pub r_transport: f64,
    pub r_unload_measure: f64,
    pub t_load_s: f64,
    pub t_unload_s: f64,
    pub warnings: Vec<Warning>,
}

/// The hub-side stages: storage until the swap decision, unload, and the
/// Bell measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct SwapStages {
    pub r_store: f64,
    pub r_unload_swap: f64,
    pub r_bell_measure: f64,
    pub warnings: Vec<Warning>,
}

/// Per-cycle rates and cycle times with gate errors resolved for each patch
/// size. The ancilla patch and the computational surface patch share the
/// size n_m/25, so they share an effective gate error.
struct ResolvedRates {
    memory: Lfr,
    ancilla: Lfr,
    surface: Lfr,
    cycle_memory_s: f64,
    cycle_ancilla_s: f64,
}

impl ResolvedRates {
    fn new(code: &HgpConfig, params: &PhysicalParams) -> Result<Self> {
        let n_m = code.memory_qubits;
        let n_a = code.ancilla_qubits();
        let p_memory = params.effective_gate_error(n_m)?;
        let p_small = params.effective_gate_error(n_a)?;
        Ok(Self {
            memory: hgp_lfr_per_cycle(n_m, p_memory)?,
            ancilla: hgp_lfr_per_cycle(n_a, p_small)?,
            surface: surface_lfr_per_cycle(code.distance(), p_small)?,
            cycle_memory_s: cycle_time(n_m, params)?,
            cycle_ancilla_s: cycle_time(n_a, params)?,
        })
    }

    fn threshold_warnings(&self, params: &PhysicalParams, out: &mut Vec<Warning>) {
        if self.memory.above_threshold || self.ancilla.above_threshold {
            out.push(Warning::HgpFitExtrapolated {
                gate_error: params.gate_error,
            });
        }
        if self.surface.above_threshold {
            out.push(Warning::SurfaceFitExtrapolated {
                gate_error: params.gate_error,
            });
        }
    }
}

fn distribution_stages(
    code: &HgpConfig,
    params: &PhysicalParams,
    transport_time_s: f64,
    rates: &ResolvedRates,
) -> DistributionStages {
    let d = code.distance();
    let k = code.logical_qubits();
    let ancilla_d = code.ancilla_qubits().sqrt();
    let gate = params.gate_time_s;
    let (r_l_m, r_l_a, r_s) = (rates.memory.value, rates.ancilla.value, rates.surface.value);
    let (t_cyc_m, t_cyc_a) = (rates.cycle_memory_s, rates.cycle_ancilla_s);

    // One teleportation through the ancilla: ancilla init (sqrt(n_a)
    // cycles), surface<->ancilla surgery (d cycles), ancilla<->memory
    // surgery (d cycles, with the first loaded qubit riding through all k
    // loads of the memory patch).
    let teleport_in = ancilla_d * r_l_a + d * (r_s + r_l_a) + d * (r_l_a + k * r_l_m);

    let r_init = 2.0 * d * r_l_m;
    let r_bell_create = 2.0 * d * r_s;
    let r_load = 2.0 * teleport_in;
    let t_load_s = k * (ancilla_d * t_cyc_a + d * t_cyc_a + d * t_cyc_m);
    let r_transport = transport_time_s / t_cyc_m * r_l_m;
    // Unloading reverses the teleportation and adds surface-code
    // initialization up front and a one-round measurement at the end.
    let r_unload_measure = d * r_s + teleport_in + r_s;
    let t_unload_s =
        k * (6.0 * d * gate + ancilla_d * t_cyc_a + d * t_cyc_a + d * t_cyc_m + 6.0 * gate);

    let mut warnings = Vec::new();
    rates.threshold_warnings(params, &mut warnings);

    DistributionStages {
        r_init,
        r_bell_create,
        r_load,
        r_transport,
        r_unload_measure,
        t_load_s,
        t_unload_s,
        warnings,
    }
}

fn swap_stages(
    code: &HgpConfig,
    params: &PhysicalParams,
    total_time_s: f64,
    rates: &ResolvedRates,
) -> SwapStages {
    let d = code.distance();
    let k = code.logical_qubits();
    let ancilla_d = code.ancilla_qubits().sqrt();
    let (r_l_m, r_l_a, r_s) = (rates.memory.value, rates.ancilla.value, rates.surface.value);

    // Two hub drives store their halves until the swap decision, assumed to
    // land exactly when the distribution completes.
    let r_store = 2.0 * (total_time_s / rates.cycle_memory_s) * r_l_m;
    let r_unload_swap =
        2.0 * (d * r_s + ancilla_d * r_l_a + d * (r_l_a + k * r_l_m) + d * (r_l_a + r_s));
    let r_bell_measure = 4.0 * d * r_s;

    let mut warnings = Vec::new();
    rates.threshold_warnings(params, &mut warnings);

    SwapStages {
        r_store,
        r_unload_swap,
        r_bell_measure,
        warnings,
    }
}

/// Failure rates and durations of the distribution stages only.
pub fn stage_lfrs(scenario: &Scenario) -> Result<DistributionStages> {
    scenario.validate()?;
    let rates = ResolvedRates::new(&scenario.code, &scenario.params)?;
    Ok(distribution_stages(
        &scenario.code,
        &scenario.params,
        scenario.transport_time_s,
        &rates,
    ))
}

/// Hub-side storage, unload, and Bell-measurement rates for a given total
/// elapsed time.
pub fn storage_and_swap_lfrs(scenario: &Scenario, total_time_s: f64) -> Result<SwapStages> {
    scenario.validate()?;
    ensure_non_negative("total_time_s", total_time_s)?;
    let rates = ResolvedRates::new(&scenario.code, &scenario.params)?;
    Ok(swap_stages(
        &scenario.code,
        &scenario.params,
        total_time_s,
        &rates,
    ))
}

pub(crate) fn evaluate_parts(
    code: &HgpConfig,
    params: &PhysicalParams,
    transport_time_s: f64,
) -> Result<StageBreakdown> {
    let rates = ResolvedRates::new(code, params)?;
    let dist = distribution_stages(code, params, transport_time_s, &rates);
    let r_net =
        dist.r_init + dist.r_bell_create + dist.r_load + dist.r_transport + dist.r_unload_measure;
    let t_total_s = dist.t_load_s + transport_time_s + dist.t_unload_s;
    let swap = swap_stages(code, params, t_total_s, &rates);

    let r_total = swap.r_bell_measure + swap.r_unload_swap + swap.r_store + 2.0 * r_net;
    let fidelity = 1.0 - r_total;

    let mut warnings = Vec::new();
    rates.threshold_warnings(params, &mut warnings);
    let stage_rates = [
        ("init", dist.r_init),
        ("bell_create", dist.r_bell_create),
        ("load", dist.r_load),
        ("transport", dist.r_transport),
        ("unload_measure", dist.r_unload_measure),
        ("store", swap.r_store),
        ("unload_swap", swap.r_unload_swap),
        ("bell_measure", swap.r_bell_measure),
    ];
    for (stage, rate) in stage_rates {
        if rate > 0.1 {
            warnings.push(Warning::StageRateHigh { stage, rate });
        }
    }

    Ok(StageBreakdown {
        r_init: dist.r_init,
        r_bell_create: dist.r_bell_create,
        r_load: dist.r_load,
        r_transport: dist.r_transport,
        r_unload_measure: dist.r_unload_measure,
        r_net,
        r_store: swap.r_store,
        r_unload_swap: swap.r_unload_swap,
        r_bell_measure: swap.r_bell_measure,
        r_total,
        t_load_s: dist.t_load_s,
        t_unload_s: dist.t_unload_s,
        t_total_s,
        transport_cycles: transport_time_s / rates.cycle_memory_s,
        storage_cycles: t_total_s / rates.cycle_memory_s,
        fidelity,
        feasible: (0.0..1.0).contains(&r_total),
        warnings,
    })
}

/// Full accounting for one scenario.
pub fn evaluate(scenario: &Scenario) -> Result<StageBreakdown> {
    scenario.validate()?;
    evaluate_parts(&scenario.code, &scenario.params, scenario.transport_time_s)
}

/// Full accounting for a bare (code, params, transport time) triple, with
/// no network or economics fields involved. Sweep drivers use this.
pub fn evaluate_code(
    code: &HgpConfig,
    params: &PhysicalParams,
    transport_time_s: f64,
) -> Result<StageBreakdown> {
    params.validate()?;
    ensure_positive("memory_qubits", code.memory_qubits)?;
    ensure_non_negative("transport_time_s", transport_time_s)?;
    evaluate_parts(code, params, transport_time_s)
}

/// Total failure rate of the delivered correlation for a bare
/// (code, params, transport time) triple. This is what the solvers invert.
pub fn total_failure_rate(
    code: &HgpConfig,
    params: &PhysicalParams,
    transport_time_s: f64,
) -> Result<f64> {
    Ok(evaluate_code(code, params, transport_time_s)?.r_total)
}

/// The whole protocol flattened to per-cycle (cycles, rate) stages, so the
/// additive accumulation can be validated against the exact product formula
/// and Monte Carlo. The additive total over this spec equals the
/// breakdown's `r_total` up to floating-point regrouping.
///
/// Requires every per-cycle rate to be a probability; far above the fit
/// threshold the extrapolated rates exceed 1 and no product interpretation
/// exists.
pub fn stage_spec(scenario: &Scenario) -> Result<crate::validation::StageSpec> {
    scenario.validate()?;
    let code = &scenario.code;
    let rates = ResolvedRates::new(code, &scenario.params)?;
    let b = evaluate_parts(code, &scenario.params, scenario.transport_time_s)?;
    let d = code.distance();
    let k = code.logical_qubits();
    let ancilla_d = code.ancilla_qubits().sqrt();
    let (m, a, s) = (rates.memory.value, rates.ancilla.value, rates.surface.value);

    // One distribution side, stage by stage: init, bell creation, the two
    // loading teleportations, the drive, and the kiosk unload-and-measure.
    let one_side = [
        (2.0 * d, m),
        (2.0 * d, s),
        (2.0 * ancilla_d, a),
        (2.0 * d, s),
        (4.0 * d, a),
        (2.0 * d * k, m),
        (b.transport_cycles, m),
        (d, s),
        (ancilla_d, a),
        (d, s),
        (2.0 * d, a),
        (d * k, m),
        (1.0, s),
    ];
    let mut stages: Vec<(f64, f64)> = one_side.iter().map(|&(n, p)| (2.0 * n, p)).collect();
    // Hub side: storage on two drives, the double unload, and the Bell
    // measurement.
    stages.push((2.0 * b.storage_cycles, m));
    stages.push((2.0 * d, s));
    stages.push((2.0 * ancilla_d, a));
    stages.push((2.0 * d, a));
    stages.push((2.0 * d * k, m));
    stages.push((2.0 * d, a));
    stages.push((2.0 * d, s));
    stages.push((4.0 * d, s));
    crate::validation::StageSpec::new(stages)
}
