//! Command implementations. Sweep grids evaluate in parallel; row order is
//! fixed (curve-major, then ascending variable) so output is reproducible.

use std::fmt;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde_json::json;

use qsneakernet_model::{
    approx_failure_prob, evaluate, evaluate_code, evaluate_surface, exact_failure_prob,
    fleet_qldpc, fleet_surface, format_dollars, max_transport_time, min_hgp_patch,
    min_surface_patch, monte_carlo_failure, stage_spec, FleetReport, HgpConfig, Scenario,
    SolveResult, StageBreakdown, StageSpec, SurfaceBreakdown, SurfaceConfig, SurfaceScenario,
    DEFAULT_HGP_BRACKET, DEFAULT_SURFACE_BRACKET,
};

use crate::config::{CodeChoice, FormatChoice, Settings};
use crate::output::{emit, fmt_sig, render_json, Csv};

/// Marker for targets the model cannot meet; mapped to exit status 3.
#[derive(Debug)]
pub struct Infeasible(pub String);

impl fmt::Display for Infeasible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "infeasible: {}", self.0)
    }
}

impl std::error::Error for Infeasible {}

fn warnings_cell(warnings: &[qsneakernet_model::Warning]) -> String {
    warnings
        .iter()
        .map(|w| w.to_string())
        .collect::<Vec<_>>()
        .join(" | ")
}

const QLDPC_BREAKDOWN_COLUMNS: [&str; 18] = [
    "r_init",
    "r_bell_create",
    "r_load",
    "r_transport",
    "r_unload_measure",
    "r_net",
    "r_store",
    "r_unload_swap",
    "r_bell_measure",
    "r_total",
    "t_load_s",
    "t_unload_s",
    "t_total_s",
    "transport_cycles",
    "storage_cycles",
    "fidelity",
    "feasible",
    "warnings",
];

fn qldpc_breakdown_cells(b: &StageBreakdown) -> Vec<String> {
    vec![
        fmt_sig(b.r_init),
        fmt_sig(b.r_bell_create),
        fmt_sig(b.r_load),
        fmt_sig(b.r_transport),
        fmt_sig(b.r_unload_measure),
        fmt_sig(b.r_net),
        fmt_sig(b.r_store),
        fmt_sig(b.r_unload_swap),
        fmt_sig(b.r_bell_measure),
        fmt_sig(b.r_total),
        fmt_sig(b.t_load_s),
        fmt_sig(b.t_unload_s),
        fmt_sig(b.t_total_s),
        fmt_sig(b.transport_cycles),
        fmt_sig(b.storage_cycles),
        fmt_sig(b.fidelity),
        b.feasible.to_string(),
        warnings_cell(&b.warnings),
    ]
}

const SURFACE_BREAKDOWN_COLUMNS: [&str; 12] = [
    "r_cycle",
    "r_bell_create",
    "r_transport",
    "r_net",
    "r_store",
    "r_bell_measure",
    "r_total",
    "t_bell_create_s",
    "t_total_s",
    "fidelity",
    "feasible",
    "warnings",
];

fn surface_breakdown_cells(b: &SurfaceBreakdown) -> Vec<String> {
    vec![
        fmt_sig(b.r_cycle),
        fmt_sig(b.r_bell_create),
        fmt_sig(b.r_transport),
        fmt_sig(b.r_net),
        fmt_sig(b.r_store),
        fmt_sig(b.r_bell_measure),
        fmt_sig(b.r_total),
        fmt_sig(b.t_bell_create_s),
        fmt_sig(b.t_total_s),
        fmt_sig(b.fidelity),
        b.feasible.to_string(),
        warnings_cell(&b.warnings),
    ]
}

pub fn estimate(settings: &Settings) -> Result<()> {
    let content = match settings.code {
        CodeChoice::Qldpc => {
            let scenario = settings.qldpc_scenario();
            let breakdown = evaluate(&scenario)?;
            match settings.format_or(FormatChoice::Json) {
                FormatChoice::Json => render_json(json!({
                    "code": "qldpc",
                    "scenario": serde_json::to_value(scenario)?,
                    "breakdown": serde_json::to_value(breakdown)?,
                })),
                FormatChoice::Csv => {
                    let mut header = vec!["code", "n_m", "t3_s", "pg"];
                    header.extend(QLDPC_BREAKDOWN_COLUMNS);
                    let mut csv = Csv::new(header);
                    let mut row = vec![
                        "qldpc".to_string(),
                        fmt_sig(scenario.code.memory_qubits),
                        fmt_sig(scenario.transport_time_s),
                        fmt_sig(scenario.params.gate_error),
                    ];
                    row.extend(qldpc_breakdown_cells(&breakdown));
                    csv.push(row);
                    csv.render()
                }
            }
        }
        CodeChoice::Surface => {
            let scenario = settings.surface_scenario();
            let breakdown = evaluate_surface(&scenario)?;
            match settings.format_or(FormatChoice::Json) {
                FormatChoice::Json => render_json(json!({
                    "code": "surface",
                    "scenario": serde_json::to_value(scenario)?,
                    "breakdown": serde_json::to_value(breakdown)?,
                })),
                FormatChoice::Csv => {
                    let mut header = vec!["code", "n_ms", "t3_s", "pg"];
                    header.extend(SURFACE_BREAKDOWN_COLUMNS);
                    let mut csv = Csv::new(header);
                    let mut row = vec![
                        "surface".to_string(),
                        fmt_sig(scenario.code.patch_qubits),
                        fmt_sig(scenario.transport_time_s),
                        fmt_sig(scenario.params.gate_error),
                    ];
                    row.extend(surface_breakdown_cells(&breakdown));
                    csv.push(row);
                    csv.render()
                }
            }
        }
    };
    emit(settings.out.as_deref(), &content)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
#[value(rename_all = "kebab-case")]
pub enum SweepKind {
    /// Total failure rate vs memory patch size, one curve per transport time.
    RtotNm,
    /// Longest tolerable transport time vs patch size, one curve per target.
    T3Nm,
    /// Solved patch and fleet vs target rate at the configured transport time.
    TrucksTarget,
    /// Same as trucks-target, with qldpc and surface curves side by side.
    TrucksCompare,
}

pub struct SweepArgs {
    pub kind: SweepKind,
    pub from: f64,
    pub to: f64,
    pub points: usize,
    pub t3_list: Vec<f64>,
    pub target_list: Vec<f64>,
}

fn grid(from: f64, to: f64, points: usize) -> Result<Vec<f64>> {
    if !(from.is_finite() && to.is_finite()) || from >= to {
        bail!("sweep range requires from < to (got {from}..{to})");
    }
    if points < 2 {
        bail!("sweep needs at least 2 points (got {points})");
    }
    let step = (to - from) / (points - 1) as f64;
    Ok((0..points).map(|i| from + step * i as f64).collect())
}

pub fn sweep(settings: &Settings, args: &SweepArgs) -> Result<()> {
    let xs = grid(args.from, args.to, args.points)?;
    let params = settings.params;

    let csv = match args.kind {
        SweepKind::RtotNm => {
            let mut header = vec!["curve", "n_m", "pg"];
            header.extend(QLDPC_BREAKDOWN_COLUMNS);
            let mut csv = Csv::new(header);
            let jobs: Vec<(f64, f64)> = args
                .t3_list
                .iter()
                .flat_map(|&t3| xs.iter().map(move |&n| (t3, n)))
                .collect();
            let rows = jobs
                .par_iter()
                .map(|&(t3, n_m)| {
                    let b = evaluate_code(&HgpConfig { memory_qubits: n_m }, &params, t3)?;
                    let mut row = vec![
                        format!("t3={}", fmt_sig(t3)),
                        fmt_sig(n_m),
                        fmt_sig(params.gate_error),
                    ];
                    row.extend(qldpc_breakdown_cells(&b));
                    Ok(row)
                })
                .collect::<Result<Vec<_>>>()?;
            rows.into_iter().for_each(|row| csv.push(row));
            csv
        }
        SweepKind::T3Nm => {
            let mut csv = Csv::new(vec![
                "curve",
                "n_m",
                "t3_max_s",
                "feasible",
                "residual",
                "iterations",
            ]);
            let jobs: Vec<(f64, f64)> = args
                .target_list
                .iter()
                .flat_map(|&target| xs.iter().map(move |&n| (target, n)))
                .collect();
            let rows = jobs
                .par_iter()
                .map(|&(target, n_m)| {
                    let solved =
                        max_transport_time(&HgpConfig { memory_qubits: n_m }, &params, target)?;
                    Ok(vec![
                        format!("target={}", fmt_sig(target)),
                        fmt_sig(n_m),
                        fmt_sig(solved.value),
                        solved.feasible.to_string(),
                        fmt_sig(solved.residual),
                        solved.iterations.to_string(),
                    ])
                })
                .collect::<Result<Vec<_>>>()?;
            rows.into_iter().for_each(|row| csv.push(row));
            csv
        }
        SweepKind::TrucksTarget => {
            let mut csv = Csv::new(fleet_sweep_header());
            let rows = xs
                .par_iter()
                .map(|&target| fleet_row_qldpc(settings, target))
                .collect::<Result<Vec<_>>>()?;
            rows.into_iter().for_each(|row| csv.push(row));
            csv
        }
        SweepKind::TrucksCompare => {
            let mut csv = Csv::new(fleet_sweep_header());
            let qldpc_rows = xs
                .par_iter()
                .map(|&target| fleet_row_qldpc(settings, target))
                .collect::<Result<Vec<_>>>()?;
            let surface_rows = xs
                .par_iter()
                .map(|&target| fleet_row_surface(settings, target))
                .collect::<Result<Vec<_>>>()?;
            qldpc_rows.into_iter().for_each(|row| csv.push(row));
            surface_rows.into_iter().for_each(|row| csv.push(row));
            csv
        }
    };

    let content = match settings.format_or(FormatChoice::Csv) {
        FormatChoice::Csv => csv.render(),
        FormatChoice::Json => render_json(csv.to_json()),
    };
    emit(settings.out.as_deref(), &content)
}

fn fleet_sweep_header() -> Vec<&'static str> {
    vec![
        "curve",
        "target",
        "patch_qubits",
        "trucks_unrounded",
        "trucks",
        "cost_transport_per_bit",
        "cost_memory_per_bit",
        "cost_per_bit",
        "feasible",
    ]
}

fn fleet_sweep_row(
    curve: &str,
    target: f64,
    patch_qubits: f64,
    fleet: Option<&FleetReport>,
) -> Vec<String> {
    match fleet {
        Some(fleet) => vec![
            curve.to_string(),
            fmt_sig(target),
            fmt_sig(patch_qubits),
            fmt_sig(fleet.total_trucks_unrounded),
            fleet.total_trucks.to_string(),
            fmt_sig(fleet.cost_transport_per_bit),
            fmt_sig(fleet.cost_memory_per_bit),
            fmt_sig(fleet.cost_per_bit),
            "true".to_string(),
        ],
        None => vec![
            curve.to_string(),
            fmt_sig(target),
            fmt_sig(patch_qubits),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            "false".to_string(),
        ],
    }
}

fn fleet_row_qldpc(settings: &Settings, target: f64) -> Result<Vec<String>> {
    let solved = min_hgp_patch(
        settings.transport_time_s,
        &settings.params,
        target,
        DEFAULT_HGP_BRACKET,
    )?;
    if !solved.feasible {
        return Ok(fleet_sweep_row("qldpc", target, solved.value, None));
    }
    let scenario = Scenario {
        code: HgpConfig {
            memory_qubits: solved.value,
        },
        ..settings.qldpc_scenario()
    };
    let fleet = fleet_qldpc(&scenario, &evaluate(&scenario)?)?;
    Ok(fleet_sweep_row("qldpc", target, solved.value, Some(&fleet)))
}

fn fleet_row_surface(settings: &Settings, target: f64) -> Result<Vec<String>> {
    let solved = min_surface_patch(
        settings.transport_time_s,
        &settings.params,
        target,
        DEFAULT_SURFACE_BRACKET,
    )?;
    if !solved.feasible {
        return Ok(fleet_sweep_row("surface", target, solved.value, None));
    }
    let scenario = SurfaceScenario {
        code: SurfaceConfig {
            patch_qubits: solved.value,
        },
        ..settings.surface_scenario()
    };
    let fleet = fleet_surface(&scenario, &evaluate_surface(&scenario)?)?;
    Ok(fleet_sweep_row(
        "surface",
        target,
        solved.value,
        Some(&fleet),
    ))
}

fn solve_payload(query: serde_json::Value, solved: &SolveResult) -> serde_json::Value {
    json!({
        "query": query,
        "value": solved.value,
        "feasible": solved.feasible,
        "residual": solved.residual,
        "iterations": solved.iterations,
    })
}

pub fn solve_t3(settings: &Settings) -> Result<()> {
    if settings.code == CodeChoice::Surface {
        bail!("solve-t3 applies to the qldpc pipeline; the surface baseline has no patch-size-free transport bound");
    }
    let code = HgpConfig {
        memory_qubits: settings.memory_qubits,
    };
    let solved = max_transport_time(&code, &settings.params, settings.target)?;
    if !solved.feasible {
        return Err(Infeasible(format!(
            "target rate {} is below the transport-free floor at n_m = {} (residual {:+e})",
            settings.target, settings.memory_qubits, solved.residual
        ))
        .into());
    }
    let payload = solve_payload(
        json!({
            "solve": "max-transport-time",
            "n_m": settings.memory_qubits,
            "target": settings.target,
            "pg": settings.params.gate_error,
        }),
        &solved,
    );
    emit_solve(settings, payload, &solved)
}

pub fn solve_nm(settings: &Settings, bracket: Option<(f64, f64)>) -> Result<()> {
    let (solved, label, default_bracket) = match settings.code {
        CodeChoice::Qldpc => (
            min_hgp_patch(
                settings.transport_time_s,
                &settings.params,
                settings.target,
                bracket.unwrap_or(DEFAULT_HGP_BRACKET),
            )?,
            "min-hgp-patch",
            DEFAULT_HGP_BRACKET,
        ),
        CodeChoice::Surface => (
            min_surface_patch(
                settings.transport_time_s,
                &settings.params,
                settings.target,
                bracket.unwrap_or(DEFAULT_SURFACE_BRACKET),
            )?,
            "min-surface-patch",
            DEFAULT_SURFACE_BRACKET,
        ),
    };
    let used = bracket.unwrap_or(default_bracket);
    if !solved.feasible {
        return Err(Infeasible(format!(
            "target rate {} is not reachable within the bracket [{}, {}] (residual {:+e})",
            settings.target, used.0, used.1, solved.residual
        ))
        .into());
    }
    let payload = solve_payload(
        json!({
            "solve": label,
            "t3_s": settings.transport_time_s,
            "target": settings.target,
            "bracket": [used.0, used.1],
            "pg": settings.params.gate_error,
        }),
        &solved,
    );
    emit_solve(settings, payload, &solved)
}

fn emit_solve(settings: &Settings, payload: serde_json::Value, solved: &SolveResult) -> Result<()> {
    let content = match settings.format_or(FormatChoice::Json) {
        FormatChoice::Json => render_json(payload),
        FormatChoice::Csv => {
            let mut csv = Csv::new(vec!["value", "feasible", "residual", "iterations"]);
            csv.push(vec![
                fmt_sig(solved.value),
                solved.feasible.to_string(),
                fmt_sig(solved.residual),
                solved.iterations.to_string(),
            ]);
            csv.render()
        }
    };
    emit(settings.out.as_deref(), &content)
}

pub fn fleet(settings: &Settings) -> Result<()> {
    let (label, patch, report, r_total) = match settings.code {
        CodeChoice::Qldpc => {
            let scenario = settings.qldpc_scenario();
            let breakdown = evaluate(&scenario)?;
            let report = fleet_qldpc(&scenario, &breakdown)?;
            (
                "qldpc",
                scenario.code.memory_qubits,
                report,
                breakdown.r_total,
            )
        }
        CodeChoice::Surface => {
            let scenario = settings.surface_scenario();
            let breakdown = evaluate_surface(&scenario)?;
            let report = fleet_surface(&scenario, &breakdown)?;
            (
                "surface",
                scenario.code.patch_qubits,
                report,
                breakdown.r_total,
            )
        }
    };
    let content = match settings.format_or(FormatChoice::Json) {
        FormatChoice::Json => render_json(json!({
            "code": label,
            "patch_qubits": patch,
            "t3_s": settings.transport_time_s,
            "r_total": r_total,
            "fleet": serde_json::to_value(report)?,
        })),
        FormatChoice::Csv => {
            let mut csv = Csv::new(vec![
                "code",
                "patch_qubits",
                "t3_s",
                "r_total",
                "block_bit_rate",
                "parallel_blocks",
                "blocks_per_truck",
                "trucks_per_cycle",
                "trucks_unrounded",
                "trucks",
                "cost_transport_per_bit",
                "cost_memory_per_bit",
                "cost_per_bit",
            ]);
            csv.push(vec![
                label.to_string(),
                fmt_sig(patch),
                fmt_sig(settings.transport_time_s),
                fmt_sig(r_total),
                fmt_sig(report.block_bit_rate),
                fmt_sig(report.parallel_blocks),
                fmt_sig(report.blocks_per_truck),
                fmt_sig(report.trucks_per_cycle),
                fmt_sig(report.total_trucks_unrounded),
                report.total_trucks.to_string(),
                fmt_sig(report.cost_transport_per_bit),
                fmt_sig(report.cost_memory_per_bit),
                fmt_sig(report.cost_per_bit),
            ]);
            csv.render()
        }
    };
    emit(settings.out.as_deref(), &content)
}

/// The side-by-side family comparison at one fidelity target. The surface
/// patch is always solved from the target (then rounded to whole qubits);
/// the qldpc patch defaults to the configured size and is solved the same
/// way when `solve_qldpc` is set.
pub fn compare(settings: &Settings, solve_qldpc: bool) -> Result<()> {
    let qldpc_patch = if solve_qldpc {
        let solved = min_hgp_patch(
            settings.transport_time_s,
            &settings.params,
            settings.target,
            DEFAULT_HGP_BRACKET,
        )?;
        if !solved.feasible {
            return Err(Infeasible(format!(
                "qldpc target rate {} unreachable (residual {:+e})",
                settings.target, solved.residual
            ))
            .into());
        }
        solved.value.round()
    } else {
        settings.memory_qubits
    };
    let surface_solved = min_surface_patch(
        settings.transport_time_s,
        &settings.params,
        settings.target,
        DEFAULT_SURFACE_BRACKET,
    )?;
    if !surface_solved.feasible {
        return Err(Infeasible(format!(
            "surface target rate {} unreachable (residual {:+e})",
            settings.target, surface_solved.residual
        ))
        .into());
    }
    let surface_patch = surface_solved.value.round();

    let qldpc_scenario = Scenario {
        code: HgpConfig {
            memory_qubits: qldpc_patch,
        },
        ..settings.qldpc_scenario()
    };
    let qldpc_breakdown = evaluate(&qldpc_scenario)?;
    let qldpc_fleet = fleet_qldpc(&qldpc_scenario, &qldpc_breakdown)?;

    let surface_scenario = SurfaceScenario {
        code: SurfaceConfig {
            patch_qubits: surface_patch,
        },
        ..settings.surface_scenario()
    };
    let surface_breakdown = evaluate_surface(&surface_scenario)?;
    let surface_fleet = fleet_surface(&surface_scenario, &surface_breakdown)?;

    let rows = [
        ("qldpc", qldpc_patch, qldpc_breakdown.fidelity, &qldpc_fleet),
        (
            "surface",
            surface_patch,
            surface_breakdown.fidelity,
            &surface_fleet,
        ),
    ];
    let content = match settings.format_or(FormatChoice::Csv) {
        FormatChoice::Csv => {
            let mut csv = Csv::new(vec![
                "code",
                "target",
                "patch_qubits",
                "fidelity",
                "trucks",
                "cost_transport_per_bit",
                "cost_memory_per_bit",
                "cost_per_bit",
                "cost_per_bit_usd",
            ]);
            for (label, patch, fidelity, fleet) in rows {
                csv.push(vec![
                    label.to_string(),
                    fmt_sig(settings.target),
                    fmt_sig(patch),
                    fmt_sig(fidelity),
                    fleet.total_trucks.to_string(),
                    fmt_sig(fleet.cost_transport_per_bit),
                    fmt_sig(fleet.cost_memory_per_bit),
                    fmt_sig(fleet.cost_per_bit),
                    format_dollars(fleet.cost_per_bit),
                ]);
            }
            csv.render()
        }
        FormatChoice::Json => {
            let entries: Vec<serde_json::Value> = rows
                .iter()
                .map(|(label, patch, fidelity, fleet)| {
                    json!({
                        "code": label,
                        "target": settings.target,
                        "patch_qubits": patch,
                        "fidelity": fidelity,
                        "trucks": fleet.total_trucks,
                        "cost_transport_per_bit": fleet.cost_transport_per_bit,
                        "cost_memory_per_bit": fleet.cost_memory_per_bit,
                        "cost_per_bit": fleet.cost_per_bit,
                        "cost_per_bit_usd": format_dollars(fleet.cost_per_bit),
                    })
                })
                .collect();
            render_json(serde_json::Value::Array(entries))
        }
    };
    emit(settings.out.as_deref(), &content)
}

fn parse_stages(text: &str) -> Result<StageSpec> {
    let mut stages = Vec::new();
    for part in text.split(',') {
        let (cycles, rate) = part
            .split_once('x')
            .with_context(|| format!("stage '{part}' must look like CYCLESxRATE, e.g. 2x0.1"))?;
        stages.push((
            cycles
                .trim()
                .parse::<f64>()
                .with_context(|| format!("bad cycle count in '{part}'"))?,
            rate.trim()
                .parse::<f64>()
                .with_context(|| format!("bad rate in '{part}'"))?,
        ));
    }
    Ok(StageSpec::new(stages)?)
}

pub fn validate(settings: &Settings, stages: Option<&str>) -> Result<()> {
    let (source, spec) = match stages {
        Some(text) => ("explicit".to_string(), parse_stages(text)?),
        None => {
            if settings.code == CodeChoice::Surface {
                bail!("validate assembles the qldpc pipeline; pass --stages for other structures");
            }
            (
                "qldpc-pipeline".to_string(),
                stage_spec(&settings.qldpc_scenario())?,
            )
        }
    };
    let exact = exact_failure_prob(&spec)?;
    let approx = approx_failure_prob(&spec)?;
    let sum: f64 = spec.stages.iter().map(|&(n, p)| n * p).sum();
    let mc = monte_carlo_failure(&spec, settings.trials, settings.seed)?;
    let within = (mc.failure_prob - exact).abs() <= 3.0 * mc.std_error.max(f64::EPSILON);

    let payload = json!({
        "source": source,
        "stages": spec.stages.len(),
        "exact": exact,
        "approx": approx.value,
        "approx_warning": approx.warning.as_ref().map(|w| w.to_string()),
        "gap": approx.value - exact,
        "second_order_bound": sum * sum / 2.0,
        "monte_carlo": serde_json::to_value(mc)?,
        "within_3_sigma": within,
        "seed": settings.seed,
    });
    emit(settings.out.as_deref(), &render_json(payload))
}
