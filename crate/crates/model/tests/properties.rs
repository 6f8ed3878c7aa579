//! Property tests for the model invariants: monotonicities, exact additive
//! identities, approximation ordering, solver round-trips, and determinism.

use proptest::prelude::*;

use qsneakernet_model::{
    approx_failure_prob, cycle_time, evaluate, evaluate_surface, exact_failure_prob, fleet_qldpc,
    hgp_lfr_per_cycle, idling_adjusted_gate_error, max_transport_time, monte_carlo_failure,
    rearrangement_time, surface_lfr_per_cycle, total_failure_rate, HgpConfig, PhysicalParams,
    Scenario, StageSpec, SurfaceConfig, SurfaceScenario,
};

fn params() -> PhysicalParams {
    PhysicalParams::default()
}

fn qldpc_scenario(n_m: f64, t3: f64) -> Scenario {
    Scenario {
        code: HgpConfig { memory_qubits: n_m },
        transport_time_s: t3,
        truck_capacity_qubits: 1_000_000.0_f64.max(2.0 * n_m),
        ..Scenario::default()
    }
}

proptest! {
    #[test]
    fn rearrangement_time_strictly_increases(
        n in 1.0f64..1e6,
        bump in 1.0f64..1e5,
    ) {
        let p = params();
        let smaller = rearrangement_time(n, &p).unwrap();
        let larger = rearrangement_time(n + bump, &p).unwrap();
        prop_assert!(larger > smaller);
        prop_assert_eq!(cycle_time(n, &p).unwrap(), 8.0 * smaller);
    }

    #[test]
    fn hgp_lfr_monotonicities(
        n in 1e3f64..1e6,
        bump in 10.0f64..1e5,
        p_lo in 1e-5f64..3e-3,
        p_scale in 1.01f64..3.0,
    ) {
        // decreasing in patch size below threshold
        let at_n = hgp_lfr_per_cycle(n, 1e-3).unwrap().value;
        let at_bigger = hgp_lfr_per_cycle(n + bump, 1e-3).unwrap().value;
        prop_assert!(at_bigger < at_n);
        // increasing in gate error at fixed size
        let p_hi = (p_lo * p_scale).min(5.9e-3);
        let lo = hgp_lfr_per_cycle(n, p_lo).unwrap().value;
        let hi = hgp_lfr_per_cycle(n, p_hi).unwrap().value;
        prop_assert!(hi > lo);
        prop_assert!(lo.is_finite() && lo > 0.0);
    }

    #[test]
    fn surface_lfr_decreases_with_distance(
        d in 1.0f64..200.0,
        bump in 0.5f64..50.0,
    ) {
        let at_d = surface_lfr_per_cycle(d, 1e-3).unwrap().value;
        let at_bigger = surface_lfr_per_cycle(d + bump, 1e-3).unwrap().value;
        prop_assert!(at_bigger < at_d);
    }

    #[test]
    fn idling_adjustment_always_inflates(
        p_g in 1e-6f64..0.1,
        n in 1.0f64..1e6,
    ) {
        let adjusted = idling_adjusted_gate_error(p_g, n, &params()).unwrap();
        prop_assert!(adjusted > p_g);
        prop_assert!(adjusted.is_finite());
    }

    #[test]
    fn breakdown_identities_are_exact(
        n_m in 5e3f64..3e5,
        t3 in 0.0f64..2e4,
    ) {
        let b = evaluate(&qldpc_scenario(n_m, t3)).unwrap();
        prop_assert_eq!(
            b.r_net,
            b.r_init + b.r_bell_create + b.r_load + b.r_transport + b.r_unload_measure
        );
        prop_assert_eq!(b.t_total_s, b.t_load_s + t3 + b.t_unload_s);
        prop_assert_eq!(
            b.r_total,
            b.r_bell_measure + b.r_unload_swap + b.r_store + 2.0 * b.r_net
        );
        prop_assert_eq!(b.fidelity, 1.0 - b.r_total);
        for rate in [
            b.r_init, b.r_bell_create, b.r_load, b.r_transport, b.r_unload_measure,
            b.r_store, b.r_unload_swap, b.r_bell_measure,
        ] {
            prop_assert!(rate.is_finite() && rate >= 0.0);
        }
    }

    #[test]
    fn surface_identities_are_exact(
        n_ms in 9.0f64..5e4,
        t3 in 0.0f64..2e4,
    ) {
        let scenario = SurfaceScenario {
            code: SurfaceConfig { patch_qubits: n_ms },
            transport_time_s: t3,
            device_qubits: 1e5f64.max(2.0 * n_ms),
            ..SurfaceScenario::default()
        };
        let b = evaluate_surface(&scenario).unwrap();
        prop_assert_eq!(b.r_net, b.r_bell_create + b.r_transport + b.r_cycle);
        prop_assert_eq!(b.r_total, b.r_bell_measure + b.r_store + 2.0 * b.r_net);
        prop_assert_eq!(b.fidelity, 1.0 - b.r_total);
    }

    #[test]
    fn exact_never_exceeds_approx_on_union_domain(
        spec in prop::collection::vec((1.0f64..50.0, 1e-9f64..5e-3), 1..8)
    ) {
        let spec = StageSpec::new(spec).unwrap();
        let exact = exact_failure_prob(&spec).unwrap();
        let approx = approx_failure_prob(&spec).unwrap().value;
        prop_assert!(exact <= approx);
        if approx <= 1.0 {
            prop_assert!(approx - exact <= approx * approx / 2.0 + 1e-15);
        }
    }

    #[test]
    fn monte_carlo_is_deterministic(
        seed in any::<u64>(),
        rate in 1e-4f64..0.5,
        cycles in 1.0f64..20.0,
    ) {
        let spec = StageSpec::new(vec![(cycles, rate)]).unwrap();
        let a = monte_carlo_failure(&spec, 10_000, seed).unwrap();
        let b = monte_carlo_failure(&spec, 10_000, seed).unwrap();
        prop_assert_eq!(a.failure_prob.to_bits(), b.failure_prob.to_bits());
        prop_assert_eq!(a.failures, b.failures);
    }

    #[test]
    fn transport_solve_round_trips(
        n_m in 3e4f64..2e5,
        t3 in 0.0f64..1.5e4,
    ) {
        let code = HgpConfig { memory_qubits: n_m };
        let target = total_failure_rate(&code, &params(), t3).unwrap();
        prop_assume!(target > 0.0 && target < 1.0);
        let solved = max_transport_time(&code, &params(), target).unwrap();
        prop_assert!(solved.feasible);
        prop_assert!(solved.value >= 0.0);
        let forward = total_failure_rate(&code, &params(), solved.value).unwrap();
        prop_assert!((forward - target).abs() <= 1e-9 * target);
    }

    #[test]
    fn fleet_totals_scale_linearly_in_destinations(
        n_m in 3e4f64..1.5e5,
        t3 in 0.0f64..1.5e4,
        s in 2u32..20,
    ) {
        let mut scenario = qldpc_scenario(n_m, t3);
        scenario.destinations = 1;
        let one = fleet_qldpc(&scenario, &evaluate(&scenario).unwrap()).unwrap();
        scenario.destinations = s;
        let many = fleet_qldpc(&scenario, &evaluate(&scenario).unwrap()).unwrap();
        prop_assert_eq!(
            many.total_trucks_unrounded,
            f64::from(s) * one.total_trucks_unrounded
        );
        prop_assert!(many.total_trucks >= one.total_trucks);
    }
}
