use camcover_core::{
    build_geo_graph, deploy, run, step, Priority, ReselectPolicy, RunEnd, SimConfig,
};

fn small(priority: Priority) -> SimConfig {
    SimConfig {
        n_sensors: 40,
        e_min: 20.0,
        e_max: 30.0,
        priority,
        ..SimConfig::default()
    }
}

#[test]
fn step_invariants_hold_over_a_full_run() {
    for priority in Priority::ALL {
        for policy in [ReselectPolicy::EveryStep, ReselectPolicy::OnDeath] {
            let config = SimConfig {
                reselect_policy: policy,
                ..small(priority)
            };
            let mut state = deploy(&config, 11).unwrap();
            let baseline = state.baseline;
            let mut last_live_cov = baseline;
            let mut energies = state.energies();
            while !state.is_exhausted() {
                let record = step(&mut state, &config).unwrap();
                let now = state.energies();
                for (before, after) in energies.iter().zip(&now) {
                    assert!(after <= before);
                }
                assert!(record.live_coverage_cells <= last_live_cov);
                last_live_cov = record.live_coverage_cells;
                if record.live_coverage_cells == baseline {
                    assert_eq!(record.coverage_pct, 100.0);
                }
                if record.selected > 0 {
                    let before: f64 = energies.iter().sum();
                    let after: f64 = now.iter().sum();
                    assert!(after < before);
                }
                for &id in &state.selected {
                    assert!(state.live.contains(&id));
                }
                assert!((0.0..=100.0).contains(&record.coverage_pct));
                energies = now;
                if record.network_dead {
                    break;
                }
            }
        }
    }
}

#[test]
fn drain_matches_route_lengths() {
    let config = small(Priority::Mlmo);
    let mut state = deploy(&config, 5).unwrap();
    let before = state.energies();
    let live_before = state.deployment.live_ids();
    let graph = build_geo_graph(
        live_before.iter().map(|&id| (id, state.deployment.sensor(id).position)),
        config.r,
        config.base_position(),
    );
    step(&mut state, &config).unwrap();
    let routes = graph.routes_to_base(&state.selected);
    assert_eq!(routes, state.routes);
    let expected: f64 = routes
        .iter()
        .map(|r| config.e_sense + r.as_ref().map_or(0.0, |r| (r.hop_count() - 1) as f64 * config.e_relay))
        .sum();
    // Energies start >= 20, far from the clamp, so the drain is exact.
    let drained: f64 = before.iter().sum::<f64>() - state.total_energy();
    assert!((drained - expected).abs() < 1e-9, "{drained} vs {expected}");
}

#[test]
fn run_is_deterministic() {
    let config = small(Priority::Ma);
    let a = run(&config, 9).unwrap();
    let b = run(&config, 9).unwrap();
    assert_eq!(a, b);
    let c = run(&config, 10).unwrap();
    assert_ne!(a.records, c.records);
}

#[test]
fn fc_guard_holds_up_to_a_fc() {
    for priority in Priority::ALL {
        let t = run(&small(priority), 2).unwrap();
        let m = t.milestones;
        assert!(m.a_ic >= 1);
        assert!(m.a_ac >= m.a_ic);
        for r in &t.records[..m.a_fc as usize] {
            assert!(r.coverage_cells as f64 >= 0.5 * t.baseline as f64);
        }
        assert_eq!(t.summary.half_coverage_lifetime, m.a_fc);
    }
}

#[test]
fn idle_drain_runs_until_everything_dies() {
    let config = SimConfig {
        e_idle: 2.0,
        ..small(Priority::Ma)
    };
    let t = run(&config, 4).unwrap();
    assert_eq!(t.end, RunEnd::Exhausted);
    assert!(t.records.iter().any(|r| r.network_dead));
}

#[test]
fn horizon_caps_the_run() {
    let config = SimConfig {
        max_steps: Some(5),
        ..small(Priority::Ma)
    };
    let t = run(&config, 1).unwrap();
    assert_eq!(t.records.len(), 5);
    assert_eq!(t.end, RunEnd::Horizon);
}

#[test]
fn default_lifetime_order_of_magnitude() {
    let t = run(&SimConfig::default(), 1).unwrap();
    let life = t.summary.half_coverage_lifetime;
    // Each sensor can sense for at least e_min / (e_sense + e_relay) steps while unused ones wait.
    assert!((600..20_000).contains(&life), "{life}");
    assert_eq!(t.records.first().map(|r| r.coverage_pct), Some(100.0));
    assert!(t.records.last().unwrap().network_dead);
}
