use std::hint::black_box;

use camcover_core::{deploy, greedy_select, rasterize_coverage, step, Priority, SimConfig};
use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

fn rasterize(c: &mut Criterion) {
    let config = SimConfig::default();
    let state = deploy(&config, 1).unwrap();
    let region = *state.deployment.region();
    let sensors = state.deployment.sensors().to_vec();
    c.bench_function("rasterize_200_sensors", |b| {
        b.iter(|| {
            for s in &sensors {
                black_box(rasterize_coverage(s, &region));
            }
        })
    });
}

fn select(c: &mut Criterion) {
    let config = SimConfig::default();
    let state = deploy(&config, 1).unwrap();
    let params = config.selection_params();
    for priority in Priority::ALL {
        c.bench_function(&format!("greedy_select_{priority}"), |b| {
            b.iter(|| {
                greedy_select(&state.deployment, &state.live, &priority, &params, state.baseline).unwrap()
            })
        });
    }
}

fn simulate_step(c: &mut Criterion) {
    let config = SimConfig {
        priority: Priority::Mlmo,
        ..SimConfig::default()
    };
    let state = deploy(&config, 1).unwrap();
    c.bench_function("sim_step_mlmo", |b| {
        b.iter_batched(
            || state.clone(),
            |mut s| step(&mut s, &config).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, rasterize, select, simulate_step);
criterion_main!(benches);
