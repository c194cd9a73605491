//! Discrete-time lifetime simulation.
//!
//! Every step runs liveness update, selection, routing, energy accounting
//! and metric recording, in that order. A run ends when every sensor is
//! dead, when the step cap is reached, or when the network has been
//! declared dead and nothing can drain energy any more (no idle cost), at
//! which point every later step would repeat the last record.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_6, PI};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coverage::Deployment;
use crate::error::{Error, Result};
use crate::geometry::{Sensor, SensorId, TargetRegion, Vec3};
use crate::routing::{build_geo_graph, charge_route_energy, charge_undelivered, EnergyCosts, Route};
use crate::selection::{greedy_select, Priority, SelectionOutcome, SelectionParams, SelectionStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReselectPolicy {
    /// Run selection from scratch at every step.
    EveryStep,
    /// Keep the previous selection until a member dies or it stops meeting the target.
    OnDeath,
}

impl ReselectPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            ReselectPolicy::EveryStep => "every_step",
            ReselectPolicy::OnDeath => "on_death",
        }
    }
}

impl fmt::Display for ReselectPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ReselectPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "every_step" => Ok(ReselectPolicy::EveryStep),
            "on_death" => Ok(ReselectPolicy::OnDeath),
            other => Err(Error::invalid(
                "reselect_policy",
                format!("unknown policy `{other}` (expected every_step or on_death)"),
            )),
        }
    }
}

/// All parameters of one simulation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// `|L_0|`
    pub n_sensors: usize,
    pub l_x: f64,
    pub l_y: f64,
    /// Transmission range.
    pub r: f64,
    pub e_min: f64,
    pub e_max: f64,
    pub gamma: f64,
    pub delta1: f64,
    pub cell_size: f64,
    /// Height of the monitored plane.
    pub h_t: f64,
    pub half_angle: f64,
    /// Sensing radius.
    pub range: f64,
    pub elevation_min: f64,
    pub elevation_max: f64,
    pub e_sense: f64,
    pub e_relay: f64,
    /// Per-step drain of live sensors that neither sense nor relay.
    pub e_idle: f64,
    pub reselect_policy: ReselectPolicy,
    /// Hard step cap; `None` means `|L_0| * ceil(e_max / e_sense)`.
    pub max_steps: Option<u64>,
    pub seed: u64,
    pub priority: Priority,
    /// Base station ground position; defaults to the region center.
    pub base_x: Option<f64>,
    pub base_y: Option<f64>,
    /// Redraw the deployment when the initial live coverage is empty.
    pub resample_degenerate: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            n_sensors: 200,
            l_x: 100.0,
            l_y: 100.0,
            r: 25.0,
            e_min: 1000.0,
            e_max: 1300.0,
            gamma: 0.5,
            delta1: 0.95,
            cell_size: 1.0,
            h_t: 20.0,
            half_angle: FRAC_PI_6,
            range: 60.0,
            elevation_min: FRAC_PI_6,
            elevation_max: FRAC_PI_2,
            e_sense: 1.0,
            e_relay: 0.5,
            e_idle: 0.0,
            reselect_policy: ReselectPolicy::EveryStep,
            max_steps: None,
            seed: 1,
            priority: Priority::Ma,
            base_x: None,
            base_y: None,
            resample_degenerate: false,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        fn positive(key: &'static str, v: f64) -> Result<()> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::invalid(key, format!("must be positive and finite, got {v}")))
            }
        }
        fn non_negative(key: &'static str, v: f64) -> Result<()> {
            if v >= 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::invalid(key, format!("must be non-negative and finite, got {v}")))
            }
        }
        if self.n_sensors == 0 {
            return Err(Error::invalid("n_sensors", "network must contain at least one sensor"));
        }
        positive("l_x", self.l_x)?;
        positive("l_y", self.l_y)?;
        positive("r", self.r)?;
        positive("e_min", self.e_min)?;
        positive("e_max", self.e_max)?;
        if self.e_min > self.e_max {
            return Err(Error::invalid("e_min", "must not exceed e_max"));
        }
        self.selection_params().validate()?;
        positive("cell_size", self.cell_size)?;
        if !self.h_t.is_finite() {
            return Err(Error::invalid("h_t", "must be finite"));
        }
        if !(self.half_angle > 0.0 && self.half_angle < FRAC_PI_2) {
            return Err(Error::invalid("half_angle", "must lie in (0, pi/2)"));
        }
        positive("range", self.range)?;
        for (key, v) in [("elevation_min", self.elevation_min), ("elevation_max", self.elevation_max)] {
            if !(-FRAC_PI_2..=FRAC_PI_2).contains(&v) {
                return Err(Error::invalid(key, "must lie in [-pi/2, pi/2]"));
            }
        }
        if self.elevation_min > self.elevation_max {
            return Err(Error::invalid("elevation_min", "must not exceed elevation_max"));
        }
        positive("e_sense", self.e_sense)?;
        non_negative("e_relay", self.e_relay)?;
        non_negative("e_idle", self.e_idle)?;
        if self.max_steps == Some(0) {
            return Err(Error::invalid("max_steps", "must be at least 1"));
        }
        for (key, v) in [("base_x", self.base_x), ("base_y", self.base_y)] {
            if v.is_some_and(|v| !v.is_finite()) {
                return Err(Error::invalid(key, "must be finite"));
            }
        }
        Ok(())
    }

    pub fn region(&self) -> Result<TargetRegion> {
        TargetRegion::new(self.l_x, self.l_y, self.h_t, self.cell_size)
    }

    pub fn selection_params(&self) -> SelectionParams {
        SelectionParams {
            gamma: self.gamma,
            delta1: self.delta1,
        }
    }

    pub fn energy_costs(&self) -> EnergyCosts {
        EnergyCosts {
            sense: self.e_sense,
            relay: self.e_relay,
        }
    }

    pub fn base_position(&self) -> Vec3 {
        Vec3::new(
            self.base_x.unwrap_or(self.l_x / 2.0),
            self.base_y.unwrap_or(self.l_y / 2.0),
            0.0,
        )
    }

    /// Upper bound on steps any sensor can stay live while sensing.
    pub fn k(&self) -> u64 {
        (self.e_max / self.e_sense).ceil() as u64
    }

    /// Step cap `T`.
    pub fn horizon(&self) -> u64 {
        self.max_steps
            .unwrap_or_else(|| (self.n_sensors as u64).saturating_mul(self.k()))
    }
}

/// Mutable state of a run between steps.
#[derive(Debug, Clone)]
pub struct NetworkState {
    pub deployment: Deployment,
    /// Index of the last completed step (0 before the first).
    pub step: u64,
    pub live: Vec<SensorId>,
    pub selected: Vec<SensorId>,
    pub routes: Vec<Option<Route>>,
    /// `|C(L_0)|`
    pub baseline: usize,
    pub last_status: Option<SelectionStatus>,
}

impl NetworkState {
    pub fn new(deployment: Deployment) -> Result<Self> {
        if deployment.is_empty() {
            return Err(Error::EmptyNetwork);
        }
        let live = deployment.live_ids();
        let baseline = deployment.coverage_of(&live).len();
        if baseline == 0 {
            return Err(Error::DegenerateDeployment);
        }
        Ok(NetworkState {
            deployment,
            step: 0,
            live,
            selected: Vec::new(),
            routes: Vec::new(),
            baseline,
            last_status: None,
        })
    }

    pub fn energies(&self) -> Vec<f64> {
        self.deployment.sensors().iter().map(|s| s.energy).collect()
    }

    pub fn total_energy(&self) -> f64 {
        self.deployment.sensors().iter().map(|s| s.energy).sum()
    }

    pub fn is_exhausted(&self) -> bool {
        self.deployment.sensors().iter().all(|s| !s.is_live())
    }
}

/// Metrics for one time step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: u64,
    /// `|L_j|`
    pub live: usize,
    /// `|S_j|`
    pub selected: usize,
    /// `|C(S_j)|`
    pub coverage_cells: usize,
    /// `|OV(S_j)|`
    pub overlap_cells: usize,
    pub coverage_pct: f64,
    pub overlap_pct: f64,
    pub delivery_failures: usize,
    /// `|C(L_j)|`
    pub live_coverage_cells: usize,
    /// Selected sensors plus distinct non-selected relays.
    pub active: usize,
    pub network_dead: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Milestones {
    pub a_ic: u64,
    pub a_fc: u64,
    pub a_ac: u64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Summary {
    /// `sum_j |C(S_j)|` over steps `1..=a_FC`, in cell-steps.
    pub time_coverage_cells: f64,
    /// `sum_j coverage_pct / 100` over steps `1..=a_FC`, in full-coverage steps.
    pub time_coverage: f64,
    /// `a_FC` at `gamma = 0.5`.
    pub half_coverage_lifetime: u64,
    pub mean_overlap_pct: f64,
    pub mean_selected: f64,
    pub mean_live: f64,
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunEnd {
    /// Every sensor ran out of energy.
    Exhausted,
    /// Declared dead with no remaining drain; later steps would repeat the last record.
    Stationary,
    /// Reached the step cap.
    Horizon,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsTimeline {
    pub priority: Priority,
    pub seed: u64,
    pub baseline: usize,
    pub gamma: f64,
    pub delta1: f64,
    pub records: Vec<StepRecord>,
    pub milestones: Milestones,
    pub summary: Summary,
    pub end: RunEnd,
}

fn sample_sensors(config: &SimConfig, rng: &mut ChaCha8Rng) -> Vec<Sensor> {
    (0..config.n_sensors)
        .map(|id| {
            let x = rng.random::<f64>() * config.l_x;
            let y = rng.random::<f64>() * config.l_y;
            let azimuth = rng.random::<f64>() * 2.0 * PI;
            let elevation =
                config.elevation_min + rng.random::<f64>() * (config.elevation_max - config.elevation_min);
            let energy = config.e_min + rng.random::<f64>() * (config.e_max - config.e_min);
            Sensor {
                id,
                position: Vec3::new(x, y, 0.0),
                azimuth,
                elevation,
                half_angle: config.half_angle,
                range: config.range,
                energy,
            }
        })
        .collect()
}

const RESAMPLE_ATTEMPTS: usize = 100;

/// Random uniform deployment, reproducible from `seed`.
pub fn deploy(config: &SimConfig, seed: u64) -> Result<NetworkState> {
    if config.n_sensors == 0 {
        return Err(Error::EmptyNetwork);
    }
    config.validate()?;
    let region = config.region()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let attempts = if config.resample_degenerate { RESAMPLE_ATTEMPTS } else { 1 };
    for _ in 0..attempts {
        let deployment = Deployment::new(region, sample_sensors(config, &mut rng))?;
        match NetworkState::new(deployment) {
            Err(Error::DegenerateDeployment) => continue,
            other => return other,
        }
    }
    Err(Error::DegenerateDeployment)
}

fn select(state: &NetworkState, config: &SimConfig) -> Result<SelectionOutcome> {
    let params = config.selection_params();
    let dep = &state.deployment;
    if config.reselect_policy == ReselectPolicy::OnDeath && !state.selected.is_empty() {
        let kept: Vec<SensorId> = state
            .selected
            .iter()
            .copied()
            .filter(|&id| dep.sensor(id).is_live())
            .collect();
        if kept.len() == state.selected.len() {
            let live_cells = dep.coverage_of(&state.live).len();
            let delta = params.delta_for(live_cells, state.baseline);
            let achieved = dep.coverage_of(&kept);
            if !params.is_network_dead(live_cells, state.baseline)
                && SelectionParams::guard_met(achieved.len(), delta, live_cells)
            {
                return Ok(SelectionOutcome {
                    status: SelectionStatus::Selected,
                    selected: kept,
                    achieved_coverage: achieved,
                    delta_used: delta,
                    live_coverage: live_cells,
                });
            }
        }
    }
    greedy_select(dep, &state.live, &config.priority, &params, state.baseline)
}

fn pct(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64 * 100.0
    }
}

/// Advances the network by one time step.
pub fn step(state: &mut NetworkState, config: &SimConfig) -> Result<StepRecord> {
    state.step += 1;
    state.live = state.deployment.live_ids();

    let outcome = select(state, config)?;
    let dep = &state.deployment;

    let graph = build_geo_graph(
        state.live.iter().map(|&id| (id, dep.sensor(id).position)),
        config.r,
        config.base_position(),
    );
    let routes = graph.routes_to_base(&outcome.selected);

    let costs = config.energy_costs();
    let mut energies: Vec<f64> = dep.sensors().iter().map(|s| s.energy).collect();
    let mut busy = vec![false; dep.len()];
    let mut failures = 0;
    for (&src, route) in outcome.selected.iter().zip(&routes) {
        busy[src] = true;
        match route {
            Some(route) => {
                for relay in route.relays() {
                    busy[relay] = true;
                }
                charge_route_energy(route, &mut energies, &costs);
            }
            None => {
                failures += 1;
                charge_undelivered(src, &mut energies, &costs);
            }
        }
    }
    let active = busy.iter().filter(|&&b| b).count();
    if config.e_idle > 0.0 {
        for &id in &state.live {
            if !busy[id] {
                energies[id] = (energies[id] - config.e_idle).max(0.0);
            }
        }
    }

    let overlap_cells = dep.overlap_of(&outcome.selected).len();
    let coverage_cells = outcome.achieved_coverage.len();
    let record = StepRecord {
        step: state.step,
        live: state.live.len(),
        selected: outcome.selected.len(),
        coverage_cells,
        overlap_cells,
        coverage_pct: pct(coverage_cells, state.baseline),
        overlap_pct: pct(overlap_cells, coverage_cells),
        delivery_failures: failures,
        live_coverage_cells: outcome.live_coverage,
        active,
        network_dead: outcome.status == SelectionStatus::NetworkDead,
    };

    for (id, e) in energies.into_iter().enumerate() {
        state.deployment.set_energy(id, e);
    }
    state.selected = outcome.selected;
    state.routes = routes;
    state.last_status = Some(outcome.status);
    Ok(record)
}

/// Runs a deployed network to completion.
pub fn run_state(mut state: NetworkState, config: &SimConfig) -> Result<MetricsTimeline> {
    let horizon = config.horizon();
    let mut records = Vec::new();
    let end = loop {
        if state.is_exhausted() {
            break RunEnd::Exhausted;
        }
        if state.step >= horizon {
            break RunEnd::Horizon;
        }
        let record = step(&mut state, config)?;
        let stationary = record.network_dead && config.e_idle == 0.0;
        records.push(record);
        if stationary {
            break RunEnd::Stationary;
        }
    };
    let milestones = detect_milestones(&records, config.gamma, config.delta1, state.baseline);
    let mut timeline = MetricsTimeline {
        priority: config.priority,
        seed: config.seed,
        baseline: state.baseline,
        gamma: config.gamma,
        delta1: config.delta1,
        records,
        milestones,
        summary: Summary::default(),
        end,
    };
    timeline.summary = summarize(&timeline);
    Ok(timeline)
}

/// Deploys with `seed` and runs to completion.
pub fn run(config: &SimConfig, seed: u64) -> Result<MetricsTimeline> {
    config.validate()?;
    let state = deploy(config, seed)?;
    let config = SimConfig {
        seed,
        ..config.clone()
    };
    run_state(state, &config)
}

fn prefix_len(records: &[StepRecord], ok: impl Fn(&StepRecord) -> bool) -> u64 {
    records.iter().take_while(|r| ok(r)).count() as u64
}

/// Milestones from a timeline whose `i`-th record is step `i + 1`.
///
/// `a_IC`: last step of the prefix with full initial coverage. `a_FC`: last
/// step of the prefix with coverage `>= gamma * baseline`. `a_AC`: last step
/// `a >= a_IC` such that every step in `a_IC..=a` has coverage
/// `>= delta1 * |C(L_j)|`. Zero means the property never held.
pub fn detect_milestones(records: &[StepRecord], gamma: f64, delta1: f64, baseline: usize) -> Milestones {
    let a_ic = prefix_len(records, |r| r.coverage_cells == baseline);
    let a_fc = prefix_len(records, |r| r.coverage_cells as f64 >= gamma * baseline as f64);
    let tail = records.iter().skip(a_ic as usize);
    let extra = tail
        .take_while(|r| r.coverage_cells as f64 >= delta1 * r.live_coverage_cells as f64)
        .count() as u64;
    Milestones {
        a_ic,
        a_fc,
        a_ac: a_ic + extra,
    }
}

impl MetricsTimeline {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Time-coverage, half-coverage lifetime and means over steps `1..=a_FC`.
pub fn summarize(timeline: &MetricsTimeline) -> Summary {
    let records = &timeline.records;
    let fc = detect_milestones(records, timeline.gamma, timeline.delta1, timeline.baseline).a_fc as usize;
    let half = detect_milestones(records, 0.5, timeline.delta1, timeline.baseline).a_fc;
    let window = &records[..fc];
    let mean = |f: &dyn Fn(&StepRecord) -> f64| {
        if window.is_empty() {
            0.0
        } else {
            window.iter().map(f).sum::<f64>() / window.len() as f64
        }
    };
    Summary {
        time_coverage_cells: window.iter().map(|r| r.coverage_cells as f64).sum(),
        time_coverage: window.iter().map(|r| r.coverage_pct / 100.0).sum(),
        half_coverage_lifetime: half,
        mean_overlap_pct: mean(&|r| r.overlap_pct),
        mean_selected: mean(&|r| r.selected as f64),
        mean_live: mean(&|r| r.live as f64),
    }
}
