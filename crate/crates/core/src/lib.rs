//! Power-aware coverage for directional camera sensor networks.
//!
//! The crate models each camera's field of view as a truncated cone,
//! rasterizes footprints onto a horizontal target plane, selects a minimal
//! covering subset each time step with a pluggable priority rule, routes
//! frames to a base station over the geographic neighbor graph and tracks
//! battery drain until the network can no longer cover enough of the plane.

// Negated comparisons are used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coverage;
pub mod error;
pub mod geometry;
pub mod routing;
pub mod selection;
pub mod sim;

pub use coverage::{cardinality, overlap_set, overlap_with_candidate, union_coverage, CellSet, Deployment};
pub use error::{Error, Result};
pub use geometry::{
    boresight_from_angles, covers_point, geo_neighbors, rasterize_coverage, visually_neighbors, Sensor,
    SensorId, TargetRegion, Vec3,
};
pub use routing::{build_geo_graph, charge_route_energy, route_to_base, EnergyCosts, GeoGraph, Route, Vertex};
pub use selection::{
    greedy_select, priority_ma, priority_mlmo, prune_minimal, Priority, PriorityFunction, ScoreInput,
    SelectionOutcome, SelectionParams, SelectionStatus,
};
pub use sim::{
    deploy, detect_milestones, run, run_state, step, summarize, Milestones, MetricsTimeline, NetworkState,
    ReselectPolicy, RunEnd, SimConfig, StepRecord, Summary,
};
