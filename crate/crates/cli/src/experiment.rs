//! Multi-seed, multi-algorithm experiment execution and artifact output.

use std::fs;
use std::path::{Path, PathBuf};

use camcover_core::{run, MetricsTimeline, Priority, RunEnd, SimConfig, StepRecord};
use rayon::prelude::*;

use crate::config::ExperimentSpec;
use crate::error::{CliError, Result};
use crate::format::{fmt_float, runs_csv, summary_csv, summary_json, timeline_csv, RunRow, SummaryRow};

/// Everything produced by one experiment.
#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub timelines: Vec<MetricsTimeline>,
    pub runs: Vec<RunRow>,
    pub summary: Vec<SummaryRow>,
    pub files: Vec<PathBuf>,
}

impl ExperimentReport {
    pub fn summary_for(&self, algorithm: Priority) -> Option<&SummaryRow> {
        self.summary.iter().find(|s| s.algorithm == algorithm)
    }
}

pub fn timeline_file_name(algorithm: Priority, seed: u64) -> String {
    format!("timeline_{algorithm}_seed{seed}.csv")
}

/// Runs every `(algorithm, seed)` pair, in parallel when `threads != 1`.
pub fn run_all(spec: &ExperimentSpec, threads: usize) -> Result<Vec<MetricsTimeline>> {
    spec.validate()?;
    let jobs: Vec<(Priority, u64)> = spec
        .algorithms
        .iter()
        .flat_map(|&a| spec.seeds.iter().map(move |&s| (a, s)))
        .collect();
    let one = |&(algorithm, seed): &(Priority, u64)| -> Result<MetricsTimeline> {
        let config = SimConfig {
            priority: algorithm,
            seed,
            ..spec.config.clone()
        };
        run(&config, seed).map_err(|source| CliError::Run {
            algorithm: algorithm.to_string(),
            seed,
            source,
        })
    };
    if threads == 1 {
        return jobs.iter().map(one).collect();
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if threads > 1 {
        builder = builder.num_threads(threads);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Internal(format!("thread pool: {e}")))?;
    pool.install(|| jobs.par_iter().map(one).collect())
}

fn write(path: PathBuf, contents: &str, files: &mut Vec<PathBuf>) -> Result<()> {
    fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
    files.push(path);
    Ok(())
}

/// Record that a finished run would keep producing after its last step.
fn padding(t: &MetricsTimeline) -> Option<StepRecord> {
    let last = t.records.last()?;
    Some(match t.end {
        RunEnd::Exhausted => StepRecord {
            step: 0,
            live: 0,
            selected: 0,
            coverage_cells: 0,
            overlap_cells: 0,
            coverage_pct: 0.0,
            overlap_pct: 0.0,
            delivery_failures: 0,
            live_coverage_cells: 0,
            active: 0,
            network_dead: true,
        },
        RunEnd::Stationary | RunEnd::Horizon => last.clone(),
    })
}

/// Per-step across-seed means of one panel quantity, one column per algorithm.
fn plot_csv(
    timelines: &[MetricsTimeline],
    algorithms: &[Priority],
    value: fn(&StepRecord) -> f64,
) -> String {
    let steps = timelines.iter().map(|t| t.records.len()).max().unwrap_or(0);
    let mut out = String::from("step");
    for a in algorithms {
        out.push(',');
        out.push_str(a.as_str());
    }
    out.push('\n');
    let groups: Vec<Vec<&MetricsTimeline>> = algorithms
        .iter()
        .map(|a| timelines.iter().filter(|t| t.priority == *a).collect())
        .collect();
    let pads: Vec<Vec<Option<StepRecord>>> = groups
        .iter()
        .map(|g| g.iter().map(|t| padding(t)).collect())
        .collect();
    for j in 0..steps {
        out.push_str(&(j + 1).to_string());
        for (group, pad) in groups.iter().zip(&pads) {
            let vals: Vec<f64> = group
                .iter()
                .zip(pad)
                .filter_map(|(t, p)| t.records.get(j).or(p.as_ref()).map(value))
                .collect();
            let mean = if vals.is_empty() {
                0.0
            } else {
                vals.iter().sum::<f64>() / vals.len() as f64
            };
            out.push(',');
            out.push_str(&fmt_float(mean));
        }
        out.push('\n');
    }
    out
}

type Metric = fn(&StepRecord) -> f64;

pub const PLOT_PANELS: [(&str, Metric); 4] = [
    ("plot_coverage.csv", |r| r.coverage_pct),
    ("plot_live.csv", |r| r.live as f64),
    ("plot_selected.csv", |r| r.selected as f64),
    ("plot_overlap.csv", |r| r.overlap_pct),
];

/// Writes timelines, per-run rows, summaries and plot data under `dir`.
pub fn write_artifacts(
    spec: &ExperimentSpec,
    timelines: &[MetricsTimeline],
    dir: &Path,
) -> Result<(Vec<RunRow>, Vec<SummaryRow>, Vec<PathBuf>)> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut files = Vec::new();
    let runs: Vec<RunRow> = timelines.iter().map(RunRow::from_timeline).collect();
    let summary: Vec<SummaryRow> = spec
        .algorithms
        .iter()
        .map(|&a| {
            let rows: Vec<&RunRow> = runs.iter().filter(|r| r.algorithm == a).collect();
            SummaryRow::mean_of(a, &rows)
        })
        .collect();

    if spec.formats.csv {
        for t in timelines {
            write(dir.join(timeline_file_name(t.priority, t.seed)), &timeline_csv(t), &mut files)?;
        }
        write(dir.join("runs.csv"), &runs_csv(&runs), &mut files)?;
        write(dir.join("summary.csv"), &summary_csv(&summary), &mut files)?;
        for (name, value) in PLOT_PANELS {
            write(dir.join(name), &plot_csv(timelines, &spec.algorithms, value), &mut files)?;
        }
    }
    if spec.formats.json {
        write(dir.join("summary.json"), &summary_json(&summary, &runs, &spec.config), &mut files)?;
    }
    Ok((runs, summary, files))
}

/// Runs the experiment and writes every artifact to `spec.out_dir`.
pub fn run_experiment(spec: &ExperimentSpec, threads: usize) -> Result<ExperimentReport> {
    let timelines = run_all(spec, threads)?;
    let (runs, summary, files) = write_artifacts(spec, &timelines, &spec.out_dir)?;
    Ok(ExperimentReport {
        timelines,
        runs,
        summary,
        files,
    })
}
