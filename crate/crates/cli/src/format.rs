//! Output encodings: fixed-header CSV timelines, summary CSV and JSON.

use std::fmt::Write as _;

use camcover_core::{MetricsTimeline, Priority};
use serde::Serialize;

pub const TIMELINE_HEADER: &str =
    "step,live,selected,coverage_cells,overlap_cells,coverage_pct,overlap_pct,delivery_failures";

pub const RUNS_HEADER: &str = "algorithm,seed,baseline,steps,a_ic,a_fc,a_ac,time_coverage,time_coverage_cells,lifetime,overlap_pct,mean_selected,mean_live";

pub const SUMMARY_HEADER: &str =
    "algorithm,seeds,time_coverage,time_coverage_cells,lifetime,overlap_pct,mean_selected,mean_live";

/// Formats `x` with six significant digits, `%g` style.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.5e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa.to_string()), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Rounds to the six significant digits used in every output file.
pub fn round6(x: f64) -> f64 {
    fmt_float(x).parse().unwrap_or(x)
}

pub fn timeline_csv(t: &MetricsTimeline) -> String {
    let mut out = String::with_capacity(48 * (t.records.len() + 1));
    out.push_str(TIMELINE_HEADER);
    out.push('\n');
    for r in &t.records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.step,
            r.live,
            r.selected,
            r.coverage_cells,
            r.overlap_cells,
            fmt_float(r.coverage_pct),
            fmt_float(r.overlap_pct),
            r.delivery_failures
        );
    }
    out
}

/// Per-run row of the comparison table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRow {
    pub algorithm: Priority,
    pub seed: u64,
    pub baseline: usize,
    pub steps: usize,
    pub a_ic: u64,
    pub a_fc: u64,
    pub a_ac: u64,
    pub time_coverage: f64,
    pub time_coverage_cells: f64,
    pub lifetime: f64,
    pub overlap_pct: f64,
    pub mean_selected: f64,
    pub mean_live: f64,
}

impl RunRow {
    pub fn from_timeline(t: &MetricsTimeline) -> Self {
        let s = &t.summary;
        RunRow {
            algorithm: t.priority,
            seed: t.seed,
            baseline: t.baseline,
            steps: t.records.len(),
            a_ic: t.milestones.a_ic,
            a_fc: t.milestones.a_fc,
            a_ac: t.milestones.a_ac,
            time_coverage: s.time_coverage,
            time_coverage_cells: s.time_coverage_cells,
            lifetime: s.half_coverage_lifetime as f64,
            overlap_pct: s.mean_overlap_pct,
            mean_selected: s.mean_selected,
            mean_live: s.mean_live,
        }
    }

    fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.algorithm,
            self.seed,
            self.baseline,
            self.steps,
            self.a_ic,
            self.a_fc,
            self.a_ac,
            fmt_float(self.time_coverage),
            fmt_float(self.time_coverage_cells),
            fmt_float(self.lifetime),
            fmt_float(self.overlap_pct),
            fmt_float(self.mean_selected),
            fmt_float(self.mean_live)
        )
    }
}

/// Across-seed means for one algorithm.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub algorithm: Priority,
    pub seeds: usize,
    pub time_coverage: f64,
    pub time_coverage_cells: f64,
    pub lifetime: f64,
    pub overlap_pct: f64,
    pub mean_selected: f64,
    pub mean_live: f64,
}

impl SummaryRow {
    pub fn mean_of(algorithm: Priority, rows: &[&RunRow]) -> Self {
        let n = rows.len().max(1) as f64;
        let mean = |f: fn(&RunRow) -> f64| rows.iter().map(|r| f(r)).sum::<f64>() / n;
        SummaryRow {
            algorithm,
            seeds: rows.len(),
            time_coverage: mean(|r| r.time_coverage),
            time_coverage_cells: mean(|r| r.time_coverage_cells),
            lifetime: mean(|r| r.lifetime),
            overlap_pct: mean(|r| r.overlap_pct),
            mean_selected: mean(|r| r.mean_selected),
            mean_live: mean(|r| r.mean_live),
        }
    }

    fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.algorithm,
            self.seeds,
            fmt_float(self.time_coverage),
            fmt_float(self.time_coverage_cells),
            fmt_float(self.lifetime),
            fmt_float(self.overlap_pct),
            fmt_float(self.mean_selected),
            fmt_float(self.mean_live)
        )
    }

    pub fn rounded(&self) -> Self {
        SummaryRow {
            time_coverage: round6(self.time_coverage),
            time_coverage_cells: round6(self.time_coverage_cells),
            lifetime: round6(self.lifetime),
            overlap_pct: round6(self.overlap_pct),
            mean_selected: round6(self.mean_selected),
            mean_live: round6(self.mean_live),
            ..self.clone()
        }
    }
}

impl RunRow {
    pub fn rounded(&self) -> Self {
        RunRow {
            time_coverage: round6(self.time_coverage),
            time_coverage_cells: round6(self.time_coverage_cells),
            lifetime: round6(self.lifetime),
            overlap_pct: round6(self.overlap_pct),
            mean_selected: round6(self.mean_selected),
            mean_live: round6(self.mean_live),
            ..self.clone()
        }
    }
}

pub fn runs_csv(rows: &[RunRow]) -> String {
    let mut out = String::from(RUNS_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv());
        out.push('\n');
    }
    out
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv());
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct SummaryDoc<'a> {
    summary: Vec<SummaryRow>,
    runs: Vec<RunRow>,
    config: &'a camcover_core::SimConfig,
}

pub fn summary_json(summary: &[SummaryRow], runs: &[RunRow], config: &camcover_core::SimConfig) -> String {
    let doc = SummaryDoc {
        summary: summary.iter().map(SummaryRow::rounded).collect(),
        runs: runs.iter().map(RunRow::rounded).collect(),
        config,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("summary serializes");
    s.push('\n');
    s
}
