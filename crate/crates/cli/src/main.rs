use std::path::PathBuf;
use std::process::ExitCode;

use camcover_cli::config::parse_seeds;
use camcover_cli::format::{summary_csv, RunRow, SummaryRow};
use camcover_cli::{parse_config, parse_override, run_experiment, CliError, ExperimentSpec};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "camcover", version, about = "Directional camera sensor network coverage and lifetime simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one simulation.
    Simulate(CommonArgs),
    /// Run every algorithm over every seed and write the comparison table.
    Compare(CommonArgs),
    /// Check a configuration without running it.
    Validate(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Configuration file (flat key = value).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Single seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Seed range `N..M` (inclusive) or comma list.
    #[arg(long)]
    seeds: Option<String>,
    /// Priority rule; repeat for several.
    #[arg(long = "algo", value_parser = ["ma", "mlmo"])]
    algo: Vec<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override any configuration key, e.g. `--set gamma=0.4`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Worker threads for compare (1 = serial, 0 = all cores).
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

impl CommonArgs {
    fn spec(&self) -> Result<ExperimentSpec, CliError> {
        let mut overrides = Vec::new();
        if let Some(seed) = self.seed {
            overrides.push(("seed".to_string(), seed.to_string()));
            overrides.push(("seeds".to_string(), seed.to_string()));
        }
        if let Some(seeds) = &self.seeds {
            parse_seeds(seeds)?;
            overrides.push(("seeds".to_string(), seeds.clone()));
        }
        if !self.algo.is_empty() {
            overrides.push(("algorithms".to_string(), self.algo.join(",")));
        }
        if let Some(out) = &self.out {
            overrides.push(("out".to_string(), out.display().to_string()));
        }
        for s in &self.set {
            overrides.push(parse_override(s)?);
        }
        parse_config(self.config.as_deref(), &overrides)
    }
}

fn simulate(args: &CommonArgs) -> Result<(), CliError> {
    let mut spec = args.spec()?;
    spec.algorithms.truncate(1);
    spec.seeds.truncate(1);
    let report = run_experiment(&spec, 1)?;
    let row = RunRow::from_timeline(&report.timelines[0]).rounded();
    println!("{}", serde_json::to_string_pretty(&row).map_err(|e| CliError::Internal(e.to_string()))?);
    Ok(())
}

fn compare(args: &CommonArgs) -> Result<(), CliError> {
    let spec = args.spec()?;
    let report = run_experiment(&spec, args.threads)?;
    let rows: Vec<SummaryRow> = report.summary.clone();
    print!("{}", summary_csv(&rows));
    eprintln!("wrote {} files to {}", report.files.len(), spec.out_dir.display());
    Ok(())
}

fn validate(args: &CommonArgs) -> Result<(), CliError> {
    let spec = args.spec()?;
    println!(
        "ok: {} algorithm(s), {} seed(s), {} sensors, {}x{} cells",
        spec.algorithms.len(),
        spec.seeds.len(),
        spec.config.n_sensors,
        spec.config.region()?.n_cols(),
        spec.config.region()?.n_rows()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Compare(a) => compare(a),
        Command::Validate(a) => validate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
