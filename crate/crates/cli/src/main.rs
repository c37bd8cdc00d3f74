//! Command-line driver: validates angle sequences, runs verification
//! suites, tabulates weak-type estimates, and renders figures.
//!
//! Exit code 0 means every requested check passed, 1 means the run
//! completed but some check failed, and 2 means the run itself could
//! not be carried out.

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use dirmax_core::checks::workbench;
use dirmax_core::figures::{disk_overlap_svg, rectangle_halves_svg};
use dirmax_core::lacunary::LacunarySequence;
use dirmax_core::report::{
    resolve_suites, run_blowup, run_campaign, write_outputs, CampaignConfig, VerificationReport,
};
use std::path::PathBuf;
use std::process::ExitCode;

/// Environment variable consulted for the output directory when the
/// `--out` flag is absent.
const OUT_ENV: &str = "DIRMAX_OUT";

#[derive(Parser)]
#[command(
    name = "dirmax",
    version,
    about = "Verification campaigns for rotated rectangle constructions"
)]
struct Cli {
    #[command(flatten)]
    overrides: Overrides,

    /// Flat `key = value` configuration file; flags override its entries.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Output directory (default: $DIRMAX_OUT, then ./out).
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Overrides {
    /// First rotation angle, in radians.
    #[arg(long, global = true)]
    theta0: Option<f64>,

    /// Geometric ratio between consecutive angles.
    #[arg(long, global = true)]
    sigma: Option<f64>,

    /// Lower envelope bound on consecutive slope ratios.
    #[arg(long, global = true)]
    lambda: Option<f64>,

    /// Upper envelope bound on consecutive slope ratios.
    #[arg(long, global = true)]
    mu: Option<f64>,

    /// Deepest construction level.
    #[arg(long = "k-max", global = true)]
    k_max: Option<usize>,

    /// Number of angles validated up front.
    #[arg(long, global = true)]
    prefix: Option<usize>,

    /// Seed for every randomized cross-check.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Monte Carlo samples per union cross-check.
    #[arg(long, global = true)]
    samples: Option<u64>,

    /// Pixels per side in axis-parallel sweeps.
    #[arg(long, global = true)]
    resolution: Option<usize>,

    /// Divergence gauge, e.g. `power:1` or `loglike:0.5`.
    #[arg(long, global = true, value_name = "KIND:PARAM")]
    phi: Option<String>,

    /// Scale applied inside the divergence gauge.
    #[arg(long = "C", global = true, value_name = "SCALE")]
    scale: Option<f64>,

    /// Use the growth-free family where a command supports it.
    #[arg(long, global = true)]
    remark: bool,
}

impl Overrides {
    fn apply(&self, config: &mut CampaignConfig) {
        if let Some(v) = self.theta0 {
            config.theta0 = v;
        }
        if let Some(v) = self.sigma {
            config.sigma = v;
        }
        if let Some(v) = self.lambda {
            config.ratio_lo = v;
        }
        if let Some(v) = self.mu {
            config.ratio_hi = v;
        }
        if let Some(v) = self.k_max {
            config.k_max = v;
        }
        if let Some(v) = self.prefix {
            config.prefix = v;
        }
        if let Some(v) = self.seed {
            config.seed = v;
        }
        if let Some(v) = self.samples {
            config.samples = v;
        }
        if let Some(v) = self.resolution {
            config.resolution = v;
        }
        if let Some(v) = &self.phi {
            config.gauge = Some(v.clone());
        }
        if let Some(v) = self.scale {
            config.gauge_scale = Some(v);
        }
        if self.remark {
            config.remark = true;
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate the angle sequence and print the slope window as JSON.
    ValidateSequence,

    /// Run verification suites and write report.json plus CSV tables.
    ///
    /// Suites: lemma1, lemma2, prop2, claim-mphi, divergence, remark,
    /// weak11, or all. With `--phi`, the divergence suite asserts
    /// divergence for the configured gauge instead of the default trio.
    Verify {
        /// Suite token, or `all`.
        suite: String,
    },

    /// Tabulate certified rotated weak-type quotients against
    /// axis-parallel pixel estimates, one row per level.
    BlowupTable,

    /// Write the construction figures as SVG.
    Figures,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let mut config = CampaignConfig::default();
    if let Some(path) = &cli.config {
        config
            .apply_file(path)
            .with_context(|| format!("reading config file {}", path.display()))?;
    }
    cli.overrides.apply(&mut config);
    let out_dir = cli
        .out
        .clone()
        .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"));

    match &cli.command {
        Command::ValidateSequence => validate_sequence(&config),
        Command::Verify { suite } => {
            let kinds = resolve_suites(suite)?;
            let report = run_campaign(&config, &format!("verify {suite}"), &kinds)?;
            finish(&report, &out_dir)
        }
        Command::BlowupTable => {
            let report = run_blowup(&config, "blowup-table")?;
            finish(&report, &out_dir)
        }
        Command::Figures => figures(&config, &out_dir),
    }
}

fn validate_sequence(config: &CampaignConfig) -> anyhow::Result<bool> {
    let sequence = LacunarySequence::geometric(
        config.theta0,
        config.sigma,
        (config.ratio_lo, config.ratio_hi),
    )?;
    match sequence.validate(config.prefix) {
        Ok(window) => {
            println!("{}", serde_json::to_string_pretty(&window)?);
            Ok(true)
        }
        Err(err) => {
            eprintln!("sequence rejected: {err}");
            Ok(false)
        }
    }
}

fn finish(report: &VerificationReport, out_dir: &PathBuf) -> anyhow::Result<bool> {
    let written = write_outputs(report, out_dir)
        .with_context(|| format!("writing outputs to {}", out_dir.display()))?;
    for suite in &report.suites {
        let failed = suite.checks.iter().filter(|c| !c.pass).count();
        if failed == 0 {
            println!("suite {}: pass ({} checks)", suite.suite, suite.checks.len());
        } else {
            println!(
                "suite {}: FAIL ({failed} of {} checks)",
                suite.suite,
                suite.checks.len()
            );
            for check in suite.checks.iter().filter(|c| !c.pass) {
                println!(
                    "  {}: computed {:e}, bound {:e}",
                    check.name, check.computed, check.bound
                );
            }
        }
    }
    for path in &written {
        println!("wrote {}", path.display());
    }
    Ok(report.pass)
}

fn figures(config: &CampaignConfig, out_dir: &PathBuf) -> anyhow::Result<bool> {
    let bench = workbench(config)?;
    let level = bench
        .family
        .levels
        .get(1)
        .unwrap_or_else(|| &bench.family.levels[0]);
    std::fs::create_dir_all(out_dir)?;
    let fig1 = out_dir.join("fig1.svg");
    std::fs::write(&fig1, rectangle_halves_svg(level))?;
    println!("wrote {}", fig1.display());
    let fig2 = out_dir.join("fig2.svg");
    std::fs::write(&fig2, disk_overlap_svg(level))?;
    println!("wrote {}", fig2.display());
    Ok(true)
}
