//! Campaign configuration, the suite driver, and report output.
//!
//! A campaign is a configuration plus a list of suites. The driver runs
//! them in a fixed order and collects a single report that serializes to
//! JSON with no timestamps or machine identifiers, so two runs with the
//! same configuration produce byte-identical output.

use crate::checks::{
    blowup_table, suite_divergence, suite_growth_free, suite_half_disjoint, suite_levelset_mass,
    suite_union_growth, suite_weak11, suite_witness, SuiteReport,
};
use crate::error::{Error, Result};
use serde::Serialize;
use serde_json::Value;
use std::fs;
use std::path::{Path, PathBuf};

/// Campaign parameters. Field names follow the command-line flags; the
/// two envelope bounds are serialized under their flag names.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignConfig {
    pub theta0: f64,
    pub sigma: f64,
    #[serde(rename = "lambda")]
    pub ratio_lo: f64,
    #[serde(rename = "mu")]
    pub ratio_hi: f64,
    pub k_max: usize,
    /// Angles validated up front; must cover `k_max`.
    pub prefix: usize,
    pub seed: u64,
    /// Monte Carlo sample count for union cross-checks.
    pub samples: u64,
    /// Pixel count per side for axis-parallel sweeps.
    pub resolution: usize,
    /// Divergence gauge override, e.g. `power:1` or `loglike:0.5`.
    #[serde(rename = "phi")]
    pub gauge: Option<String>,
    /// Scale applied inside the divergence gauge.
    #[serde(rename = "scale")]
    pub gauge_scale: Option<f64>,
    /// Switch family-dependent commands to the growth-free family.
    pub remark: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            theta0: 0.5,
            sigma: 0.6,
            ratio_lo: 0.5,
            ratio_hi: 0.8,
            k_max: 10,
            prefix: 30,
            seed: 1729,
            samples: 1_000_000,
            resolution: 2048,
            gauge: None,
            gauge_scale: None,
            remark: false,
        }
    }
}

impl CampaignConfig {
    /// Applies one `key = value` assignment.
    pub fn set(&mut self, key: &str, raw: &str) -> Result<()> {
        fn parse<T: std::str::FromStr>(key: &str, raw: &str) -> Result<T> {
            raw.parse()
                .map_err(|_| Error::Config(format!("bad value {raw:?} for key {key:?}")))
        }
        match key {
            "theta0" => self.theta0 = parse(key, raw)?,
            "sigma" => self.sigma = parse(key, raw)?,
            "lambda" => self.ratio_lo = parse(key, raw)?,
            "mu" => self.ratio_hi = parse(key, raw)?,
            "k_max" => self.k_max = parse(key, raw)?,
            "prefix" => self.prefix = parse(key, raw)?,
            "seed" => self.seed = parse(key, raw)?,
            "samples" => self.samples = parse(key, raw)?,
            "resolution" => self.resolution = parse(key, raw)?,
            "phi" => self.gauge = Some(raw.to_string()),
            "c" | "scale" => self.gauge_scale = Some(parse(key, raw)?),
            "remark" => {
                self.remark = match raw {
                    "true" | "1" => true,
                    "false" | "0" => false,
                    other => {
                        return Err(Error::Config(format!(
                            "bad value {other:?} for key \"remark\""
                        )))
                    }
                }
            }
            other => return Err(Error::Config(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    /// Reads a flat `key = value` file with `#` comments.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path)?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!(
                    "{}:{}: expected key = value, got {line:?}",
                    path.display(),
                    lineno + 1
                )));
            };
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }
}

/// The verification suites, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    HalfDisjoint,
    UnionGrowth,
    Witness,
    LevelsetMass,
    Divergence,
    GrowthFree,
    Weak11,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 7] = [
        SuiteKind::HalfDisjoint,
        SuiteKind::UnionGrowth,
        SuiteKind::Witness,
        SuiteKind::LevelsetMass,
        SuiteKind::Divergence,
        SuiteKind::GrowthFree,
        SuiteKind::Weak11,
    ];

    /// The command-line token naming this suite.
    pub fn token(self) -> &'static str {
        match self {
            SuiteKind::HalfDisjoint => "lemma1",
            SuiteKind::UnionGrowth => "lemma2",
            SuiteKind::Witness => "prop2",
            SuiteKind::LevelsetMass => "claim-mphi",
            SuiteKind::Divergence => "divergence",
            SuiteKind::GrowthFree => "remark",
            SuiteKind::Weak11 => "weak11",
        }
    }

    pub fn run(self, config: &CampaignConfig) -> Result<SuiteReport> {
        match self {
            SuiteKind::HalfDisjoint => suite_half_disjoint(config),
            SuiteKind::UnionGrowth => suite_union_growth(config),
            SuiteKind::Witness => suite_witness(config),
            SuiteKind::LevelsetMass => suite_levelset_mass(config),
            SuiteKind::Divergence => suite_divergence(config),
            SuiteKind::GrowthFree => suite_growth_free(config),
            SuiteKind::Weak11 => suite_weak11(config),
        }
    }
}

/// Maps a command-line token to the suites it selects.
pub fn resolve_suites(token: &str) -> Result<Vec<SuiteKind>> {
    if token == "all" {
        return Ok(SuiteKind::ALL.to_vec());
    }
    SuiteKind::ALL
        .iter()
        .copied()
        .find(|kind| kind.token() == token)
        .map(|kind| vec![kind])
        .ok_or_else(|| Error::Config(format!("unknown suite {token:?}")))
}

/// Everything one run produces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub version: String,
    pub command: String,
    pub config: CampaignConfig,
    pub suites: Vec<SuiteReport>,
    pub pass: bool,
}

/// Runs the selected suites in order and assembles the report.
pub fn run_campaign(
    config: &CampaignConfig,
    command: &str,
    kinds: &[SuiteKind],
) -> Result<VerificationReport> {
    let mut suites = Vec::with_capacity(kinds.len());
    for kind in kinds {
        suites.push(kind.run(config)?);
    }
    let pass = suites.iter().all(|s| s.pass);
    Ok(VerificationReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: command.to_string(),
        config: config.clone(),
        suites,
        pass,
    })
}

/// Runs the blow-up tabulation as a single-suite report.
pub fn run_blowup(config: &CampaignConfig, command: &str) -> Result<VerificationReport> {
    let suite = blowup_table(config)?;
    let pass = suite.pass;
    Ok(VerificationReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: command.to_string(),
        config: config.clone(),
        suites: vec![suite],
        pass,
    })
}

pub fn render_json(report: &VerificationReport) -> Result<String> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    Ok(text)
}

/// One table as CSV with full-precision doubles.
pub fn render_csv(table: &crate::checks::Table) -> String {
    let mut out = String::new();
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Writes `report.json` plus one `table_<name>.csv` per table and
/// returns the paths written.
pub fn write_outputs(report: &VerificationReport, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();

    let json_path = dir.join("report.json");
    fs::write(&json_path, render_json(report)?)?;
    written.push(json_path);

    for suite in &report.suites {
        for table in &suite.tables {
            let path = dir.join(format!("table_{}.csv", table.name));
            fs::write(&path, render_csv(table))?;
            written.push(path);
        }
    }
    Ok(written)
}

/// The JSON schema the report serializes against.
pub const REPORT_SCHEMA: &str = include_str!("../schemas/report.schema.json");

/// Checks a report value against the bundled schema. Supports the
/// subset of JSON Schema the bundled file uses: type unions, required
/// properties, closed objects, and item schemas.
pub fn validate_report_json(instance: &Value) -> std::result::Result<(), String> {
    let schema: Value = serde_json::from_str(REPORT_SCHEMA).expect("bundled schema parses");
    let mut errors = Vec::new();
    validate_value(&schema, instance, "$", &mut errors);
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors.join("; "))
    }
}

fn type_matches(name: &str, inst: &Value) -> bool {
    match name {
        "object" => inst.is_object(),
        "array" => inst.is_array(),
        "string" => inst.is_string(),
        "boolean" => inst.is_boolean(),
        "null" => inst.is_null(),
        "number" => inst.is_number(),
        "integer" => inst.as_i64().is_some() || inst.as_u64().is_some(),
        _ => false,
    }
}

fn validate_value(schema: &Value, inst: &Value, path: &str, errors: &mut Vec<String>) {
    if let Some(types) = schema.get("type") {
        let ok = match types {
            Value::String(name) => type_matches(name, inst),
            Value::Array(names) => names
                .iter()
                .filter_map(Value::as_str)
                .any(|name| type_matches(name, inst)),
            _ => true,
        };
        if !ok {
            errors.push(format!("{path}: expected type {types}"));
            return;
        }
    }

    if let Some(obj) = inst.as_object() {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !obj.contains_key(key) {
                    errors.push(format!("{path}: missing required property {key:?}"));
                }
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        let closed = schema.get("additionalProperties") == Some(&Value::Bool(false));
        for (key, value) in obj {
            match props.and_then(|p| p.get(key)) {
                Some(sub) => validate_value(sub, value, &format!("{path}.{key}"), errors),
                None if closed => {
                    errors.push(format!("{path}: unexpected property {key:?}"));
                }
                None => {}
            }
        }
    }

    if let Some(items) = inst.as_array() {
        if let Some(sub) = schema.get("items") {
            for (i, item) in items.iter().enumerate() {
                validate_value(sub, item, &format!("{path}[{i}]"), errors);
            }
        }
    }
}
