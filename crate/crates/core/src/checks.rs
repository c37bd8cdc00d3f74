//! Verification suites: each one bundles a batch of named numeric checks
//! with the tables backing them, so a report can be replayed and audited
//! check by check.
//!
//! Suite identifiers (`lemma1`, `lemma2`, `prop2`, `claim-mphi`,
//! `divergence`, `remark`, `weak11`) are part of the command-line
//! grammar; the functions behind them are named by what they verify.

use crate::construction::{
    build_growth_free_family, build_nested_family, verify_union_growth, witness,
    EnvelopeConstants, LevelConstruction, NestedFamily, QUARTER_DISK_TOL,
};
use crate::error::Result;
use crate::geometry::{
    disjointness_threshold, intersection_area, place_half_rect, Placement, StandardRect,
    REL_TOL,
};
use crate::lacunary::{LacunarySequence, SlopeWindow};
use crate::maximal::{
    divergence_check, orlicz_integral, weak_type_ratio, weak_type_sweep, witness_level_set,
    Certificate, DiskIndicator, MaximalConfig, OrliczFunction, PixelRegion, Rotations,
    TranslationSearch,
};
use crate::report::CampaignConfig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;

/// Random predicate-true pairs checked by the disjointness suite.
pub const DISJOINT_SAMPLES: usize = 1000;

/// Permitted overlap of certified-disjoint halves, relative to one half.
pub const OVERLAP_REL_TOL: f64 = 1e-12;

/// Relative tolerance on the aspect sandwich.
pub const SANDWICH_REL_TOL: f64 = 1e-12;

/// Point budget for witness certifications.
pub const WITNESS_SAMPLES: usize = 1000;

/// Acceptance budget for the empirical axis-parallel weak (1,1) constant.
pub const WEAK11_BUDGET: f64 = 10.0;

/// Highest level included in pixel sweeps.
pub const WEAK11_MAX_LEVEL: usize = 8;

/// Levels of the growth-free family under test.
pub const GROWTH_FREE_LEVELS: usize = 5;

/// Thresholds swept per test function: value times 2^-6 .. 2^6.
pub const THRESHOLD_OCTAVES: i32 = 6;

/// One named numeric check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub computed: f64,
    pub bound: f64,
    pub slack: f64,
    pub pass: bool,
}

impl CheckRecord {
    pub fn at_least(name: impl Into<String>, computed: f64, bound: f64) -> Self {
        CheckRecord {
            name: name.into(),
            computed,
            bound,
            slack: computed - bound,
            pass: computed >= bound,
        }
    }

    pub fn at_most(name: impl Into<String>, computed: f64, bound: f64) -> Self {
        CheckRecord {
            name: name.into(),
            computed,
            bound,
            slack: bound - computed,
            pass: computed <= bound,
        }
    }

    pub fn exceeds(name: impl Into<String>, computed: f64, bound: f64) -> Self {
        CheckRecord {
            name: name.into(),
            computed,
            bound,
            slack: computed - bound,
            pass: computed > bound,
        }
    }

    pub fn asserts(name: impl Into<String>, condition: bool) -> Self {
        CheckRecord {
            name: name.into(),
            computed: condition as u8 as f64,
            bound: 1.0,
            slack: 0.0,
            pass: condition,
        }
    }
}

/// Numeric table attached to a suite, exported as CSV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&str]) -> Self {
        Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }
}

/// Outcome of one verification suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<CheckRecord>,
    pub tables: Vec<Table>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn assemble(
        suite: &str,
        checks: Vec<CheckRecord>,
        tables: Vec<Table>,
        notes: Vec<String>,
    ) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        SuiteReport {
            suite: suite.to_string(),
            pass,
            checks,
            tables,
            notes,
        }
    }
}

/// Validated sequence, constants, and levels shared by the suites.
pub struct Workbench {
    pub window: SlopeWindow,
    pub consts: EnvelopeConstants,
    pub family: NestedFamily,
}

pub fn workbench(config: &CampaignConfig) -> Result<Workbench> {
    let sequence = LacunarySequence::geometric(
        config.theta0,
        config.sigma,
        (config.ratio_lo, config.ratio_hi),
    )?;
    let window = sequence.validate(config.prefix)?;
    let consts = EnvelopeConstants::from_window(&window)?;
    let family = build_nested_family(config.k_max, &window, &consts)?;
    Ok(Workbench {
        window,
        consts,
        family,
    })
}

/// Certificates and rectangle list for evaluating the rotated maximal
/// operator of one level in its normalized frame.
fn level_candidates(level: &LevelConstruction) -> (Vec<StandardRect>, Vec<Certificate>) {
    let rects = vec![level.normalized_rect()];
    let certs = level
        .angles
        .iter()
        .map(|&angle| Certificate {
            rect: 0,
            placement: Placement::rotation(angle),
        })
        .collect();
    (rects, certs)
}

/// Half-rectangle disjointness: random admissible aspect/angle triples
/// satisfying the gap criterion must have measured overlap below the
/// tolerance, including triples pinned at the tangent gap.
pub fn suite_half_disjoint(config: &CampaignConfig) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut checks = Vec::new();
    let mut worst_rel = 0.0_f64;
    let mut worst_desc = String::from("none");

    let measure = |aspect: f64, low: f64, gap: f64| -> Result<f64> {
        let rect = StandardRect::new(1.0, 1.0 / aspect)?;
        let high = low + gap;
        let disjoint = crate::geometry::rotated_halves_disjoint(&rect, low, high)?;
        debug_assert!(disjoint, "sampler produced a predicate-false triple");
        let a = place_half_rect(&rect, &Placement::rotation(low));
        let b = place_half_rect(&rect, &Placement::rotation(high));
        Ok(intersection_area(&a, &b) / (0.5 * rect.area()))
    };

    for _ in 0..DISJOINT_SAMPLES {
        let aspect = rng.random_range(2.05..40.0);
        let rect = StandardRect::new(1.0, 1.0 / aspect)?;
        let min_gap = disjointness_threshold(&rect)?.atan();
        let low = rng.random_range(0.0..(FRAC_PI_2 - min_gap) * 0.98);
        let gap = rng.random_range(min_gap..(FRAC_PI_2 - low) * 0.999999);
        let rel = measure(aspect, low, gap)?;
        if rel > worst_rel {
            worst_rel = rel;
            worst_desc = format!("aspect {aspect:.6}, angles {low:.6} and {:.6}", low + gap);
        }
    }

    // Tangent gaps: the criterion holds with equality.
    for &aspect in &[4.0, 10.0, 14.779846384782312] {
        let rect = StandardRect::new(1.0, 1.0 / aspect)?;
        let min_gap = disjointness_threshold(&rect)?.atan();
        for &low in &[0.0, 0.1, 0.5] {
            let rel = measure(aspect, low, min_gap)?;
            worst_rel = worst_rel.max(rel);
        }
    }

    checks.push(CheckRecord::at_least(
        "predicate-true triples sampled",
        DISJOINT_SAMPLES as f64,
        DISJOINT_SAMPLES as f64,
    ));
    checks.push(CheckRecord::at_most(
        "worst half overlap relative to one half",
        worst_rel,
        OVERLAP_REL_TOL,
    ));
    Ok(SuiteReport::assemble(
        "lemma1",
        checks,
        Vec::new(),
        vec![format!("worst overlap came from {worst_desc}")],
    ))
}

/// Level construction: exact size chain, aspect sandwich, and union
/// growth of the rotated copies, cross-checked by seeded Monte Carlo.
pub fn suite_union_growth(config: &CampaignConfig) -> Result<SuiteReport> {
    let bench = workbench(config)?;
    let mut checks = Vec::new();
    let mut table = Table::new(
        "union_growth",
        &[
            "k",
            "aspect",
            "log_length",
            "log_height",
            "union",
            "required",
            "slack",
            "monte_carlo",
            "monte_carlo_sigma",
        ],
    );

    for (idx, level) in bench.family.levels.iter().enumerate() {
        let k = level.level;
        let growth = verify_union_growth(level, Some((config.samples, config.seed + k as u64)))?;
        let mc = growth.monte_carlo.as_ref().expect("monte carlo requested");

        checks.push(CheckRecord::at_most(
            format!("k={k}: twice the height at most the length"),
            2.0 * level.rect.height(),
            level.rect.length(),
        ));
        checks.push(CheckRecord::at_most(
            format!("k={k}: length within the size cap"),
            level.rect.length(),
            level.size_cap,
        ));
        if idx > 0 {
            let prev = &bench.family.levels[idx - 1];
            checks.push(CheckRecord::at_most(
                format!("k={k}: length at most the previous height"),
                level.rect.length(),
                prev.rect.height(),
            ));
            checks.push(CheckRecord::at_most(
                format!("k={k}: length at most 1/{}", prev.level),
                level.rect.length(),
                1.0 / prev.level as f64,
            ));
        }

        let lo_pow = bench.consts.ratio_lo.powi(-(k as i32));
        checks.push(CheckRecord::at_least(
            format!("k={k}: aspect above the lower sandwich"),
            level.aspect(),
            bench.consts.aspect_lo * lo_pow * (1.0 - SANDWICH_REL_TOL),
        ));
        checks.push(CheckRecord::at_most(
            format!("k={k}: aspect below the upper sandwich"),
            level.aspect(),
            bench.consts.aspect_hi * lo_pow * (1.0 + SANDWICH_REL_TOL),
        ));

        checks.push(CheckRecord::asserts(
            format!("k={k}: pairwise gap criterion holds"),
            growth.predicate_disjoint,
        ));
        checks.push(CheckRecord::at_most(
            format!("k={k}: measured half overlap"),
            growth.max_half_overlap_rel,
            OVERLAP_REL_TOL,
        ));
        checks.push(CheckRecord::exceeds(
            format!("k={k}: union above half the rectangle per angle"),
            growth.union,
            growth.required,
        ));
        checks.push(CheckRecord::at_most(
            format!("k={k}: Monte Carlo union within three sigma"),
            (growth.union - mc.value).abs(),
            3.0 * mc.std_error.expect("monte carlo carries a sigma"),
        ));

        table.rows.push(vec![
            k as f64,
            level.aspect(),
            level.log_length,
            level.log_height,
            growth.union,
            growth.required,
            growth.slack,
            mc.value,
            mc.std_error.unwrap_or(0.0),
        ]);
    }

    Ok(SuiteReport::assemble(
        "lemma2",
        checks,
        vec![table],
        vec!["areas are reported in the frame with the level length scaled to 1".into()],
    ))
}

/// Witness geometry: union against the disk-area bound, the quarter-disk
/// overlap identity, and pointwise certification of the maximal bound on
/// the union of rotated copies.
pub fn suite_witness(config: &CampaignConfig) -> Result<SuiteReport> {
    let bench = workbench(config)?;
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let mut table = Table::new(
        "witness",
        &[
            "k",
            "aspect",
            "union_over_disk",
            "bound_over_disk",
            "quarter_disk_rel_err",
            "threshold",
            "certified_points",
        ],
    );

    for level in &bench.family.levels {
        let k = level.level;
        let view = witness(level, &bench.consts)?;
        checks.push(CheckRecord::exceeds(
            format!("k={k}: union over disk above the growth bound"),
            view.union_over_disk,
            view.bound_over_disk,
        ));
        checks.push(CheckRecord::at_most(
            format!("k={k}: quarter-disk overlap deviation"),
            view.quarter_disk_rel_err,
            QUARTER_DISK_TOL,
        ));

        let f = DiskIndicator::new(1.0, level.normalized_disk())?;
        let threshold =
            bench.consts.maximal_coeff * bench.consts.ratio_lo.powi(k as i32);
        let (rects, certs) = level_candidates(level);
        let cfg = MaximalConfig {
            rects: &rects,
            rotations: Rotations::AngleSet(&level.angles),
            search: TranslationSearch::None,
            certificates: &certs,
            analytic: true,
        };
        match witness_level_set(&f, threshold, &cfg, &view.polys, WITNESS_SAMPLES) {
            Ok(estimate) => {
                checks.push(CheckRecord::at_least(
                    format!("k={k}: certified sample size"),
                    estimate.certified as f64,
                    WITNESS_SAMPLES as f64,
                ));
                checks.push(CheckRecord::asserts(
                    format!("k={k}: certified measure equals the union"),
                    estimate.measure == view.union,
                ));
                table.rows.push(vec![
                    k as f64,
                    level.aspect(),
                    view.union_over_disk,
                    view.bound_over_disk,
                    view.quarter_disk_rel_err,
                    threshold,
                    estimate.certified as f64,
                ]);
            }
            Err(err) => {
                checks.push(CheckRecord::asserts(
                    format!("k={k}: maximal bound certified on the union"),
                    false,
                ));
                notes.push(format!("k={k}: certification failed: {err}"));
            }
        }
    }

    Ok(SuiteReport::assemble("prop2", checks, vec![table], notes))
}

/// Log-weighted mass of the calibrated functions against the level-set
/// coefficient times the union area, from the first level where the
/// closed-form chain holds; plus certification at threshold 1.
pub fn suite_levelset_mass(config: &CampaignConfig) -> Result<SuiteReport> {
    let bench = workbench(config)?;
    let consts = &bench.consts;
    let gauge = OrliczFunction::l_log_l();
    let mut checks = Vec::new();
    let mut table = Table::new(
        "levelset_mass",
        &[
            "k",
            "mass",
            "chain_bound",
            "coeff_times_union",
            "union",
            "certified_points",
        ],
    );

    let log_inv_lo = (1.0 / consts.ratio_lo).ln();
    let chain_holds = |k: usize| {
        1.0 + (1.0 / consts.maximal_coeff).ln() + k as f64 * log_inv_lo
            <= 2.0 * k as f64 * log_inv_lo
    };
    // The chain start depends only on the envelope constants, not on how
    // deep this campaign goes.
    let k_min = (1..=crate::construction::LEVEL_CAP).find(|&k| chain_holds(k));
    checks.push(CheckRecord::asserts(
        "a level satisfying the closed-form chain exists",
        k_min.is_some(),
    ));
    let k_min = k_min.unwrap_or(crate::construction::LEVEL_CAP + 1);
    let mut notes = vec![
        format!("the closed-form chain holds from k_min = {k_min}; lower levels are tabulated but not required"),
        "coefficient placement: the verified chain bounds the log-weighted mass by \
         levelset_coeff times the union area, equivalently the level-set measure \
         dominates mass / levelset_coeff; the coefficient multiplies the mass, not \
         the measure"
            .into(),
    ];

    for level in &bench.family.levels {
        let k = level.level;
        let f = DiskIndicator::unit_calibrated(level, consts)?;
        let mass = orlicz_integral(&gauge, &f);
        let disk_area = f.support().area();
        let chain_bound = 2.0 * log_inv_lo / consts.maximal_coeff
            * k as f64
            * consts.ratio_lo.powi(-(k as i32))
            * disk_area;
        let view = witness(level, consts)?;
        let coeff_times_union = consts.levelset_coeff * view.union;

        let mut certified = 0usize;
        if k >= k_min {
            checks.push(CheckRecord::exceeds(
                format!("k={k}: chain bound above the log-weighted mass"),
                chain_bound,
                mass,
            ));
            checks.push(CheckRecord::exceeds(
                format!("k={k}: coefficient times union above the mass"),
                coeff_times_union,
                mass,
            ));
            let (rects, certs) = level_candidates(level);
            let cfg = MaximalConfig {
                rects: &rects,
                rotations: Rotations::AngleSet(&level.angles),
                search: TranslationSearch::None,
                certificates: &certs,
                analytic: true,
            };
            match witness_level_set(&f, 1.0, &cfg, &view.polys, WITNESS_SAMPLES) {
                Ok(estimate) => {
                    certified = estimate.certified;
                    checks.push(CheckRecord::at_least(
                        format!("k={k}: certified sample size at threshold 1"),
                        estimate.certified as f64,
                        WITNESS_SAMPLES as f64,
                    ));
                }
                Err(err) => {
                    checks.push(CheckRecord::asserts(
                        format!("k={k}: threshold-1 certification on the union"),
                        false,
                    ));
                    notes.push(format!("k={k}: certification failed: {err}"));
                }
            }
        }

        table.rows.push(vec![
            k as f64,
            mass,
            chain_bound,
            coeff_times_union,
            view.union,
            certified as f64,
        ]);
    }

    Ok(SuiteReport::assemble(
        "claim-mphi",
        checks,
        vec![table],
        notes,
    ))
}

fn divergence_case(
    label: &str,
    gauge: &OrliczFunction,
    scale: f64,
    consts: &EnvelopeConstants,
    k_max: usize,
    linear_spread: bool,
    checks: &mut Vec<CheckRecord>,
    tables: &mut Vec<Table>,
) -> Result<()> {
    let report = divergence_check(gauge, scale, consts, k_max)?;
    let mut table = Table::new(format!("divergence_{label}"), &["k", "ratio"]);
    for (i, r) in report.ratios.iter().enumerate() {
        table.rows.push(vec![(i + 1) as f64, *r]);
    }
    tables.push(table);
    checks.push(CheckRecord::at_most(
        format!("{label}: ratios increase strictly from level 2"),
        report.increasing_from as f64,
        2.0,
    ));
    // A linear gauge at scale 1 or 2 gains at least ln(1/lo)/2 per level
    // once the argument passes 1; other gauges only owe monotone growth,
    // which the verdict below already encodes.
    if linear_spread && k_max >= 3 {
        let spread = report.ratios[k_max - 1] - report.ratios[1];
        let required = (k_max as f64 - 2.0) / 2.0 * (1.0 / consts.ratio_lo).ln();
        checks.push(CheckRecord::at_least(
            format!("{label}: ratio spread across the run"),
            spread,
            required - 1e-9,
        ));
    }
    // Below three levels there is not enough of a run to tell divergence
    // from noise, and the verdict is defined to withhold judgment.
    if k_max >= 3 {
        checks.push(CheckRecord::asserts(
            format!("{label}: divergence verdict"),
            report.diverges,
        ));
    }
    Ok(())
}

/// Ratio divergence for gauges growing slower than t log t, with the
/// matching gauge as a flat negative control. A configured gauge replaces
/// the default pair of linear-gauge runs.
pub fn suite_divergence(config: &CampaignConfig) -> Result<SuiteReport> {
    let bench = workbench(config)?;
    let consts = &bench.consts;
    let mut checks = Vec::new();
    let mut tables = Vec::new();
    let mut notes = Vec::new();

    match &config.gauge {
        Some(spec) => {
            let gauge: OrliczFunction = spec.parse()?;
            let scale = config.gauge_scale.unwrap_or(1.0);
            notes.push(format!(
                "configured gauge {} with scale {scale}; the suite asserts divergence for it",
                gauge.describe()
            ));
            divergence_case(
                "configured",
                &gauge,
                scale,
                consts,
                config.k_max,
                false,
                &mut checks,
                &mut tables,
            )?;
        }
        None => {
            let linear = OrliczFunction::power(1.0)?;
            divergence_case(
                "linear_scale1",
                &linear,
                1.0,
                consts,
                config.k_max,
                true,
                &mut checks,
                &mut tables,
            )?;
            divergence_case(
                "linear_scale2",
                &linear,
                2.0,
                consts,
                config.k_max,
                true,
                &mut checks,
                &mut tables,
            )?;

            let control = divergence_check(&OrliczFunction::l_log_l(), 1.0, consts, config.k_max)?;
            let worst_flat = control
                .ratios
                .iter()
                .map(|r| (r - 1.0).abs())
                .fold(0.0, f64::max);
            let mut table = Table::new("divergence_control", &["k", "ratio"]);
            for (i, r) in control.ratios.iter().enumerate() {
                table.rows.push(vec![(i + 1) as f64, *r]);
            }
            tables.push(table);
            checks.push(CheckRecord::at_most(
                "control: ratios stay at 1",
                worst_flat,
                REL_TOL,
            ));
            checks.push(CheckRecord::asserts(
                "control: divergence correctly rejected",
                !control.diverges,
            ));
        }
    }

    Ok(SuiteReport::assemble(
        "divergence",
        checks,
        tables,
        notes,
    ))
}

/// The growth-free family: pairwise disjoint halves without any envelope,
/// averages of a quarter on every rotated copy, and the mass inequality
/// relating the rectangle area to the union.
pub fn suite_growth_free(config: &CampaignConfig) -> Result<SuiteReport> {
    let angles: Vec<f64> = (0..=GROWTH_FREE_LEVELS)
        .map(|j| config.theta0 * config.sigma.powi(j as i32))
        .collect();
    let levels = build_growth_free_family(GROWTH_FREE_LEVELS, &angles)?;
    let linear = OrliczFunction::power(1.0)?;
    let mut checks = Vec::new();
    let mut notes = vec![
        "the quarter-threshold quotient is measure/(4 * l1 norm), hence the (k+1)/8 bound"
            .into(),
    ];
    let mut table = Table::new(
        "growth_free",
        &[
            "k",
            "aspect",
            "union",
            "rect_area",
            "l1_norm",
            "quarter_ratio",
            "certified_points",
        ],
    );

    for level in &levels {
        let k = level.level;
        let growth = verify_union_growth(level, None)?;
        checks.push(CheckRecord::asserts(
            format!("k={k}: pairwise gap criterion holds"),
            growth.predicate_disjoint,
        ));
        checks.push(CheckRecord::at_most(
            format!("k={k}: measured half overlap"),
            growth.max_half_overlap_rel,
            OVERLAP_REL_TOL,
        ));

        let f = DiskIndicator::rect_mass(level)?;
        let copies = level.rotated_copies();
        let (rects, certs) = level_candidates(level);
        let cfg = MaximalConfig {
            rects: &rects,
            rotations: Rotations::AngleSet(&level.angles),
            search: TranslationSearch::None,
            certificates: &certs,
            analytic: true,
        };
        let mut ratio = 0.0;
        let mut certified = 0usize;
        match witness_level_set(&f, 0.25, &cfg, &copies, WITNESS_SAMPLES) {
            Ok(estimate) => {
                certified = estimate.certified;
                checks.push(CheckRecord::at_least(
                    format!("k={k}: certified sample size at threshold 1/4"),
                    estimate.certified as f64,
                    WITNESS_SAMPLES as f64,
                ));
                checks.push(CheckRecord::at_most(
                    format!("k={k}: copies-count times mass at most twice the union"),
                    (k as f64 + 1.0) * f.l1_norm(),
                    2.0 * estimate.measure,
                ));
                ratio = weak_type_ratio(&linear, &f, &estimate)?;
                checks.push(CheckRecord::at_least(
                    format!("k={k}: quarter-threshold weak-type quotient"),
                    ratio,
                    (k as f64 + 1.0) / 8.0 * (1.0 - REL_TOL),
                ));
            }
            Err(err) => {
                checks.push(CheckRecord::asserts(
                    format!("k={k}: quarter-average certification on the union"),
                    false,
                ));
                notes.push(format!("k={k}: certification failed: {err}"));
            }
        }

        table.rows.push(vec![
            k as f64,
            level.aspect(),
            growth.union,
            level.normalized_rect().area(),
            f.l1_norm(),
            ratio,
            certified as f64,
        ]);
    }

    Ok(SuiteReport::assemble(
        "remark",
        checks,
        vec![table],
        notes,
    ))
}

/// Rectangles of every level, rescaled into the frame of the level under
/// test, that can reach the smallest sweep threshold at all.
fn reachable_rects(
    family: &NestedFamily,
    level: &LevelConstruction,
    f: &DiskIndicator,
    min_threshold: f64,
) -> Vec<StandardRect> {
    let disk_area = f.support().area();
    let mut rects = Vec::new();
    for other in &family.levels {
        let length = (other.log_length - level.log_length).exp();
        let height = (other.log_height - level.log_length).exp();
        if !(length.is_finite() && length > 0.0 && height > 0.0) {
            continue;
        }
        let Ok(rect) = StandardRect::new(length, height) else {
            continue;
        };
        let peak_average = f.value() * (disk_area / rect.area()).min(1.0);
        if peak_average >= min_threshold {
            rects.push(rect);
        }
    }
    rects
}

fn threshold_grid(peak: f64) -> Vec<f64> {
    (-THRESHOLD_OCTAVES..=THRESHOLD_OCTAVES)
        .map(|i| peak * 2f64.powi(i))
        .collect()
}

/// Axis-parallel pixel sweep of one level's test function over the
/// family, reporting the worst weak (1,1) quotient across the grid.
fn axis_sweep(
    family: &NestedFamily,
    level: &LevelConstruction,
    f: &DiskIndicator,
    resolution: usize,
) -> Result<crate::maximal::WeakTypeSweep> {
    let thresholds = threshold_grid(f.value());
    let rects = reachable_rects(family, level, f, thresholds[0]);
    let region = PixelRegion::new(
        f.support().center,
        f.support().radius + level.normalized_rect().diagonal(),
        resolution,
    )?;
    let cfg = MaximalConfig {
        rects: &rects,
        rotations: Rotations::None,
        search: TranslationSearch::None,
        certificates: &[],
        analytic: true,
    };
    Ok(weak_type_sweep(f, &thresholds, &cfg, &region))
}

/// Empirical axis-parallel weak (1,1) estimates across the levels: the
/// family is totally ordered by inclusion, so the quotient must stay
/// within the fixed budget at every level and threshold.
pub fn suite_weak11(config: &CampaignConfig) -> Result<SuiteReport> {
    let bench = workbench(config)?;
    let mut checks = Vec::new();
    let mut table = Table::new(
        "weak11",
        &["k", "threshold", "measure", "ratio"],
    );
    let mut summary = Table::new("weak11_constants", &["k", "constant"]);

    for level in &bench.family.levels {
        let k = level.level;
        if k > WEAK11_MAX_LEVEL {
            break;
        }
        let f = DiskIndicator::unit_calibrated(level, &bench.consts)?;
        let sweep = axis_sweep(&bench.family, level, &f, config.resolution)?;
        for sample in &sweep.samples {
            table
                .rows
                .push(vec![k as f64, sample.threshold, sample.measure, sample.ratio]);
        }
        summary.rows.push(vec![k as f64, sweep.constant]);
        checks.push(CheckRecord::at_most(
            format!("k={k}: axis-parallel weak (1,1) estimate"),
            sweep.constant,
            WEAK11_BUDGET,
        ));
    }

    Ok(SuiteReport::assemble(
        "weak11",
        checks,
        vec![summary, table],
        vec![format!(
            "pixel sweeps at resolution {} over a square of half side \
             support radius plus rectangle diagonal",
            config.resolution
        )],
    ))
}

/// Side-by-side blow-up table: certified rotated-basis weak-type
/// quotients against the axis-parallel estimates.
pub fn blowup_table(config: &CampaignConfig) -> Result<SuiteReport> {
    if config.remark {
        return blowup_table_growth_free(config);
    }
    let bench = workbench(config)?;
    let linear = OrliczFunction::power(1.0)?;
    let mut checks = Vec::new();
    let notes = vec![format!(
        "rows stop at level {WEAK11_MAX_LEVEL}, the cap for pixel sweeps"
    )];
    let mut table = Table::new(
        "blowup",
        &["k", "aspect", "rotated_ratio", "axis_estimate"],
    );
    let mut previous: Option<f64> = None;

    for level in &bench.family.levels {
        let k = level.level;
        if k > WEAK11_MAX_LEVEL {
            break;
        }
        let f = DiskIndicator::unit_calibrated(level, &bench.consts)?;
        let copies = level.rotated_copies();
        let (rects, certs) = level_candidates(level);
        let cfg = MaximalConfig {
            rects: &rects,
            rotations: Rotations::AngleSet(&level.angles),
            search: TranslationSearch::None,
            certificates: &certs,
            analytic: true,
        };
        let estimate = witness_level_set(&f, 0.5, &cfg, &copies, WITNESS_SAMPLES)?;
        let rotated = weak_type_ratio(&linear, &f, &estimate)?;
        if let Some(prev) = previous {
            checks.push(CheckRecord::exceeds(
                format!("k={k}: rotated quotient above level {}", k - 1),
                rotated,
                prev,
            ));
        }
        previous = Some(rotated);

        let sweep = axis_sweep(&bench.family, level, &f, config.resolution)?;
        checks.push(CheckRecord::at_most(
            format!("k={k}: axis-parallel estimate within budget"),
            sweep.constant,
            WEAK11_BUDGET,
        ));

        table
            .rows
            .push(vec![k as f64, level.aspect(), rotated, sweep.constant]);
    }

    Ok(SuiteReport::assemble("blowup", checks, vec![table], notes))
}

/// Blow-up table over the growth-free family at threshold 1/4.
fn blowup_table_growth_free(config: &CampaignConfig) -> Result<SuiteReport> {
    let angles: Vec<f64> = (0..=GROWTH_FREE_LEVELS)
        .map(|j| config.theta0 * config.sigma.powi(j as i32))
        .collect();
    let levels = build_growth_free_family(GROWTH_FREE_LEVELS, &angles)?;
    let linear = OrliczFunction::power(1.0)?;
    let mut checks = Vec::new();
    let mut table = Table::new(
        "blowup_growth_free",
        &["k", "aspect", "rotated_ratio", "union_margin"],
    );

    for level in &levels {
        let k = level.level;
        let f = DiskIndicator::rect_mass(level)?;
        let copies = level.rotated_copies();
        let (rects, certs) = level_candidates(level);
        let cfg = MaximalConfig {
            rects: &rects,
            rotations: Rotations::AngleSet(&level.angles),
            search: TranslationSearch::None,
            certificates: &certs,
            analytic: true,
        };
        let estimate = witness_level_set(&f, 0.25, &cfg, &copies, WITNESS_SAMPLES)?;
        let rotated = weak_type_ratio(&linear, &f, &estimate)?;
        checks.push(CheckRecord::at_least(
            format!("k={k}: quarter-threshold quotient meets the count bound"),
            rotated,
            (k as f64 + 1.0) / 8.0 * (1.0 - REL_TOL),
        ));
        let margin = 2.0 * estimate.measure / ((k as f64 + 1.0) * f.l1_norm());
        table.rows.push(vec![k as f64, level.aspect(), rotated, margin]);
    }

    Ok(SuiteReport::assemble(
        "blowup",
        checks,
        vec![table],
        vec!["growth-free family: quotients grow with the copy count, not the aspect".into()],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::CampaignConfig;

    fn quick_config() -> CampaignConfig {
        CampaignConfig {
            k_max: 4,
            samples: 20_000,
            resolution: 128,
            ..CampaignConfig::default()
        }
    }

    #[test]
    fn half_disjoint_suite_passes_with_default_seed() {
        let report = suite_half_disjoint(&quick_config()).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.suite, "lemma1");
    }

    #[test]
    fn union_growth_suite_passes_and_tabulates_every_level() {
        let config = quick_config();
        let report = suite_union_growth(&config).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.tables[0].rows.len(), config.k_max);
    }

    #[test]
    fn witness_suite_certifies_every_level() {
        let report = suite_witness(&quick_config()).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn levelset_suite_reports_the_chain_start() {
        let config = CampaignConfig {
            k_max: 6,
            ..quick_config()
        };
        let report = suite_levelset_mass(&config).unwrap();
        assert!(report.pass, "{report:?}");
        assert!(report.notes[0].contains("k_min = 5"));
        // All levels are tabulated even below the chain start.
        assert_eq!(report.tables[0].rows.len(), 6);
    }

    #[test]
    fn divergence_suite_runs_the_default_trio() {
        let config = CampaignConfig {
            k_max: 10,
            ..quick_config()
        };
        let report = suite_divergence(&config).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.tables.len(), 3);
    }

    #[test]
    fn divergence_suite_honors_a_configured_gauge() {
        let config = CampaignConfig {
            k_max: 10,
            gauge: Some("loglike:0.5".into()),
            gauge_scale: Some(2.0),
            ..quick_config()
        };
        let report = suite_divergence(&config).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.tables.len(), 1);
    }

    #[test]
    fn growth_free_suite_passes() {
        let report = suite_growth_free(&quick_config()).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.tables[0].rows.len(), GROWTH_FREE_LEVELS + 1);
    }

    #[test]
    fn weak11_suite_stays_within_budget_at_low_resolution() {
        let report = suite_weak11(&quick_config()).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn blowup_table_grows_along_the_rotated_column() {
        let report = blowup_table(&quick_config()).unwrap();
        assert!(report.pass, "{report:?}");
        let rows = &report.tables[0].rows;
        for pair in rows.windows(2) {
            assert!(pair[1][2] > pair[0][2]);
        }
    }

    #[test]
    fn blowup_table_switches_to_the_growth_free_family() {
        let config = CampaignConfig {
            remark: true,
            ..quick_config()
        };
        let report = blowup_table(&config).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.tables[0].name, "blowup_growth_free");
        assert_eq!(report.tables[0].rows.len(), GROWTH_FREE_LEVELS + 1);
    }
}
