//! Certified lower bounds for rectangle maximal operators.
//!
//! The operator under study averages `|f|` over placed rectangles that
//! contain the evaluation point; the supremum runs over the allowed
//! rectangle sizes, the allowed rotations, and all translations. Every
//! value reported here is the exact average over some explicitly
//! constructed placement, so it never exceeds the true supremum.
//!
//! For an integrand that is a constant multiple of a disk indicator the
//! best translation of a fixed rectangle at a fixed angle has a closed
//! form: in the frame where the rectangle is axis aligned, the overlap
//! with the disk is, coordinate by coordinate, a nonincreasing function
//! of the distance between the two centers, so clamping the rectangle
//! center toward the disk center subject to still containing the
//! evaluation point is optimal. The grid search over translations is kept
//! as a diagnostic; its candidate set is anchored at the evaluation point
//! so that refining the step only adds candidates.

pub mod orlicz;

pub use orlicz::{
    divergence_check, orlicz_integral, weak_type_ratio, DivergenceReport, OrliczFunction,
};

use crate::construction::{EnvelopeConstants, LevelConstruction};
use crate::error::{Error, Result};
use crate::geometry::{
    disk_polygon_area, place_rect, union_area, ConvexPolygon, Disk, Placement, Point2,
    StandardRect, UnionMethod,
};
use serde::Serialize;
use std::f64::consts::PI;

/// Relative slack applied to certification thresholds, absorbing the
/// rounding of exact-area formulas evaluated in floating point.
pub const CERT_TOL: f64 = 1e-9;

/// A constant multiple of a disk indicator, `f = value * indicator(support)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskIndicator {
    value: f64,
    support: Disk,
}

impl DiskIndicator {
    pub fn new(value: f64, support: Disk) -> Result<Self> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::BadOrlicz(format!(
                "indicator value must be finite and positive, got {value}"
            )));
        }
        Ok(DiskIndicator { value, support })
    }

    /// The blow-up test function of a level, in the level's normalized
    /// frame: the height disk scaled by `lo^-k / maximal_coeff`, so that
    /// the certified average over any of the level's rotated rectangles
    /// reaches 1.
    pub fn unit_calibrated(level: &LevelConstruction, consts: &EnvelopeConstants) -> Result<Self> {
        if level.level == 0 {
            return Err(Error::TooFew {
                what: "construction levels",
                needed: 1,
                got: 0,
            });
        }
        let value = consts.ratio_lo.powi(-(level.level as i32)) / consts.maximal_coeff;
        DiskIndicator::new(value, level.normalized_disk())
    }

    /// The rectangle's area spread uniformly over the height disk, in the
    /// level's normalized frame. Its total mass equals the rectangle area
    /// and its average over any rotated copy of the rectangle is 1/4.
    pub fn rect_mass(level: &LevelConstruction) -> Result<Self> {
        DiskIndicator::new(level.aspect() / PI, level.normalized_disk())
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn support(&self) -> &Disk {
        &self.support
    }

    pub fn l1_norm(&self) -> f64 {
        self.value * self.support.area()
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        DiskIndicator::new(self.value * factor, self.support)
    }
}

/// Translation grid: step is a fraction of the rectangle's short side,
/// the window is a multiple of rectangle diameter plus support radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSearch {
    step_fraction: f64,
    window_multiplier: f64,
}

impl GridSearch {
    pub fn new(step_fraction: f64, window_multiplier: f64) -> Result<Self> {
        if !(step_fraction > 0.0 && step_fraction <= 1.0) {
            return Err(Error::Config(format!(
                "grid step fraction must lie in (0, 1], got {step_fraction}"
            )));
        }
        if !(window_multiplier.is_finite() && window_multiplier >= 1.0) {
            return Err(Error::Config(format!(
                "grid window multiplier must be >= 1, got {window_multiplier}"
            )));
        }
        Ok(GridSearch {
            step_fraction,
            window_multiplier,
        })
    }

    pub fn step_fraction(&self) -> f64 {
        self.step_fraction
    }
}

/// How translations are enumerated beyond the closed-form optimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum TranslationSearch {
    /// Closed-form and certificate placements only.
    None,
    Grid(GridSearch),
}

/// Allowed rotations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rotations<'a> {
    /// Axis-parallel averages only.
    None,
    /// The listed angles, in radians.
    AngleSet(&'a [f64]),
}

/// A pre-built placement of one of the configured rectangles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Certificate {
    /// Index into the configured rectangle list.
    pub rect: usize,
    pub placement: Placement,
}

/// Candidate enumeration for the lower bound.
#[derive(Debug, Clone, Copy)]
pub struct MaximalConfig<'a> {
    pub rects: &'a [StandardRect],
    pub rotations: Rotations<'a>,
    pub search: TranslationSearch,
    pub certificates: &'a [Certificate],
    /// Include the closed-form best translation per rectangle and angle.
    pub analytic: bool,
}

/// Largest average of `f` over any enumerated placement containing `x`.
/// Always a valid lower bound for the maximal operator at `x`; exactly 0
/// when no enumerated placement containing `x` meets the support.
pub fn maximal_lower(x: Point2, f: &DiskIndicator, cfg: &MaximalConfig) -> f64 {
    let mut best = 0.0_f64;
    for cert in cfg.certificates {
        let rect = &cfg.rects[cert.rect];
        let poly = place_rect(rect, &cert.placement);
        if poly.contains(x) {
            best = best.max(f.value * disk_polygon_area(&f.support, &poly) / rect.area());
        }
    }
    let axis_only = [0.0_f64];
    let angles: &[f64] = match cfg.rotations {
        Rotations::None => &axis_only,
        Rotations::AngleSet(set) => set,
    };
    for rect in cfg.rects {
        // No placement of this rectangle can reach the support from x.
        if (x - f.support.center).norm() > f.support.radius + rect.diagonal() {
            continue;
        }
        for &angle in angles {
            if cfg.analytic {
                best = best.max(best_translate(x, f, rect, angle).1);
            }
            if let TranslationSearch::Grid(grid) = cfg.search {
                best = best.max(grid_best(x, f, rect, angle, &grid));
            }
        }
    }
    best
}

/// Average of `f` over the rectangle rotated by `angle` whose center, in
/// the rotated frame, sits at `center`. The overlap is evaluated relative
/// to the rectangle center, so it stays exact even when the rectangle is
/// many orders of magnitude smaller than the coordinates of its position.
fn centered_average(
    f: &DiskIndicator,
    rect: &StandardRect,
    center: Point2,
    support_rotated: Point2,
) -> f64 {
    let half_l = 0.5 * rect.length();
    let half_h = 0.5 * rect.height();
    let poly = ConvexPolygon::new(vec![
        Point2::new(-half_l, -half_h),
        Point2::new(half_l, -half_h),
        Point2::new(half_l, half_h),
        Point2::new(-half_l, half_h),
    ])
    .expect("centered rectangle is convex");
    let disk = Disk {
        center: support_rotated - center,
        radius: f.support.radius,
    };
    f.value * disk_polygon_area(&disk, &poly) / rect.area()
}

/// The best translation of `rect` rotated by `angle` that still contains
/// `x`, together with the average of `f` it realizes.
pub fn best_translate(
    x: Point2,
    f: &DiskIndicator,
    rect: &StandardRect,
    angle: f64,
) -> (Placement, f64) {
    let half_l = 0.5 * rect.length();
    let half_h = 0.5 * rect.height();
    let u = x.rotate(-angle);
    let v = f.support.center.rotate(-angle);
    let center = Point2::new(
        v.x.clamp(u.x - half_l, u.x + half_l),
        v.y.clamp(u.y - half_h, u.y + half_h),
    );
    let average = centered_average(f, rect, center, v);
    let corner = Point2::new(center.x - half_l, center.y - half_h);
    let placement = Placement::new(angle, corner.rotate(angle));
    (placement, average)
}

fn grid_best(x: Point2, f: &DiskIndicator, rect: &StandardRect, angle: f64, grid: &GridSearch) -> f64 {
    let half_l = 0.5 * rect.length();
    let half_h = 0.5 * rect.height();
    let step = grid.step_fraction * rect.height();
    let window = grid.window_multiplier * (rect.diagonal() + f.support.radius);
    let reach = (window / step).ceil() as i64;
    // Only centers whose rectangle still contains x are admissible.
    let ilim = reach.min((half_l / step).floor() as i64);
    let jlim = reach.min((half_h / step).floor() as i64);
    let u = x.rotate(-angle);
    let v = f.support.center.rotate(-angle);
    let mut best = 0.0_f64;
    for i in -ilim..=ilim {
        for j in -jlim..=jlim {
            let center = Point2::new(u.x + i as f64 * step, u.y + j as f64 * step);
            best = best.max(centered_average(f, rect, center, v));
        }
    }
    best
}

/// How a level-set measure was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelSetMode {
    /// Exact area of an explicit subset, every sample point certified.
    WitnessExact,
    /// Count of certified pixel centers times pixel area.
    PixelCertified { resolution: usize },
}

/// Lower estimate of `|{ maximal operator of f >= threshold }|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelSetEstimate {
    pub threshold: f64,
    pub measure: f64,
    pub mode: LevelSetMode,
    /// Points (or pixels) at which the bound was certified.
    pub certified: usize,
}

/// Deterministic stratified sample of the polygons: each polygon is
/// fanned into triangles, each triangle receives a share of the budget
/// proportional to its area and is covered by a folded midpoint lattice.
pub fn stratified_points(polys: &[ConvexPolygon], min_total: usize) -> Vec<Point2> {
    let mut triangles = Vec::new();
    let mut total_area = 0.0;
    for poly in polys {
        let verts = poly.vertices();
        for i in 1..verts.len() - 1 {
            let tri = (verts[0], verts[i], verts[i + 1]);
            let area = 0.5 * (tri.1 - tri.0).cross(tri.2 - tri.0);
            triangles.push((tri, area));
            total_area += area;
        }
    }
    let mut points = Vec::with_capacity(min_total + triangles.len());
    for ((a, b, c), area) in triangles {
        let share = (min_total as f64 * area / total_area).ceil().max(1.0);
        let n = (share.sqrt().ceil() as usize).max(1);
        for i in 0..n {
            for j in 0..n {
                let mut s = (i as f64 + 0.5) / n as f64;
                let mut t = (j as f64 + 0.5) / n as f64;
                if s + t > 1.0 {
                    s = 1.0 - s;
                    t = 1.0 - t;
                }
                points.push(a + (b - a) * s + (c - a) * t);
            }
        }
    }
    points
}

/// Certifies `maximal_lower >= threshold` on a stratified sample of the
/// witness polygons, then returns their exact union area. The witness is
/// a subset of the level set, so the area is a true lower bound.
pub fn witness_level_set(
    f: &DiskIndicator,
    threshold: f64,
    cfg: &MaximalConfig,
    witness: &[ConvexPolygon],
    min_samples: usize,
) -> Result<LevelSetEstimate> {
    if !(threshold > 0.0 && threshold.is_finite()) {
        return Err(Error::BadOrlicz(format!(
            "level-set threshold must be finite and positive, got {threshold}"
        )));
    }
    let points = stratified_points(witness, min_samples);
    let floor = threshold * (1.0 - CERT_TOL);
    for &p in &points {
        let value = maximal_lower(p, f, cfg);
        if value < floor {
            return Err(Error::CertificationFailed {
                x: p.x,
                y: p.y,
                value,
                threshold,
            });
        }
    }
    let measure = union_area(witness, UnionMethod::Exact)?.value;
    Ok(LevelSetEstimate {
        threshold,
        measure,
        mode: LevelSetMode::WitnessExact,
        certified: points.len(),
    })
}

/// Square sampling window for pixel sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PixelRegion {
    pub center: Point2,
    pub half_side: f64,
    pub resolution: usize,
}

impl PixelRegion {
    pub fn new(center: Point2, half_side: f64, resolution: usize) -> Result<Self> {
        if !(half_side.is_finite() && half_side > 0.0) || resolution == 0 {
            return Err(Error::Config(format!(
                "pixel region needs positive half side and resolution, got {half_side} and {resolution}"
            )));
        }
        Ok(PixelRegion {
            center,
            half_side,
            resolution,
        })
    }

    pub fn pixel_area(&self) -> f64 {
        let side = 2.0 * self.half_side / self.resolution as f64;
        side * side
    }
}

/// Evaluates the lower bound at every pixel center and reports, for each
/// threshold, the certified pixel count times the pixel area. Thresholds
/// must be positive; counts are nonincreasing along an increasing grid.
pub fn pixel_level_sets(
    f: &DiskIndicator,
    thresholds: &[f64],
    cfg: &MaximalConfig,
    region: &PixelRegion,
) -> Vec<LevelSetEstimate> {
    let n = region.resolution;
    let side = 2.0 * region.half_side / n as f64;
    let origin = region.center - Point2::new(region.half_side, region.half_side);
    let mut counts = vec![0usize; thresholds.len()];
    for iy in 0..n {
        let y = origin.y + (iy as f64 + 0.5) * side;
        for ix in 0..n {
            let x = Point2::new(origin.x + (ix as f64 + 0.5) * side, y);
            let value = maximal_lower(x, f, cfg);
            for (slot, &alpha) in counts.iter_mut().zip(thresholds) {
                if value >= alpha {
                    *slot += 1;
                }
            }
        }
    }
    let pixel = region.pixel_area();
    thresholds
        .iter()
        .zip(counts)
        .map(|(&alpha, count)| LevelSetEstimate {
            threshold: alpha,
            measure: count as f64 * pixel,
            mode: LevelSetMode::PixelCertified { resolution: n },
            certified: count,
        })
        .collect()
}

pub fn pixel_level_set(
    f: &DiskIndicator,
    threshold: f64,
    cfg: &MaximalConfig,
    region: &PixelRegion,
) -> LevelSetEstimate {
    pixel_level_sets(f, &[threshold], cfg, region)[0]
}

/// One threshold of a weak-type sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeakTypePoint {
    pub threshold: f64,
    pub measure: f64,
    /// `threshold * measure / l1 norm`.
    pub ratio: f64,
}

/// Result of sweeping the weak (1,1) quotient over a threshold grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeakTypeSweep {
    pub samples: Vec<WeakTypePoint>,
    /// Largest ratio over the grid: an empirical lower estimate of the
    /// weak (1,1) constant.
    pub constant: f64,
}

/// Sweeps `alpha * |{lower bound >= alpha}| / ||f||_1` over the threshold
/// grid with one pixel pass.
pub fn weak_type_sweep(
    f: &DiskIndicator,
    thresholds: &[f64],
    cfg: &MaximalConfig,
    region: &PixelRegion,
) -> WeakTypeSweep {
    let norm = f.l1_norm();
    let samples: Vec<WeakTypePoint> = pixel_level_sets(f, thresholds, cfg, region)
        .into_iter()
        .map(|est| WeakTypePoint {
            threshold: est.threshold,
            measure: est.measure,
            ratio: est.threshold * est.measure / norm,
        })
        .collect();
    let constant = samples.iter().map(|s| s.ratio).fold(0.0, f64::max);
    WeakTypeSweep { samples, constant }
}
