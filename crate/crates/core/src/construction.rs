//! Rectangle families driven by a validated slope window.
//!
//! Level `k` uses the first `k` window angles and a rectangle whose aspect
//! ratio `L/h` satisfies `(L/h)^2 = 4 + lo^(-2k) * c^2`, where `lo` is the
//! lower envelope bound and `c` depends only on the envelope and the window
//! base slope. That aspect makes the tangent of every pairwise angle gap
//! clear the half-rectangle disjointness threshold, so the `k` rotated
//! right halves are pairwise disjoint and the union of the rotated
//! rectangles is at least `k/2` times one rectangle.
//!
//! Absolute dimensions shrink superexponentially across levels. Each level
//! carries its dimensions both as `f64` and in log scale, and exposes a
//! normalized frame (length scaled to 1) in which all verification runs;
//! every certified quantity is a ratio, so the frame choice is immaterial.

use crate::error::{Error, Result};
use crate::geometry::{
    disjointness_threshold, disk_polygon_area, intersection_area, place_half_rect, place_rect,
    union_area, AreaEstimate, ConvexPolygon, Disk, Placement, StandardRect, UnionMethod, REL_TOL,
};
use serde::Serialize;
use std::f64::consts::PI;

/// Hard cap on the number of levels; beyond this the aspect ratios exceed
/// 1e12 and slack checks lose meaning.
pub const LEVEL_CAP: usize = 40;

/// Derived constants of an envelope `(lo, hi)` and window base slope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnvelopeConstants {
    /// Lower envelope bound for slope ratios.
    pub ratio_lo: f64,
    /// Upper envelope bound for slope ratios.
    pub ratio_hi: f64,
    /// Slope at the window start, in (0, 1].
    pub base_slope: f64,
    /// Lower aspect coefficient: `aspect >= aspect_lo * lo^-k`.
    pub aspect_lo: f64,
    /// Upper aspect coefficient: `aspect <= aspect_hi * lo^-k`.
    pub aspect_hi: f64,
    /// Witness-area coefficient `aspect_lo / (2 pi)`.
    pub area_coeff: f64,
    /// Maximal lower-bound coefficient `pi / (4 aspect_hi)`.
    pub maximal_coeff: f64,
    /// Orlicz-comparison coefficient `2 ln(1/lo) / (area_coeff * maximal_coeff)`.
    pub levelset_coeff: f64,
}

impl EnvelopeConstants {
    pub fn new(ratio_lo: f64, ratio_hi: f64, base_slope: f64) -> Result<Self> {
        if !(0.0 < ratio_lo && ratio_lo < ratio_hi && ratio_hi < 1.0) {
            return Err(Error::BadEnvelope {
                low: ratio_lo,
                high: ratio_hi,
            });
        }
        if !(base_slope > 0.0 && base_slope <= 1.0) {
            return Err(Error::BadBaseSlope { slope: base_slope });
        }
        let aspect_lo = 1.0 / ((1.0 / ratio_hi - 1.0) * base_slope);
        let aspect_hi = (4.0 + aspect_lo * aspect_lo).sqrt();
        let area_coeff = aspect_lo / (2.0 * PI);
        let maximal_coeff = PI / (4.0 * aspect_hi);
        let levelset_coeff = 2.0 * (1.0 / ratio_lo).ln() / (area_coeff * maximal_coeff);
        Ok(EnvelopeConstants {
            ratio_lo,
            ratio_hi,
            base_slope,
            aspect_lo,
            aspect_hi,
            area_coeff,
            maximal_coeff,
            levelset_coeff,
        })
    }

    pub fn from_window(window: &crate::lacunary::SlopeWindow) -> Result<Self> {
        Self::new(window.envelope.0, window.envelope.1, window.base_slope())
    }

    /// Aspect ratio used at level `k`, computed in a form that stays
    /// well conditioned for large `k`.
    pub fn aspect_at(&self, level: usize) -> f64 {
        let lo_k = self.ratio_lo.powi(level as i32);
        (4.0 * lo_k * lo_k + self.aspect_lo * self.aspect_lo).sqrt() / lo_k
    }
}

/// One level of the construction: a rectangle, the angles it is rotated
/// through, and its dimensions in log scale.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelConstruction {
    pub level: usize,
    /// Absolute dimensions `(L, h)`; representable for all capped levels.
    pub rect: StandardRect,
    /// Rotation angles, strictly decreasing.
    pub angles: Vec<f64>,
    /// Upper bound the length was required to honor (`L` equals it).
    pub size_cap: f64,
    pub log_length: f64,
    pub log_height: f64,
}

impl LevelConstruction {
    pub fn aspect(&self) -> f64 {
        self.rect.aspect()
    }

    /// The same rectangle with length scaled to 1.
    pub fn normalized_rect(&self) -> StandardRect {
        StandardRect::new(1.0, 1.0 / self.aspect()).expect("normalized rect is valid")
    }

    /// Disk of radius `h` about the rotation center, normalized frame.
    pub fn normalized_disk(&self) -> Disk {
        Disk::new(crate::geometry::Point2::ORIGIN, 1.0 / self.aspect())
            .expect("normalized disk is valid")
    }

    /// Rotated copies of the rectangle in the normalized frame.
    pub fn rotated_copies(&self) -> Vec<ConvexPolygon> {
        let rect = self.normalized_rect();
        self.angles
            .iter()
            .map(|&a| place_rect(&rect, &Placement::rotation(a)))
            .collect()
    }

    /// Rotated copies of the right half in the normalized frame.
    pub fn rotated_halves(&self) -> Vec<ConvexPolygon> {
        let rect = self.normalized_rect();
        self.angles
            .iter()
            .map(|&a| place_half_rect(&rect, &Placement::rotation(a)))
            .collect()
    }
}

/// Builds level `k >= 1` with length exactly `size_cap`.
pub fn build_level(
    level: usize,
    size_cap: f64,
    window: &crate::lacunary::SlopeWindow,
    consts: &EnvelopeConstants,
) -> Result<LevelConstruction> {
    if level == 0 || level > LEVEL_CAP {
        return Err(Error::LevelCapExceeded {
            requested: level,
            cap: LEVEL_CAP,
        });
    }
    if window.len() < level {
        return Err(Error::WindowTooShort {
            level,
            have: window.len(),
        });
    }
    if !(size_cap.is_finite() && size_cap > 0.0) {
        return Err(Error::BadRectangle {
            length: size_cap,
            height: f64::NAN,
        });
    }
    let aspect = consts.aspect_at(level);
    let rect = StandardRect::new(size_cap, size_cap / aspect)?;
    let log_length = size_cap.ln();
    Ok(LevelConstruction {
        level,
        rect,
        angles: window.angles[..level].to_vec(),
        size_cap,
        log_length,
        log_height: log_length - aspect.ln(),
    })
}

/// The nested family: level `k+1` fits inside level `k` componentwise.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NestedFamily {
    pub constants: EnvelopeConstants,
    pub levels: Vec<LevelConstruction>,
}

/// Builds levels `1..=max_level` with caps `eps_1 = 1`,
/// `eps_{k+1} = min(h_k, 1/k)`.
pub fn build_nested_family(
    max_level: usize,
    window: &crate::lacunary::SlopeWindow,
    consts: &EnvelopeConstants,
) -> Result<NestedFamily> {
    if max_level == 0 || max_level > LEVEL_CAP {
        return Err(Error::LevelCapExceeded {
            requested: max_level,
            cap: LEVEL_CAP,
        });
    }
    let mut levels = Vec::with_capacity(max_level);
    let mut cap = 1.0_f64;
    for k in 1..=max_level {
        let level = build_level(k, cap, window, consts)?;
        cap = level.rect.height().min(1.0 / k as f64);
        levels.push(level);
    }
    debug_assert!(levels
        .windows(2)
        .all(|w| w[1].rect.length() <= w[0].rect.height()));
    Ok(NestedFamily {
        constants: *consts,
        levels,
    })
}

/// Measured union growth of one level, normalized frame.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnionGrowthReport {
    pub level: usize,
    /// All pairwise gap tangents clear the disjointness threshold.
    pub predicate_disjoint: bool,
    /// Largest measured half-overlap relative to one half area.
    pub max_half_overlap_rel: f64,
    /// Exact union area of the rotated rectangles.
    pub union: f64,
    /// Area of one rectangle.
    pub rect_area: f64,
    /// Required lower bound: half the rectangle area per angle.
    pub required: f64,
    pub slack: f64,
    /// Optional seeded Monte Carlo cross-check of the union.
    pub monte_carlo: Option<AreaEstimate>,
    pub pass: bool,
}

/// Checks pairwise disjointness of the rotated right halves and the union
/// lower bound `|union| >= (count/2) |rect|` in the level's normalized
/// frame.
pub fn verify_union_growth(
    level: &LevelConstruction,
    monte_carlo: Option<(u64, u64)>,
) -> Result<UnionGrowthReport> {
    let rect = level.normalized_rect();
    let halves = level.rotated_halves();
    let half_area = 0.5 * rect.area();
    let threshold = disjointness_threshold(&rect)?;

    let mut predicate_disjoint = true;
    let mut max_half_overlap_rel: f64 = 0.0;
    for i in 0..halves.len() {
        for j in (i + 1)..halves.len() {
            // Angles decrease with index, so angles[j] < angles[i].
            let gap_ok = (level.angles[i] - level.angles[j]).tan()
                >= threshold * (1.0 - REL_TOL);
            predicate_disjoint &= gap_ok;
            let overlap = intersection_area(&halves[i], &halves[j]) / half_area;
            max_half_overlap_rel = max_half_overlap_rel.max(overlap);
        }
    }

    let copies = level.rotated_copies();
    let union = union_area(&copies, UnionMethod::Exact)?.value;
    let required = 0.5 * copies.len() as f64 * rect.area();
    let monte_carlo = match monte_carlo {
        Some((samples, seed)) => {
            Some(union_area(&copies, UnionMethod::MonteCarlo { samples, seed })?)
        }
        None => None,
    };
    let pass = predicate_disjoint && max_half_overlap_rel <= REL_TOL && union >= required;
    Ok(UnionGrowthReport {
        level: level.level,
        predicate_disjoint,
        max_half_overlap_rel,
        union,
        rect_area: rect.area(),
        required,
        slack: union - required,
        monte_carlo,
        pass,
    })
}

/// The witness set of a level: the disk of radius `h` about the rotation
/// center and the union of the rotated rectangles, normalized frame.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelWitness {
    pub level: usize,
    #[serde(skip)]
    pub disk: Disk,
    #[serde(skip)]
    pub polys: Vec<ConvexPolygon>,
    /// Exact union area of the rotated rectangles.
    pub union: f64,
    /// Union area over disk area.
    pub union_over_disk: f64,
    /// Required lower bound `area_coeff * k * lo^-k`.
    pub bound_over_disk: f64,
    /// Worst relative deviation of the disk/rectangle overlap from a
    /// quarter disk, across all angles.
    pub quarter_disk_rel_err: f64,
    pub pass: bool,
}

/// Quarter-disk overlap tolerance for the witness identity.
pub const QUARTER_DISK_TOL: f64 = 1e-9;

pub fn witness(level: &LevelConstruction, consts: &EnvelopeConstants) -> Result<LevelWitness> {
    let disk = level.normalized_disk();
    let polys = level.rotated_copies();
    let union = union_area(&polys, UnionMethod::Exact)?.value;
    let quarter = 0.25 * PI * disk.radius * disk.radius;
    let quarter_disk_rel_err = polys
        .iter()
        .map(|poly| (disk_polygon_area(&disk, poly) - quarter).abs() / quarter)
        .fold(0.0, f64::max);
    let k = level.level as f64;
    let bound_over_disk =
        consts.area_coeff * k * consts.ratio_lo.powi(-(level.level as i32));
    let union_over_disk = union / disk.area();
    let pass = union_over_disk >= bound_over_disk && quarter_disk_rel_err <= QUARTER_DISK_TOL;
    Ok(LevelWitness {
        level: level.level,
        disk,
        polys,
        union,
        union_over_disk,
        bound_over_disk,
        quarter_disk_rel_err,
        pass,
    })
}

/// Safety factor applied to the minimal admissible aspect of the
/// growth-free family.
pub const GROWTH_FREE_ASPECT_MARGIN: f64 = 1.01;

/// Family without any envelope: level `k` (0-based) uses the first `k+1`
/// angles and the smallest aspect, times a fixed margin, for which every
/// pairwise angle gap clears the disjointness threshold. Level `k+1` again
/// nests inside level `k`.
pub fn build_growth_free_family(
    max_level: usize,
    angles: &[f64],
) -> Result<Vec<LevelConstruction>> {
    if max_level + 1 > angles.len() {
        return Err(Error::TooFew {
            what: "angles",
            needed: max_level + 1,
            got: angles.len(),
        });
    }
    if max_level + 1 > LEVEL_CAP {
        return Err(Error::LevelCapExceeded {
            requested: max_level + 1,
            cap: LEVEL_CAP,
        });
    }
    for &a in angles {
        if !(a > 0.0 && a < std::f64::consts::FRAC_PI_2) {
            return Err(Error::AngleOutOfRange {
                angle: a,
                limit: std::f64::consts::FRAC_PI_2,
            });
        }
    }
    for w in angles.windows(2) {
        if !(w[1] < w[0]) {
            return Err(Error::AngleOrder {
                low: w[1],
                high: w[0],
            });
        }
    }

    let mut levels = Vec::with_capacity(max_level + 1);
    let mut length = 1.0_f64;
    for k in 0..=max_level {
        let used = &angles[..=k];
        // Smallest pairwise gap dictates the aspect; threshold inversion of
        // tan(gap) >= 1/sqrt(aspect^2/4 - 1).
        let mut worst_inv_tan: f64 = 0.0;
        for i in 0..used.len() {
            for j in (i + 1)..used.len() {
                worst_inv_tan = worst_inv_tan.max(1.0 / (used[i] - used[j]).tan());
            }
        }
        let aspect =
            GROWTH_FREE_ASPECT_MARGIN * 2.0 * (1.0 + worst_inv_tan * worst_inv_tan).sqrt();
        let rect = StandardRect::new(length, length / aspect)?;
        let log_length = length.ln();
        levels.push(LevelConstruction {
            level: k,
            rect,
            angles: used.to_vec(),
            size_cap: length,
            log_length,
            log_height: log_length - aspect.ln(),
        });
        length = rect.height();
    }
    Ok(levels)
}
