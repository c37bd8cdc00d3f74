//! Exact planar geometry over `f64`.
//!
//! Conventions used throughout:
//! - polygons are convex, vertices in counterclockwise order, positive area;
//! - rectangles are axis parallel in their own frame, `[0, L] x [0, h]`,
//!   and get moved by a [`Placement`] (rotation about the origin followed
//!   by a translation);
//! - area computations are exact up to floating-point rounding, with
//!   Monte Carlo estimators available for cross-checks only;
//! - fuzzy comparisons use [`REL_TOL`] relative to the scale of the
//!   quantity being compared.

mod clip;
mod disk_area;
mod union;

pub use clip::intersection_area;
pub use disk_area::disk_polygon_area;
pub use union::{union_area, UnionMethod};

use crate::error::{Error, Result};
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::{Add, Mul, Sub};

/// Relative tolerance for geometric comparisons.
pub const REL_TOL: f64 = 1e-12;

/// A point (or vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    /// Counterclockwise rotation about the origin.
    pub fn rotate(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Point2 {
            x: c * self.x - s * self.y,
            y: s * self.x + c * self.y,
        }
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product `self x other`.
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, rhs: f64) -> Point2 {
        Point2::new(self.x * rhs, self.y * rhs)
    }
}

/// The rectangle `[0, L] x [0, h]` in its own frame.
///
/// `length` is the long side by convention, though only operations that
/// state an aspect requirement enforce one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StandardRect {
    length: f64,
    height: f64,
}

impl StandardRect {
    pub fn new(length: f64, height: f64) -> Result<Self> {
        if !(length.is_finite() && height.is_finite() && length > 0.0 && height > 0.0) {
            return Err(Error::BadRectangle { length, height });
        }
        Ok(StandardRect { length, height })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn area(&self) -> f64 {
        self.length * self.height
    }

    pub fn aspect(&self) -> f64 {
        self.length / self.height
    }

    pub fn diagonal(&self) -> f64 {
        self.length.hypot(self.height)
    }

    /// Corners in counterclockwise order starting at the origin.
    pub fn corners(&self) -> [Point2; 4] {
        [
            Point2::ORIGIN,
            Point2::new(self.length, 0.0),
            Point2::new(self.length, self.height),
            Point2::new(0.0, self.height),
        ]
    }

    /// Corners of the right half `[L/2, L] x [0, h]`.
    pub fn right_half_corners(&self) -> [Point2; 4] {
        let mid = 0.5 * self.length;
        [
            Point2::new(mid, 0.0),
            Point2::new(self.length, 0.0),
            Point2::new(self.length, self.height),
            Point2::new(mid, self.height),
        ]
    }
}

/// Rigid motion: counterclockwise rotation about the origin, then a
/// translation. Angles are normalized into `[0, 2*pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Placement {
    pub angle: f64,
    pub offset: Point2,
}

impl Placement {
    pub fn new(angle: f64, offset: Point2) -> Self {
        Placement {
            angle: angle.rem_euclid(2.0 * PI),
            offset,
        }
    }

    /// Pure rotation about the origin.
    pub fn rotation(angle: f64) -> Self {
        Placement::new(angle, Point2::ORIGIN)
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        p.rotate(self.angle) + self.offset
    }
}

/// Convex polygon with counterclockwise vertices and positive area.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexPolygon {
    verts: Vec<Point2>,
}

impl ConvexPolygon {
    /// Validates orientation and convexity (collinear vertices are allowed
    /// within [`REL_TOL`] of the polygon scale, reflex ones are not).
    pub fn new(verts: Vec<Point2>) -> Result<Self> {
        if verts.len() < 3 {
            return Err(Error::BadPolygon {
                reason: "fewer than three vertices",
            });
        }
        if verts.iter().any(|p| !(p.x.is_finite() && p.y.is_finite())) {
            return Err(Error::BadPolygon {
                reason: "non-finite vertex",
            });
        }
        let poly = ConvexPolygon { verts };
        let area2 = poly.signed_area2();
        if !(area2 > 0.0) {
            return Err(Error::BadPolygon {
                reason: "vertices not in counterclockwise order or zero area",
            });
        }
        let scale2 = poly.scale() * poly.scale();
        let n = poly.verts.len();
        for i in 0..n {
            let a = poly.verts[i];
            let b = poly.verts[(i + 1) % n];
            let c = poly.verts[(i + 2) % n];
            if (b - a).cross(c - b) < -REL_TOL * scale2 {
                return Err(Error::BadPolygon {
                    reason: "reflex vertex",
                });
            }
        }
        Ok(poly)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.verts
    }

    fn signed_area2(&self) -> f64 {
        let n = self.verts.len();
        let mut s = 0.0;
        for i in 0..n {
            s += self.verts[i].cross(self.verts[(i + 1) % n]);
        }
        s
    }

    pub fn area(&self) -> f64 {
        0.5 * self.signed_area2()
    }

    /// Characteristic length used to scale tolerances.
    pub fn scale(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        (hi.x - lo.x).max(hi.y - lo.y)
    }

    pub fn bounding_box(&self) -> (Point2, Point2) {
        let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.verts {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
        }
        (lo, hi)
    }

    /// Boundary-inclusive containment test at [`REL_TOL`] of the polygon
    /// scale.
    pub fn contains(&self, p: Point2) -> bool {
        let tol = REL_TOL * self.scale() * self.scale();
        let n = self.verts.len();
        for i in 0..n {
            let a = self.verts[i];
            let b = self.verts[(i + 1) % n];
            if (b - a).cross(p - a) < -tol {
                return false;
            }
        }
        true
    }
}

/// Closed disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Disk {
    pub center: Point2,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Point2, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::BadDisk { radius });
        }
        Ok(Disk { center, radius })
    }

    pub fn area(&self) -> f64 {
        PI * self.radius * self.radius
    }

    pub fn contains(&self, p: Point2) -> bool {
        (p - self.center).norm() <= self.radius * (1.0 + REL_TOL)
    }
}

/// Area value with the method that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AreaEstimate {
    pub value: f64,
    pub method: AreaMethod,
    /// One-sigma standard error; `None` for exact values.
    pub std_error: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AreaMethod {
    Exact,
    MonteCarlo,
}

/// Image of the rectangle under a placement.
pub fn place_rect(rect: &StandardRect, placement: &Placement) -> ConvexPolygon {
    place_corners(&rect.corners(), placement)
}

/// Image of the right half `[L/2, L] x [0, h]` under a placement.
pub fn place_half_rect(rect: &StandardRect, placement: &Placement) -> ConvexPolygon {
    place_corners(&rect.right_half_corners(), placement)
}

fn place_corners(corners: &[Point2; 4], placement: &Placement) -> ConvexPolygon {
    let verts = corners.iter().map(|&p| placement.apply(p)).collect();
    ConvexPolygon::new(verts).expect("placed rectangle stays convex")
}

/// Smallest slope gap that forces rotated right halves apart.
///
/// For a rectangle with `L > 2h`, two rotations of the right half about the
/// origin are disjoint whenever the tangent of the angle gap reaches
/// `1 / sqrt((L/h)^2 / 4 - 1)`; this returns that threshold.
pub fn disjointness_threshold(rect: &StandardRect) -> Result<f64> {
    let aspect = rect.aspect();
    if !(aspect > 2.0) {
        return Err(Error::AspectTooSmall { aspect });
    }
    Ok(1.0 / (0.25 * aspect * aspect - 1.0).sqrt())
}

/// Sufficient criterion for disjoint rotated right halves.
///
/// Requires `0 <= low < high < pi/2` and `L > 2h`. Returns `true` when
/// `tan(high - low)` reaches [`disjointness_threshold`]; the comparison
/// allows [`REL_TOL`] slack so that exact-tangency inputs (where the two
/// halves touch in a single point) count as disjoint. This direction only:
/// a `false` answer does not certify overlap.
pub fn rotated_halves_disjoint(rect: &StandardRect, low: f64, high: f64) -> Result<bool> {
    if !(low >= 0.0 && high > low) {
        return Err(Error::AngleOrder { low, high });
    }
    if !(high < FRAC_PI_2) {
        return Err(Error::AngleOutOfRange {
            angle: high,
            limit: FRAC_PI_2,
        });
    }
    let threshold = disjointness_threshold(rect)?;
    Ok((high - low).tan() >= threshold * (1.0 - REL_TOL))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn rotation_preserves_norm_and_orientation() {
        let p = Point2::new(3.0, -2.0);
        let q = p.rotate(1.234);
        assert!(close(p.norm(), q.norm(), 1e-15));
        assert!(close(p.rotate(FRAC_PI_2).x, 2.0, 1e-15));
        assert!(close(p.rotate(FRAC_PI_2).y, 3.0, 1e-15));
    }

    #[test]
    fn rect_constructor_rejects_degenerate_sides() {
        assert!(StandardRect::new(0.0, 1.0).is_err());
        assert!(StandardRect::new(4.0, -1.0).is_err());
        assert!(StandardRect::new(f64::NAN, 1.0).is_err());
        assert!(StandardRect::new(4.0, 1.0).is_ok());
    }

    #[test]
    fn placement_normalizes_angle() {
        let p = Placement::new(-FRAC_PI_2, Point2::ORIGIN);
        assert!(p.angle >= 0.0 && p.angle < 2.0 * PI);
        assert!(close(p.angle, 1.5 * PI, 1e-15));
    }

    #[test]
    fn placed_rect_preserves_area() {
        let rect = StandardRect::new(7.5, 0.3).unwrap();
        let placement = Placement::new(0.7, Point2::new(-4.0, 11.0));
        let poly = place_rect(&rect, &placement);
        assert!(close(poly.area(), rect.area(), 1e-13));
        let half = place_half_rect(&rect, &placement);
        assert!(close(half.area(), 0.5 * rect.area(), 1e-13));
    }

    #[test]
    fn polygon_validation_catches_bad_input() {
        let cw = vec![
            Point2::new(0.0, 0.0),
            Point2::new(0.0, 1.0),
            Point2::new(1.0, 1.0),
        ];
        assert!(ConvexPolygon::new(cw).is_err());
        let reflex = vec![
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(1.0, 0.5),
            Point2::new(2.0, 2.0),
            Point2::new(0.0, 2.0),
        ];
        assert!(ConvexPolygon::new(reflex).is_err());
    }

    #[test]
    fn contains_accepts_boundary() {
        let rect = StandardRect::new(4.0, 1.0).unwrap();
        let poly = place_rect(&rect, &Placement::rotation(0.0));
        assert!(poly.contains(Point2::new(0.0, 0.0)));
        assert!(poly.contains(Point2::new(4.0, 1.0)));
        assert!(poly.contains(Point2::new(2.0, 0.5)));
        assert!(!poly.contains(Point2::new(2.0, 1.1)));
    }

    #[test]
    fn threshold_matches_closed_forms() {
        let r41 = StandardRect::new(4.0, 1.0).unwrap();
        assert!(close(
            disjointness_threshold(&r41).unwrap(),
            1.0 / 3f64.sqrt(),
            1e-15
        ));
        let r2sqrt2 = StandardRect::new(2.0 * 2f64.sqrt(), 1.0).unwrap();
        assert!(close(disjointness_threshold(&r2sqrt2).unwrap(), 1.0, 1e-15));
        let square = StandardRect::new(2.0, 1.0).unwrap();
        assert!(matches!(
            disjointness_threshold(&square),
            Err(Error::AspectTooSmall { .. })
        ));
    }

    #[test]
    fn disjointness_predicate_examples() {
        let rect = StandardRect::new(4.0, 1.0).unwrap();
        // Exact tangency: tan(pi/6) equals the threshold 1/sqrt(3) up to one
        // ulp, which the tolerance absorbs.
        assert!(rotated_halves_disjoint(&rect, 0.0, PI / 6.0).unwrap());
        assert!(rotated_halves_disjoint(&rect, 0.2, 0.2 + PI / 6.0).unwrap());
        assert!(!rotated_halves_disjoint(&rect, 0.0, 0.5 * PI / 6.0).unwrap());
        assert!(rotated_halves_disjoint(&rect, 0.5, 0.2).is_err());
        assert!(rotated_halves_disjoint(&rect, 0.0, 1.6).is_err());
    }
}
