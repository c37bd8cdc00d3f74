//! Exact disk / convex-polygon intersection area.
//!
//! Walks the polygon boundary once; each directed edge contributes either a
//! circular sector (for the part outside the disk) or a triangle (for the
//! chord part inside), both signed from the disk center. The signed pieces
//! telescope to the intersection area for any relative position of disk and
//! polygon, including full containment either way.

use super::{ConvexPolygon, Disk, Point2};

/// Area of `disk` intersected with `poly`, exact to rounding.
pub fn disk_polygon_area(disk: &Disk, poly: &ConvexPolygon) -> f64 {
    let r = disk.radius;
    let (lo, hi) = poly.bounding_box();
    // Disk strictly outside the bounding box.
    let dx = (lo.x - disk.center.x).max(disk.center.x - hi.x).max(0.0);
    let dy = (lo.y - disk.center.y).max(disk.center.y - hi.y).max(0.0);
    if dx.hypot(dy) >= r {
        return 0.0;
    }
    let shifted: Vec<Point2> = poly
        .vertices()
        .iter()
        .map(|&v| v - disk.center)
        .collect();
    // Convexity: all vertices inside the disk means the polygon is.
    if shifted.iter().all(|v| v.norm() <= r) {
        return poly.area();
    }
    boundary_sum(&shifted, r).max(0.0)
}

/// Core accumulation with the disk centered at the origin.
pub(crate) fn boundary_sum(verts: &[Point2], r: f64) -> f64 {
    let n = verts.len();
    let mut total = 0.0;
    for i in 0..n {
        total += edge_contribution(verts[i], verts[(i + 1) % n], r);
    }
    total
}

fn edge_contribution(p1: Point2, p2: Point2, r: f64) -> f64 {
    let d = p2 - p1;
    let a = d.dot(d);
    if a == 0.0 {
        return 0.0;
    }
    let b = p1.dot(d);
    let c = p1.dot(p1) - r * r;
    let disc = b * b - a * c;
    if disc <= 0.0 {
        // The edge's line misses the disk interior: pure sector.
        return sector(p1, p2, r);
    }
    let sq = disc.sqrt();
    let t0 = (-b - sq) / a;
    let t1 = (-b + sq) / a;
    if t1 <= 0.0 || t0 >= 1.0 {
        return sector(p1, p2, r);
    }
    let t0c = t0.max(0.0);
    let t1c = t1.min(1.0);
    let q0 = p1 + d * t0c;
    let q1 = p1 + d * t1c;
    let mut s = 0.5 * q0.cross(q1);
    if t0 > 0.0 {
        s += sector(p1, q0, r);
    }
    if t1 < 1.0 {
        s += sector(q1, p2, r);
    }
    s
}

/// Signed circular sector swept from direction `a` to direction `b` the
/// short way round. A straight edge subtends strictly less than pi from
/// any center, so the short way is always the right one.
fn sector(a: Point2, b: Point2, r: f64) -> f64 {
    0.5 * r * r * a.cross(b).atan2(a.dot(b))
}

#[cfg(test)]
mod tests {
    use super::super::{place_rect, Placement, StandardRect};
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
    }

    fn square(side: f64, corner: Point2) -> ConvexPolygon {
        let rect = StandardRect::new(side, side).unwrap();
        place_rect(&rect, &Placement::new(0.0, corner))
    }

    #[test]
    fn disk_inside_polygon_gives_full_disk() {
        let poly = square(10.0, Point2::new(-5.0, -5.0));
        let disk = Disk::new(Point2::new(0.5, -0.25), 1.5).unwrap();
        assert!(close(disk_polygon_area(&disk, &poly), disk.area(), 1e-14));
    }

    #[test]
    fn polygon_inside_disk_gives_polygon_area() {
        let poly = square(1.0, Point2::new(-0.5, -0.5));
        let disk = Disk::new(Point2::ORIGIN, 4.0).unwrap();
        assert!(close(disk_polygon_area(&disk, &poly), 1.0, 1e-14));
    }

    #[test]
    fn disjoint_disk_gives_zero() {
        let poly = square(1.0, Point2::ORIGIN);
        let disk = Disk::new(Point2::new(5.0, 5.0), 1.0).unwrap();
        assert_eq!(disk_polygon_area(&disk, &poly), 0.0);
        // Tangent from outside.
        let tangent = Disk::new(Point2::new(-1.0, 0.5), 1.0).unwrap();
        assert!(disk_polygon_area(&tangent, &poly).abs() <= 1e-14);
    }

    #[test]
    fn quarter_disk_at_rectangle_corner() {
        // Disk centered at the origin corner with radius equal to the
        // height: the intersection is exactly a quarter disk, for any
        // rotation about that corner.
        let rect = StandardRect::new(4.0, 1.0).unwrap();
        for angle in [0.0, 0.2, 0.7, 1.3] {
            let poly = place_rect(&rect, &Placement::rotation(angle));
            let disk = Disk::new(Point2::ORIGIN, 1.0).unwrap();
            let got = disk_polygon_area(&disk, &poly);
            assert!(
                close(got, 0.25 * PI, 1e-13),
                "angle={angle} got={got}"
            );
        }
    }

    #[test]
    fn half_disk_on_long_edge() {
        let poly = square(20.0, Point2::new(-10.0, 0.0));
        let disk = Disk::new(Point2::ORIGIN, 2.0).unwrap();
        assert!(close(disk_polygon_area(&disk, &poly), 2.0 * PI, 1e-13));
    }

    #[test]
    fn lens_through_thin_rectangle() {
        // Disk of radius h centered on the midline of a height-h strip:
        // area 2*(h^2)*(asin(1/2) + ...) computed in closed form below.
        let h = 0.8;
        let rect = StandardRect::new(50.0, h).unwrap();
        let poly = place_rect(&rect, &Placement::new(0.0, Point2::new(-25.0, 0.0)));
        let disk = Disk::new(Point2::new(0.0, 0.5 * h), h).unwrap();
        // Integral of the chord of radius-h disk over |y| <= h/2.
        let half = 0.5 * h;
        let expected = 2.0 * (half * (h * h - half * half).sqrt() + h * h * (half / h).asin());
        assert!(close(disk_polygon_area(&disk, &poly), expected, 1e-13));
    }

    #[test]
    fn rotation_about_disk_center_is_invariant() {
        let rect = StandardRect::new(3.0, 0.4).unwrap();
        let disk = Disk::new(Point2::ORIGIN, 0.9).unwrap();
        let base = disk_polygon_area(
            &disk,
            &place_rect(&rect, &Placement::new(0.0, Point2::new(-0.7, -0.2))),
        );
        for angle in [0.3, FRAC_PI_2, 2.1] {
            let offset = Point2::new(-0.7, -0.2).rotate(angle);
            let got = disk_polygon_area(&disk, &place_rect(&rect, &Placement::new(angle, offset)));
            assert!(close(got, base, 1e-12), "angle={angle} {got} vs {base}");
        }
    }
}
