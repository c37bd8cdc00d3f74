//! Cross-checks of the exact geometry against independent reference
//! computations: inclusion-exclusion identities, crossing-number Monte
//! Carlo, and rigorous polygonal bracketing of disk overlap areas.

use dirmax_core::geometry::{
    disk_polygon_area, intersection_area, place_rect, union_area, ConvexPolygon, Disk, Placement,
    Point2, StandardRect, UnionMethod,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn random_rect_poly(rng: &mut ChaCha8Rng) -> ConvexPolygon {
    let length: f64 = rng.random_range(0.4..2.0);
    let height = rng.random_range(0.05..length.min(1.0) * 0.999);
    let rect = StandardRect::new(length, height).unwrap();
    let angle = rng.random_range(0.0..2.0 * PI);
    let offset = Point2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    place_rect(&rect, &Placement::new(angle, offset))
}

fn bounding_box(polys: &[ConvexPolygon]) -> (Point2, Point2) {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for poly in polys {
        let (l, h) = poly.bounding_box();
        lo.x = lo.x.min(l.x);
        lo.y = lo.y.min(l.y);
        hi.x = hi.x.max(h.x);
        hi.y = hi.y.max(h.y);
    }
    (lo, hi)
}

/// Reference union area by sampling the joint bounding box.
fn crossing_union(polys: &[ConvexPolygon], samples: u64, rng: &mut ChaCha8Rng) -> (f64, f64) {
    let (lo, hi) = bounding_box(polys);
    let box_area = (hi.x - lo.x) * (hi.y - lo.y);
    let mut hits = 0u64;
    for _ in 0..samples {
        let p = Point2::new(
            rng.random_range(lo.x..hi.x),
            rng.random_range(lo.y..hi.y),
        );
        if polys.iter().any(|poly| poly.contains(p)) {
            hits += 1;
        }
    }
    let rate = hits as f64 / samples as f64;
    let sigma = box_area * (rate * (1.0 - rate) / samples as f64).sqrt();
    (box_area * rate, sigma)
}

#[test]
fn union_of_two_matches_inclusion_exclusion_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let a = random_rect_poly(&mut rng);
        let b = random_rect_poly(&mut rng);
        let direct = a.area() + b.area() - intersection_area(&a, &b);
        let swept = union_area(&[a, b], UnionMethod::Exact).unwrap().value;
        let tol = 1e-12 * direct.max(1.0);
        assert!(
            (swept - direct).abs() <= tol,
            "sweep {swept} vs inclusion-exclusion {direct}"
        );
    }
}

#[test]
fn union_sweep_agrees_with_crossing_number_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for round in 0..5 {
        let count = 2 + round;
        let polys: Vec<ConvexPolygon> = (0..count).map(|_| random_rect_poly(&mut rng)).collect();
        let exact = union_area(&polys, UnionMethod::Exact).unwrap().value;
        let (estimate, sigma) = crossing_union(&polys, 400_000, &mut rng);
        assert!(
            (exact - estimate).abs() <= 4.0 * sigma,
            "round {round}: exact {exact}, sampled {estimate} with sigma {sigma}"
        );
    }
}

#[test]
fn union_internal_monte_carlo_brackets_the_exact_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for seed in 0..5u64 {
        let polys: Vec<ConvexPolygon> = (0..4).map(|_| random_rect_poly(&mut rng)).collect();
        let exact = union_area(&polys, UnionMethod::Exact).unwrap().value;
        let mc = union_area(
            &polys,
            UnionMethod::MonteCarlo {
                samples: 200_000,
                seed,
            },
        )
        .unwrap();
        let sigma = mc.std_error.expect("sampling reports its sigma");
        assert!((exact - mc.value).abs() <= 4.0 * sigma);
    }
}

fn regular_ngon(center: Point2, radius: f64, sides: usize) -> ConvexPolygon {
    let verts: Vec<Point2> = (0..sides)
        .map(|i| {
            let angle = 2.0 * PI * i as f64 / sides as f64;
            center + Point2::new(angle.cos(), angle.sin()) * radius
        })
        .collect();
    ConvexPolygon::new(verts).unwrap()
}

/// The disk sits between its inscribed and circumscribed regular n-gons,
/// so clipping those against the polygon brackets the true overlap with
/// no tolerance assumptions beyond the clip itself.
#[test]
fn disk_overlap_is_bracketed_by_polygonal_clips() {
    let sides = 1024;
    let spread = 1.0 / (PI / sides as f64).cos();
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let mut nontrivial = 0;
    for case in 0..20 {
        let poly = random_rect_poly(&mut rng);
        let radius = rng.random_range(0.05..0.8);
        let (lo, hi) = poly.bounding_box();
        let center = Point2::new(
            rng.random_range(lo.x - radius..hi.x + radius),
            rng.random_range(lo.y - radius..hi.y + radius),
        );
        let disk = Disk::new(center, radius).unwrap();

        let inner = intersection_area(&regular_ngon(center, radius, sides), &poly);
        let outer = intersection_area(&regular_ngon(center, radius * spread, sides), &poly);
        let exact = disk_polygon_area(&disk, &poly);

        let slop = 1e-12 * (radius * radius).max(poly.area());
        assert!(
            inner - slop <= exact && exact <= outer + slop,
            "case {case}: {exact} outside [{inner}, {outer}]"
        );
        assert!(
            outer - inner <= 1e-3 * (PI * radius * radius).max(slop),
            "bracket unexpectedly loose: [{inner}, {outer}]"
        );
        if exact > 0.0 {
            nontrivial += 1;
        }
    }
    assert!(nontrivial >= 8, "only {nontrivial} cases overlapped");
}

#[test]
fn disk_overlap_degenerates_to_closed_forms() {
    let poly = place_rect(
        &StandardRect::new(4.0, 2.0).unwrap(),
        &Placement::new(0.0, Point2::new(-2.0, -1.0)),
    );

    let inside = Disk::new(Point2::ORIGIN, 0.5).unwrap();
    let full = disk_polygon_area(&inside, &poly);
    assert!((full - PI * 0.25).abs() <= 1e-12);

    let around = Disk::new(Point2::ORIGIN, 10.0).unwrap();
    assert!((disk_polygon_area(&around, &poly) - poly.area()).abs() <= 1e-12);

    let away = Disk::new(Point2::new(50.0, 0.0), 1.0).unwrap();
    assert_eq!(disk_polygon_area(&away, &poly), 0.0);
}

#[test]
fn quarter_disk_identity_holds_for_long_rectangles_at_any_angle() {
    let rect = StandardRect::new(1.0, 0.05).unwrap();
    let disk = Disk::new(Point2::ORIGIN, 0.04).unwrap();
    let quarter = PI * 0.04 * 0.04 / 4.0;
    for i in 0..24 {
        let angle = i as f64 * PI / 48.0;
        let poly = place_rect(&rect, &Placement::rotation(angle));
        let overlap = disk_polygon_area(&disk, &poly);
        assert!(
            (overlap - quarter).abs() <= 1e-12 * quarter.max(1e-9),
            "angle {angle}: {overlap} vs {quarter}"
        );
    }
}
