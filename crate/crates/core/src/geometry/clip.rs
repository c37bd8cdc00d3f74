//! Convex-convex intersection via half-plane clipping.

use super::{ConvexPolygon, Point2};

/// Exact area of the intersection of two convex polygons.
///
/// Clips `b` against every edge of `a` (Sutherland-Hodgman) and applies the
/// shoelace formula to whatever survives. Degenerate slivers produced by
/// touching boundaries come out with area on the order of the rounding
/// error, never negative.
pub fn intersection_area(a: &ConvexPolygon, b: &ConvexPolygon) -> f64 {
    let mut chain: Vec<Point2> = b.vertices().to_vec();
    let verts = a.vertices();
    let n = verts.len();
    for i in 0..n {
        if chain.len() < 3 {
            return 0.0;
        }
        chain = clip_halfplane(&chain, verts[i], verts[(i + 1) % n]);
    }
    shoelace(&chain).max(0.0)
}

/// Keeps the part of `subject` on the left of the directed line `a -> b`.
pub(super) fn clip_halfplane(subject: &[Point2], a: Point2, b: Point2) -> Vec<Point2> {
    let dir = b - a;
    let mut out = Vec::with_capacity(subject.len() + 1);
    let n = subject.len();
    for i in 0..n {
        let s = subject[i];
        let e = subject[(i + 1) % n];
        let s_in = dir.cross(s - a) >= 0.0;
        let e_in = dir.cross(e - a) >= 0.0;
        match (s_in, e_in) {
            (true, true) => out.push(e),
            (true, false) => out.push(line_intersection(a, dir, s, e)),
            (false, true) => {
                out.push(line_intersection(a, dir, s, e));
                out.push(e);
            }
            (false, false) => {}
        }
    }
    out
}

fn line_intersection(a: Point2, dir: Point2, s: Point2, e: Point2) -> Point2 {
    let denom = dir.cross(e - s);
    if denom.abs() < 1e-300 {
        return s;
    }
    let t = dir.cross(a - s) / denom;
    s + (e - s) * t
}

pub(super) fn shoelace(verts: &[Point2]) -> f64 {
    if verts.len() < 3 {
        return 0.0;
    }
    let n = verts.len();
    let mut s = 0.0;
    for i in 0..n {
        s += verts[i].cross(verts[(i + 1) % n]);
    }
    0.5 * s
}
