//! Union areas of convex polygon families.
//!
//! The exact path decomposes the plane into vertical strips whose
//! boundaries are all vertex abscissas plus all pairwise edge-crossing
//! abscissas. Inside one strip every polygon contributes a y-interval with
//! linear endpoints and a fixed overlap structure, so the union length is
//! linear in x and the strip integral equals width times the length at the
//! strip midpoint. Up to three polygons are instead handled by
//! inclusion-exclusion over clipped intersections; the two paths agree to
//! rounding and cross-validate each other in tests.

use super::clip::{clip_halfplane, shoelace};
use super::{AreaEstimate, AreaMethod, ConvexPolygon, Point2};
use crate::error::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// How to compute a union area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UnionMethod {
    Exact,
    MonteCarlo { samples: u64, seed: u64 },
}

/// Area of the union of convex polygons.
///
/// The input must be nonempty. `Exact` is deterministic and exact to
/// rounding; `MonteCarlo` samples the joint bounding box with a seeded
/// ChaCha stream and reports a one-sigma standard error.
pub fn union_area(polys: &[ConvexPolygon], method: UnionMethod) -> Result<AreaEstimate> {
    if polys.is_empty() {
        return Err(Error::TooFew {
            what: "polygons",
            needed: 1,
            got: 0,
        });
    }
    match method {
        UnionMethod::Exact => Ok(AreaEstimate {
            value: exact_union(polys),
            method: AreaMethod::Exact,
            std_error: None,
        }),
        UnionMethod::MonteCarlo { samples, seed } => Ok(monte_carlo_union(polys, samples, seed)),
    }
}

fn exact_union(polys: &[ConvexPolygon]) -> f64 {
    if polys.len() <= 3 {
        return inclusion_exclusion(polys);
    }
    sweep_union(polys)
}

/// Direct inclusion-exclusion; intersections of convex sets stay convex,
/// so every term is one clipping chain.
fn inclusion_exclusion(polys: &[ConvexPolygon]) -> f64 {
    let n = polys.len();
    let mut total = 0.0;
    // Subsets of {0..n}, n <= 3, sign (-1)^(|S|+1).
    for mask in 1u32..(1 << n) {
        let mut chain: Option<Vec<Point2>> = None;
        for (i, poly) in polys.iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            chain = Some(match chain {
                None => poly.vertices().to_vec(),
                Some(c) => clip_chain(c, poly),
            });
        }
        let area = shoelace(chain.as_deref().unwrap_or(&[])).max(0.0);
        if mask.count_ones() % 2 == 1 {
            total += area;
        } else {
            total -= area;
        }
    }
    total.max(0.0)
}

fn clip_chain(mut chain: Vec<Point2>, by: &ConvexPolygon) -> Vec<Point2> {
    let verts = by.vertices();
    let n = verts.len();
    for i in 0..n {
        if chain.len() < 3 {
            chain.clear();
            return chain;
        }
        chain = clip_halfplane(&chain, verts[i], verts[(i + 1) % n]);
    }
    chain
}

fn sweep_union(polys: &[ConvexPolygon]) -> f64 {
    let mut xs: Vec<f64> = Vec::new();
    for poly in polys {
        for v in poly.vertices() {
            xs.push(v.x);
        }
    }
    for i in 0..polys.len() {
        for j in (i + 1)..polys.len() {
            edge_crossing_xs(polys[i].vertices(), polys[j].vertices(), &mut xs);
        }
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup();

    let mut total = 0.0;
    let mut spans: Vec<(f64, f64)> = Vec::with_capacity(polys.len());
    for w in xs.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        let width = x1 - x0;
        if !(width > 0.0) {
            continue;
        }
        let xm = 0.5 * (x0 + x1);
        spans.clear();
        for poly in polys {
            if let Some(span) = y_span_at(poly, xm) {
                spans.push(span);
            }
        }
        total += width * merged_length(&mut spans);
    }
    total
}

fn edge_crossing_xs(a: &[Point2], b: &[Point2], xs: &mut Vec<f64>) {
    let na = a.len();
    let nb = b.len();
    for i in 0..na {
        let (p, q) = (a[i], a[(i + 1) % na]);
        let d1 = q - p;
        for j in 0..nb {
            let (r, s) = (b[j], b[(j + 1) % nb]);
            let d2 = s - r;
            let denom = d1.cross(d2);
            if denom == 0.0 {
                continue;
            }
            let t = (r - p).cross(d2) / denom;
            let u = (r - p).cross(d1) / denom;
            if (0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u) {
                xs.push(p.x + t * d1.x);
            }
        }
    }
}

/// Vertical extent of the polygon at abscissa `x`, which must be strictly
/// between two breakpoints so no vertical edge sits exactly at `x`.
fn y_span_at(poly: &ConvexPolygon, x: f64) -> Option<(f64, f64)> {
    let verts = poly.vertices();
    let n = verts.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let a = verts[i];
        let b = verts[(i + 1) % n];
        if (a.x - x) * (b.x - x) <= 0.0 && a.x != b.x {
            let y = a.y + (x - a.x) * (b.y - a.y) / (b.x - a.x);
            lo = lo.min(y);
            hi = hi.max(y);
        }
    }
    (lo <= hi).then_some((lo, hi))
}

fn merged_length(spans: &mut [(f64, f64)]) -> f64 {
    spans.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut total = 0.0;
    let mut current: Option<(f64, f64)> = None;
    for &(lo, hi) in spans.iter() {
        match current {
            None => current = Some((lo, hi)),
            Some((clo, chi)) => {
                if lo <= chi {
                    current = Some((clo, chi.max(hi)));
                } else {
                    total += chi - clo;
                    current = Some((lo, hi));
                }
            }
        }
    }
    if let Some((clo, chi)) = current {
        total += chi - clo;
    }
    total
}

fn monte_carlo_union(polys: &[ConvexPolygon], samples: u64, seed: u64) -> AreaEstimate {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for poly in polys {
        let (plo, phi) = poly.bounding_box();
        lo.x = lo.x.min(plo.x);
        lo.y = lo.y.min(plo.y);
        hi.x = hi.x.max(phi.x);
        hi.y = hi.y.max(phi.y);
    }
    let box_area = (hi.x - lo.x) * (hi.y - lo.y);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits: u64 = 0;
    for _ in 0..samples {
        let p = Point2::new(
            rng.random_range(lo.x..hi.x),
            rng.random_range(lo.y..hi.y),
        );
        if polys.iter().any(|poly| poly.contains(p)) {
            hits += 1;
        }
    }
    let p_hat = hits as f64 / samples as f64;
    AreaEstimate {
        value: box_area * p_hat,
        method: AreaMethod::MonteCarlo,
        std_error: Some(box_area * (p_hat * (1.0 - p_hat) / samples as f64).sqrt()),
    }
}
