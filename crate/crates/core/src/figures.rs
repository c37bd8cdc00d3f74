//! Deterministic SVG illustrations of the construction. Coordinates are
//! emitted with fixed precision so repeated runs produce identical bytes.

use crate::construction::LevelConstruction;
use crate::geometry::{place_half_rect, place_rect, Placement, Point2};
use std::fmt::Write as _;

const SCALE: f64 = 600.0;
const MARGIN: f64 = 12.0;

fn fmt(v: f64) -> String {
    // Avoid the signed zero so mirrored coordinates stay stable.
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.4}")
}

/// Maps a point to screen coordinates: scaled, with the y axis flipped.
fn screen(p: Point2) -> (f64, f64) {
    (SCALE * p.x, -SCALE * p.y)
}

fn polygon_path(points: &[Point2]) -> String {
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        let (x, y) = screen(*p);
        let _ = write!(d, "{} {} {}", if i == 0 { "M" } else { " L" }, fmt(x), fmt(y));
    }
    d.push_str(" Z");
    d
}

fn circle_path(center: Point2, radius: f64) -> String {
    let (cx, cy) = screen(center);
    let r = SCALE * radius;
    format!(
        "M {} {} A {} {} 0 1 1 {} {} A {} {} 0 1 1 {} {} Z",
        fmt(cx + r),
        fmt(cy),
        fmt(r),
        fmt(r),
        fmt(cx - r),
        fmt(cy),
        fmt(r),
        fmt(r),
        fmt(cx + r),
        fmt(cy)
    )
}

/// Circular sector spanning a quarter turn from `start_angle`.
fn quarter_sector_path(center: Point2, radius: f64, start_angle: f64) -> String {
    let p0 = center + Point2::new(start_angle.cos(), start_angle.sin()) * radius;
    let end = start_angle + std::f64::consts::FRAC_PI_2;
    let p1 = center + Point2::new(end.cos(), end.sin()) * radius;
    let (cx, cy) = screen(center);
    let (x0, y0) = screen(p0);
    let (x1, y1) = screen(p1);
    let r = SCALE * radius;
    format!(
        "M {} {} L {} {} A {} {} 0 0 1 {} {} Z",
        fmt(cx),
        fmt(cy),
        fmt(x0),
        fmt(y0),
        fmt(r),
        fmt(r),
        fmt(x1),
        fmt(y1)
    )
}

struct Figure {
    paths: Vec<String>,
    min: (f64, f64),
    max: (f64, f64),
}

impl Figure {
    fn new() -> Self {
        Figure {
            paths: Vec::new(),
            min: (f64::INFINITY, f64::INFINITY),
            max: (f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    fn cover(&mut self, points: impl IntoIterator<Item = Point2>) {
        for p in points {
            let (x, y) = screen(p);
            self.min.0 = self.min.0.min(x);
            self.min.1 = self.min.1.min(y);
            self.max.0 = self.max.0.max(x);
            self.max.1 = self.max.1.max(y);
        }
    }

    fn path(&mut self, id: &str, d: &str, style: &str) {
        self.paths
            .push(format!("  <path id=\"{id}\" d=\"{d}\" {style}/>"));
    }

    fn render(&self) -> String {
        let x = self.min.0 - MARGIN;
        let y = self.min.1 - MARGIN;
        let w = self.max.0 - self.min.0 + 2.0 * MARGIN;
        let h = self.max.1 - self.min.1 + 2.0 * MARGIN;
        let mut svg = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
            fmt(x),
            fmt(y),
            fmt(w),
            fmt(h)
        );
        for p in &self.paths {
            svg.push_str(p);
            svg.push('\n');
        }
        svg.push_str("</svg>\n");
        svg
    }
}

const OUTLINE_A: &str = "fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"";
const FILL_A: &str = "fill=\"#1f77b4\" fill-opacity=\"0.25\" stroke=\"none\"";
const OUTLINE_B: &str = "fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\"";
const FILL_B: &str = "fill=\"#d62728\" fill-opacity=\"0.25\" stroke=\"none\"";
const OUTLINE_C: &str = "fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"1.5\"";
const FILL_C: &str = "fill=\"#2ca02c\" fill-opacity=\"0.45\" stroke=\"none\"";

/// The rectangle with its right half, next to the copy rotated by the
/// level's first angle with its right half.
pub fn rectangle_halves_svg(level: &LevelConstruction) -> String {
    let rect = level.normalized_rect();
    let angle = level.angles[0];
    let flat = Placement::rotation(0.0);
    let turned = Placement::rotation(angle);

    let mut fig = Figure::new();
    let outline = place_rect(&rect, &flat);
    let half = place_half_rect(&rect, &flat);
    let outline_turned = place_rect(&rect, &turned);
    let half_turned = place_half_rect(&rect, &turned);
    fig.cover(outline.vertices().iter().copied());
    fig.cover(outline_turned.vertices().iter().copied());

    fig.path("rect", &polygon_path(outline.vertices()), OUTLINE_A);
    fig.path("rect-right-half", &polygon_path(half.vertices()), FILL_A);
    fig.path(
        "rotated-rect",
        &polygon_path(outline_turned.vertices()),
        OUTLINE_B,
    );
    fig.path(
        "rotated-right-half",
        &polygon_path(half_turned.vertices()),
        FILL_B,
    );
    fig.render()
}

/// The level's disk, one rotated rectangle, and their shaded overlap,
/// which is exactly a quarter disk.
pub fn disk_overlap_svg(level: &LevelConstruction) -> String {
    let rect = level.normalized_rect();
    let disk = level.normalized_disk();
    let angle = level.angles[0];
    let turned = place_rect(&rect, &Placement::rotation(angle));

    let mut fig = Figure::new();
    fig.cover(turned.vertices().iter().copied());
    fig.cover([
        disk.center + Point2::new(disk.radius, disk.radius),
        disk.center - Point2::new(disk.radius, disk.radius),
    ]);

    fig.path("disk", &circle_path(disk.center, disk.radius), OUTLINE_C);
    fig.path("rotated-rect", &polygon_path(turned.vertices()), OUTLINE_B);
    fig.path(
        "quarter-overlap",
        &quarter_sector_path(disk.center, disk.radius, angle),
        FILL_C,
    );
    fig.render()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build_nested_family, EnvelopeConstants};
    use crate::lacunary::LacunarySequence;

    fn sample_level() -> LevelConstruction {
        let window = LacunarySequence::geometric(0.5, 0.6, (0.5, 0.8))
            .unwrap()
            .validate(10)
            .unwrap();
        let consts = EnvelopeConstants::from_window(&window).unwrap();
        let family = build_nested_family(2, &window, &consts).unwrap();
        family.levels[1].clone()
    }

    #[test]
    fn halves_figure_contains_all_four_shapes() {
        let svg = rectangle_halves_svg(&sample_level());
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        for id in [
            "id=\"rect\"",
            "id=\"rect-right-half\"",
            "id=\"rotated-rect\"",
            "id=\"rotated-right-half\"",
        ] {
            assert!(svg.contains(id), "missing {id}");
        }
        assert_eq!(svg.matches("<path").count(), 4);
    }

    #[test]
    fn overlap_figure_contains_disk_rect_and_sector() {
        let svg = disk_overlap_svg(&sample_level());
        for id in ["id=\"disk\"", "id=\"rotated-rect\"", "id=\"quarter-overlap\""] {
            assert!(svg.contains(id), "missing {id}");
        }
        assert_eq!(svg.matches("<path").count(), 3);
    }

    #[test]
    fn figures_are_byte_stable() {
        let level = sample_level();
        assert_eq!(rectangle_halves_svg(&level), rectangle_halves_svg(&level));
        assert_eq!(disk_overlap_svg(&level), disk_overlap_svg(&level));
        assert!(!rectangle_halves_svg(&level).contains("NaN"));
    }
}
