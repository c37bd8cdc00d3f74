//! Geometry and certification engine behind the `dirmax` workbench.
//!
//! The crate builds nested families of long thin rectangles whose rotated
//! copies (through a lacunary set of angles) have pairwise disjoint right
//! halves, then certifies quantitative lower bounds for the associated
//! maximal averaging operator: union-area growth, certified level sets,
//! Orlicz-integral comparisons and divergence of weak-type ratios.
//!
//! Layout:
//! - [`geometry`]: exact planar primitives (convex clipping, unions, disk
//!   areas, the half-rectangle disjointness criterion)
//! - [`lacunary`]: angle sequences and slope-envelope validation
//! - [`construction`]: per-level rectangle dimensions and witness sets
//! - [`maximal`]: maximal-operator lower bounds, Orlicz functionals
//! - [`checks`]: the verification suites, one per certified statement
//! - [`report`]: campaign configuration, JSON/CSV reports
//! - [`figures`]: deterministic SVG output
//!
//! Every verified inequality is scale invariant, so suites evaluate each
//! level in a normalized frame (rectangle length scaled to 1) and stay
//! well conditioned even when absolute dimensions shrink below 1e-200.

pub mod checks;
pub mod construction;
pub mod error;
pub mod figures;
pub mod geometry;
pub mod lacunary;
pub mod maximal;
pub mod report;

pub use error::{Error, Result};
