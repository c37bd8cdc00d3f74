//! Lacunary angle sequences and slope-envelope validation.
//!
//! A sequence of angles decreasing to zero inside `(0, pi/2)` qualifies for
//! the rectangle construction once its slope ratios `tan(theta[j+1]) /
//! tan(theta[j])` settle into a fixed envelope `[low, high]` with
//! `0 < low < high < 1` and the window starts at a slope at most 1.
//! [`LacunarySequence::validate`] locates the earliest such window in a
//! finite prefix and reports every ratio it inspected, so a rejection names
//! the offending indices.

use crate::error::{Error, Result};
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;

/// How angles are produced.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum AngleGenerator {
    /// `theta0 * ratio^j` for `j = 0, 1, 2, ...`
    Geometric { theta0: f64, ratio: f64 },
    /// A finite, strictly decreasing list.
    Explicit(Vec<f64>),
}

/// An angle sequence together with its slope-ratio envelope.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LacunarySequence {
    generator: AngleGenerator,
    envelope_low: f64,
    envelope_high: f64,
}

impl LacunarySequence {
    pub fn geometric(theta0: f64, ratio: f64, envelope: (f64, f64)) -> Result<Self> {
        if !(theta0 > 0.0 && theta0 < FRAC_PI_2) {
            return Err(Error::AngleOutOfRange {
                angle: theta0,
                limit: FRAC_PI_2,
            });
        }
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::Config(format!(
                "geometric ratio must lie in (0, 1), got {ratio}"
            )));
        }
        check_envelope(envelope)?;
        Ok(LacunarySequence {
            generator: AngleGenerator::Geometric { theta0, ratio },
            envelope_low: envelope.0,
            envelope_high: envelope.1,
        })
    }

    pub fn explicit(angles: Vec<f64>, envelope: (f64, f64)) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::TooFew {
                what: "angles",
                needed: 1,
                got: 0,
            });
        }
        for &a in &angles {
            if !(a > 0.0 && a < FRAC_PI_2) {
                return Err(Error::AngleOutOfRange {
                    angle: a,
                    limit: FRAC_PI_2,
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
        check_envelope(envelope)?;
        Ok(LacunarySequence {
            generator: AngleGenerator::Explicit(angles),
            envelope_low: envelope.0,
            envelope_high: envelope.1,
        })
    }

    pub fn envelope(&self) -> (f64, f64) {
        (self.envelope_low, self.envelope_high)
    }

    /// The angle at index `j`; out of range only for explicit lists.
    pub fn angle(&self, j: usize) -> Result<f64> {
        match &self.generator {
            AngleGenerator::Geometric { theta0, ratio } => Ok(theta0 * ratio.powi(j as i32)),
            AngleGenerator::Explicit(angles) => {
                angles.get(j).copied().ok_or(Error::IndexOutOfRange {
                    index: j,
                    len: angles.len(),
                })
            }
        }
    }

    /// Longest prefix available for validation: `prefix` for geometric
    /// generators, capped by the list length for explicit ones.
    fn effective_prefix(&self, prefix: usize) -> usize {
        match &self.generator {
            AngleGenerator::Geometric { .. } => prefix,
            AngleGenerator::Explicit(angles) => prefix.min(angles.len()),
        }
    }

    /// Finds the earliest window start `j0` in the first `prefix` indices
    /// such that the slope at `j0` is at most 1 and every consecutive slope
    /// ratio from `j0` to the end of the prefix lies in the envelope.
    pub fn validate(&self, prefix: usize) -> Result<SlopeWindow> {
        let prefix = self.effective_prefix(prefix);
        if prefix < 2 {
            return Err(Error::TooFew {
                what: "prefix angles",
                needed: 2,
                got: prefix,
            });
        }
        let angles: Vec<f64> = (0..prefix)
            .map(|j| self.angle(j))
            .collect::<Result<_>>()?;
        let slopes: Vec<f64> = angles.iter().map(|a| a.tan()).collect();
        let ratios: Vec<f64> = slopes.windows(2).map(|w| w[1] / w[0]).collect();

        let in_envelope =
            |r: f64| r >= self.envelope_low && r <= self.envelope_high;
        // Last index at which a ratio violates the envelope; the window must
        // start strictly after it.
        let first_ok = ratios
            .iter()
            .rposition(|&r| !in_envelope(r))
            .map_or(0, |j| j + 1);
        let start = (first_ok..prefix - 1).find(|&j| slopes[j] <= 1.0);

        match start {
            Some(j0) => Ok(SlopeWindow {
                start: j0,
                angles: angles[j0..].to_vec(),
                slopes: slopes[j0..].to_vec(),
                ratios,
                envelope: (self.envelope_low, self.envelope_high),
            }),
            None => {
                let mut details: Vec<String> = ratios
                    .iter()
                    .enumerate()
                    .filter(|(_, &r)| !in_envelope(r))
                    .map(|(j, r)| {
                        format!(
                            "slope ratio m[{}]/m[{}] = {:.6} outside [{}, {}]",
                            j + 1,
                            j,
                            r,
                            self.envelope_low,
                            self.envelope_high
                        )
                    })
                    .collect();
                if details.is_empty() {
                    details.push(format!(
                        "no window start with slope <= 1 before index {}",
                        prefix - 1
                    ));
                }
                Err(Error::EnvelopeRejected {
                    prefix,
                    details: details.join("; "),
                })
            }
        }
    }
}

fn check_envelope((low, high): (f64, f64)) -> Result<()> {
    if !(0.0 < low && low < high && high < 1.0) {
        return Err(Error::BadEnvelope { low, high });
    }
    Ok(())
}

/// A validated window of the sequence: angles from the window start to the
/// end of the inspected prefix, their slopes, and every consecutive slope
/// ratio of the prefix (for diagnostics).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeWindow {
    /// Index of the first angle of the window in the original sequence.
    pub start: usize,
    /// Angles `theta[start..prefix]`.
    pub angles: Vec<f64>,
    /// Slopes `tan(theta[start..prefix])`.
    pub slopes: Vec<f64>,
    /// All consecutive slope ratios of the inspected prefix.
    pub ratios: Vec<f64>,
    /// The `[low, high]` envelope the window ratios satisfy.
    pub envelope: (f64, f64),
}

impl SlopeWindow {
    /// Number of angles available to the construction.
    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// Slope at the window start; at most 1 by construction.
    pub fn base_slope(&self) -> f64 {
        self.slopes[0]
    }
}
