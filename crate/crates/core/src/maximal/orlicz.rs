//! Convex gauge functions and their closed-form integrals against scaled
//! disk indicators.
//!
//! A gauge here is convex, nondecreasing, and vanishes at 0. The built-in
//! kinds are powers `t^p`, the log-weighted family `t (1 + log+ t)^g`,
//! and piecewise-linear tables. Because every test function is constant
//! on a disk, integrating a gauge of it needs no quadrature: the integral
//! is the support area times the gauge at the constant.

use super::{DiskIndicator, LevelSetEstimate};
use crate::construction::{EnvelopeConstants, LEVEL_CAP};
use crate::error::{Error, Result};
use serde::Serialize;
use std::str::FromStr;

/// Points used to vet table gauges for monotonicity and convexity.
const TABLE_VALIDATION_GRID: usize = 256;

/// Table validation samples this multiple of the last knot.
const TABLE_VALIDATION_SPAN: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrliczFunction {
    /// `t^p` with `p >= 1`.
    Power { exponent: f64 },
    /// `t * (1 + log+ t)^g` with `g >= 0`.
    LogLike { gamma: f64 },
    /// Piecewise-linear interpolation of `(t, value)` knots starting at
    /// `(0, 0)`; beyond the last knot the final slope continues.
    Table { knots: Vec<(f64, f64)> },
}

impl OrliczFunction {
    pub fn power(exponent: f64) -> Result<Self> {
        if !(exponent.is_finite() && exponent >= 1.0) {
            return Err(Error::BadOrlicz(format!(
                "power exponent must be >= 1, got {exponent}"
            )));
        }
        Ok(OrliczFunction::Power { exponent })
    }

    pub fn log_like(gamma: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma >= 0.0) {
            return Err(Error::BadOrlicz(format!(
                "log exponent must be >= 0, got {gamma}"
            )));
        }
        Ok(OrliczFunction::LogLike { gamma })
    }

    /// The `L log L` gauge `t (1 + log+ t)`.
    pub fn l_log_l() -> Self {
        OrliczFunction::LogLike { gamma: 1.0 }
    }

    pub fn table(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::BadOrlicz(format!(
                "a table gauge needs at least 2 knots, got {}",
                knots.len()
            )));
        }
        if knots[0] != (0.0, 0.0) {
            return Err(Error::BadOrlicz(format!(
                "a table gauge must start at (0, 0), got {:?}",
                knots[0]
            )));
        }
        for pair in knots.windows(2) {
            let ((t0, v0), (t1, v1)) = (pair[0], pair[1]);
            if !(t1.is_finite() && v1.is_finite() && t1 > t0) {
                return Err(Error::BadOrlicz(format!(
                    "table knots must be finite with strictly increasing arguments, got ({t0}, {v0}) then ({t1}, {v1})"
                )));
            }
        }
        let gauge = OrliczFunction::Table { knots };
        gauge.validate_on_grid()?;
        Ok(gauge)
    }

    /// Samples the gauge on an even grid over ten times the knot span and
    /// rejects any decrease or concavity beyond rounding noise.
    fn validate_on_grid(&self) -> Result<()> {
        let peak = match self {
            OrliczFunction::Table { knots } => knots.last().unwrap().0,
            _ => return Ok(()),
        };
        let span = TABLE_VALIDATION_SPAN * peak;
        let values: Vec<f64> = (0..TABLE_VALIDATION_GRID)
            .map(|i| self.eval(span * i as f64 / (TABLE_VALIDATION_GRID - 1) as f64))
            .collect();
        let scale = values.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        let tol = 1e-12 * scale;
        for (i, pair) in values.windows(2).enumerate() {
            if pair[1] < pair[0] - tol {
                return Err(Error::BadOrlicz(format!(
                    "table gauge decreases near t = {}",
                    span * (i + 1) as f64 / (TABLE_VALIDATION_GRID - 1) as f64
                )));
            }
        }
        for (i, triple) in values.windows(3).enumerate() {
            if triple[0] + triple[2] - 2.0 * triple[1] < -tol {
                return Err(Error::BadOrlicz(format!(
                    "table gauge is concave near t = {}",
                    span * (i + 1) as f64 / (TABLE_VALIDATION_GRID - 1) as f64
                )));
            }
        }
        Ok(())
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match self {
            OrliczFunction::Power { exponent } => t.powf(*exponent),
            OrliczFunction::LogLike { gamma } => {
                if t <= 1.0 {
                    t
                } else {
                    t * (1.0 + t.ln()).powf(*gamma)
                }
            }
            OrliczFunction::Table { knots } => {
                let after = knots.partition_point(|&(arg, _)| arg < t);
                let (lo, hi) = if after == knots.len() {
                    (knots[after - 2], knots[after - 1])
                } else if after == 0 {
                    (knots[0], knots[1])
                } else {
                    (knots[after - 1], knots[after])
                };
                lo.1 + (t - lo.0) * (hi.1 - lo.1) / (hi.0 - lo.0)
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            OrliczFunction::Power { exponent } => format!("power:{exponent}"),
            OrliczFunction::LogLike { gamma } => format!("loglike:{gamma}"),
            OrliczFunction::Table { knots } => format!("table:{}", knots.len()),
        }
    }
}

impl FromStr for OrliczFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s.split_once(':').ok_or_else(|| {
            Error::BadOrlicz(format!(
                "expected power:<p> or loglike:<g>, got {s:?}"
            ))
        })?;
        let number: f64 = arg
            .parse()
            .map_err(|_| Error::BadOrlicz(format!("bad gauge parameter {arg:?} in {s:?}")))?;
        match kind {
            "power" => OrliczFunction::power(number),
            "loglike" => OrliczFunction::log_like(number),
            other => Err(Error::BadOrlicz(format!(
                "unknown gauge kind {other:?} in {s:?}"
            ))),
        }
    }
}

/// Exact integral of `gauge(|f|)` over the plane: the support area times
/// the gauge at the constant value.
pub fn orlicz_integral(gauge: &OrliczFunction, f: &DiskIndicator) -> f64 {
    f.support().area() * gauge.eval(f.value())
}

/// Weak-type quotient `measure / integral of gauge(f / threshold)` for a
/// level-set estimate. A sequence of these unbounded across levels
/// witnesses failure of the corresponding weak-type inequality.
pub fn weak_type_ratio(
    gauge: &OrliczFunction,
    f: &DiskIndicator,
    estimate: &LevelSetEstimate,
) -> Result<f64> {
    let rescaled = f.scaled(1.0 / estimate.threshold)?;
    let denominator = orlicz_integral(gauge, &rescaled);
    if denominator > 0.0 {
        Ok(estimate.measure / denominator)
    } else if estimate.measure == 0.0 {
        Ok(0.0)
    } else {
        Ok(f64::INFINITY)
    }
}

/// Ratio sequence comparing the `L log L` mass of the calibrated level
/// functions against the gauge mass of their scaled copies.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivergenceReport {
    pub gauge: String,
    pub scale: f64,
    /// `ratios[i]` belongs to level `i + 1`.
    pub ratios: Vec<f64>,
    /// Smallest level from which the ratios increase strictly to the end.
    pub increasing_from: usize,
    /// Last ratio over the ratio at level `min(3, k_max)`.
    pub growth_factor: f64,
    pub diverges: bool,
}

/// Levels from which the long-run growth clause applies; shorter runs are
/// judged on strict increase alone.
pub const DIVERGENCE_LONG_RUN: usize = 40;

/// Required multiple between the last ratio and the level-3 ratio on long
/// runs.
pub const DIVERGENCE_GROWTH: f64 = 5.0;

/// Computes `r_k = Phi0(c_k) / gauge(scale * c_k)` for the calibrated
/// level values `c_k = lo^-k / maximal_coeff`, `k = 1..=k_max`. The
/// support area cancels exactly, so only the constants enter. Passes when
/// the ratios increase strictly from level 2 on; runs of at least 40
/// levels must additionally grow by the long-run factor.
pub fn divergence_check(
    gauge: &OrliczFunction,
    scale: f64,
    consts: &EnvelopeConstants,
    k_max: usize,
) -> Result<DivergenceReport> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::BadOrlicz(format!(
            "gauge argument scale must be positive, got {scale}"
        )));
    }
    if k_max == 0 || k_max > LEVEL_CAP {
        return Err(Error::LevelCapExceeded {
            requested: k_max,
            cap: LEVEL_CAP,
        });
    }
    let base = OrliczFunction::l_log_l();
    let mut ratios = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let value = consts.ratio_lo.powi(-(k as i32)) / consts.maximal_coeff;
        let denominator = gauge.eval(scale * value);
        if !(denominator > 0.0) {
            return Err(Error::BadOrlicz(format!(
                "gauge vanishes at {} so the ratio at level {k} is undefined",
                scale * value
            )));
        }
        ratios.push(base.eval(value) / denominator);
    }
    let mut start = ratios.len() - 1;
    while start > 0 && ratios[start] > ratios[start - 1] {
        start -= 1;
    }
    let increasing_from = start + 1;
    let growth_factor = ratios[ratios.len() - 1] / ratios[3.min(k_max) - 1];
    let diverges = k_max >= 3
        && increasing_from <= 2
        && (k_max < DIVERGENCE_LONG_RUN || growth_factor >= DIVERGENCE_GROWTH);
    Ok(DivergenceReport {
        gauge: gauge.describe(),
        scale,
        ratios,
        increasing_from,
        growth_factor,
        diverges,
    })
}
