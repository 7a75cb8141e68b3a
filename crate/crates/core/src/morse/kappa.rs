//! Sublinear gauges κ.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Horizon used when a gauge is validated implicitly.
pub const DEFAULT_HORIZON: f64 = 1e6;
/// Largest accepted `κ(T) / T` at the horizon when validating implicitly.
pub const DEFAULT_TOLERANCE: f64 = 0.01;

/// A gauge `κ: [0, ∞) → [1, ∞)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SublinearFunction {
    /// `κ ≡ 1`.
    One,
    /// `κ(t) = log₂(2 + t)^p`.
    LogPower { p: f64 },
    /// `κ(t) = (1 + t)^s`.
    Power { s: f64 },
    /// Piecewise linear through `(t, κ(t))` samples with increasing `t`, starting at
    /// `t = 0`; continued past the last sample with the last slope.
    Table { points: Vec<(f64, f64)> },
}

impl SublinearFunction {
    pub fn log_power(p: f64) -> Result<Self> {
        if !(p.is_finite() && p > 0.0) {
            return Err(Error::InvalidKappa(format!("log exponent {p} must be positive")));
        }
        Ok(SublinearFunction::LogPower { p })
    }

    pub fn power(s: f64) -> Result<Self> {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::InvalidKappa(format!("power exponent {s} must be positive")));
        }
        Ok(SublinearFunction::Power { s })
    }

    /// `√(1 + t)`.
    pub fn sqrt() -> Self {
        SublinearFunction::Power { s: 0.5 }
    }

    pub fn table(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidKappa("table has no samples".into()));
        }
        if points[0].0 != 0.0 {
            return Err(Error::InvalidKappa("table must start at t = 0".into()));
        }
        if points.iter().any(|&(t, v)| !t.is_finite() || !v.is_finite()) {
            return Err(Error::InvalidKappa("table holds a non-finite value".into()));
        }
        if points.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::InvalidKappa("table arguments must increase strictly".into()));
        }
        Ok(SublinearFunction::Table { points })
    }

    /// Parses a two-column whitespace- or comma-separated table; `#` starts a comment.
    pub fn table_from_str(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| Error::InvalidKappa(format!("line {}: `{s}` is not a number", lineno + 1)))
            };
            match cols.as_slice() {
                [t, v] => points.push((parse(t)?, parse(v)?)),
                _ => return Err(Error::InvalidKappa(format!("line {}: expected two columns", lineno + 1))),
            }
        }
        Self::table(points)
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            SublinearFunction::One => 1.0,
            SublinearFunction::LogPower { p } => (2.0 + t).log2().powf(*p),
            SublinearFunction::Power { s } => (1.0 + t).powf(*s),
            SublinearFunction::Table { points } => {
                let i = points.partition_point(|&(x, _)| x <= t);
                if points.len() == 1 {
                    return points[0].1;
                }
                let (lo, hi) = match i {
                    0 => (points[0], points[1]),
                    i if i >= points.len() => (points[points.len() - 2], points[points.len() - 1]),
                    i => (points[i - 1], points[i]),
                };
                lo.1 + (hi.1 - lo.1) * (t - lo.0) / (hi.0 - lo.0)
            }
        }
    }

    /// κ evaluated at an integer norm.
    pub fn at(&self, norm: usize) -> f64 {
        self.eval(norm as f64)
    }

    /// The pointwise power `κ^p`, staying within the same family.
    pub fn pow(&self, p: f64) -> Result<Self> {
        if !(p.is_finite() && p > 0.0) {
            return Err(Error::InvalidKappa(format!("exponent {p} must be positive")));
        }
        Ok(match self {
            SublinearFunction::One => SublinearFunction::One,
            SublinearFunction::LogPower { p: q } => SublinearFunction::LogPower { p: q * p },
            SublinearFunction::Power { s } => SublinearFunction::Power { s: s * p },
            SublinearFunction::Table { points } => {
                SublinearFunction::Table { points: points.iter().map(|&(t, v)| (t, v.powf(p))).collect() }
            }
        })
    }

    /// Smallest `t` from which concavity is required. `log₂(2+t)^p` is convex near
    /// zero for `p > 1` and concave from `t = e^{p-1} - 2` on.
    pub fn concavity_onset(&self) -> f64 {
        match self {
            SublinearFunction::LogPower { p } if *p > 1.0 => ((p - 1.0).exp() - 2.0).max(0.0),
            _ => 0.0,
        }
    }

    /// Checks the gauge axioms on a geometric grid up to `horizon`.
    pub fn validate(&self, horizon: f64, tolerance: f64) -> KappaReport {
        validate_kappa(self, horizon, tolerance)
    }

    /// Validates at the default horizon and tolerance, failing on any violation.
    pub fn require_valid(&self) -> Result<()> {
        let report = self.validate(DEFAULT_HORIZON, DEFAULT_TOLERANCE);
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidKappa(format!("`{self}` {v}"))),
        }
    }
}

impl fmt::Display for SublinearFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SublinearFunction::One => write!(f, "one"),
            SublinearFunction::LogPower { p } => write!(f, "log:{p}"),
            SublinearFunction::Power { s } => write!(f, "pow:{s}"),
            SublinearFunction::Table { points } => write!(f, "table({} points)", points.len()),
        }
    }
}

/// Parses `one`, `log:p` or `pow:s`.
impl FromStr for SublinearFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let number = |v: &str| v.parse::<f64>().map_err(|_| Error::InvalidKappa(format!("`{v}` is not a number")));
        match s.split_once(':') {
            None if s == "one" => Ok(SublinearFunction::One),
            Some(("log", p)) => Self::log_power(number(p)?),
            Some(("pow", x)) => Self::power(number(x)?),
            _ => Err(Error::InvalidKappa(format!("unknown gauge `{s}` (expected one, log:p, pow:s)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KappaProperty {
    AtLeastOne,
    Nondecreasing,
    Concave,
    Sublinear,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KappaViolation {
    pub property: KappaProperty,
    /// Where the violation was observed.
    pub t: f64,
}

impl fmt::Display for KappaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.property {
            KappaProperty::AtLeastOne => "drops below 1",
            KappaProperty::Nondecreasing => "decreases",
            KappaProperty::Concave => "is not concave",
            KappaProperty::Sublinear => "is not sublinear at the horizon",
        };
        write!(f, "{what} at t = {}", self.t)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KappaReport {
    pub valid: bool,
    pub horizon: f64,
    pub tolerance: f64,
    /// `κ(T) / T` at the horizon.
    pub horizon_ratio: f64,
    /// First violation of each property, if any.
    pub violations: Vec<KappaViolation>,
}

/// Sample points `0, 2^{j/8}` up to `horizon`, then `horizon`.
fn sample_grid(horizon: f64) -> Vec<f64> {
    let mut grid = vec![0.0];
    let mut j = 0;
    loop {
        let t = 2f64.powf(j as f64 / 8.0);
        if t >= horizon {
            break;
        }
        grid.push(t);
        j += 1;
    }
    grid.push(horizon);
    grid
}

/// Checks κ ≥ 1, monotonicity, concavity (from the family's onset) and
/// `κ(T)/T ≤ tolerance` on a geometric grid up to `horizon`.
pub fn validate_kappa(kappa: &SublinearFunction, horizon: f64, tolerance: f64) -> KappaReport {
    assert!(horizon > 0.0, "horizon must be positive");
    const EPS: f64 = 1e-9;
    let grid = sample_grid(horizon);
    let values: Vec<f64> = grid.iter().map(|&t| kappa.eval(t)).collect();
    let mut violations = Vec::new();
    if let Some(i) = values.iter().position(|&v| v.is_nan() || v < 1.0 - EPS) {
        violations.push(KappaViolation { property: KappaProperty::AtLeastOne, t: grid[i] });
    }
    if let Some(i) = (1..grid.len()).find(|&i| values[i] < values[i - 1] - EPS) {
        violations.push(KappaViolation { property: KappaProperty::Nondecreasing, t: grid[i] });
    }
    let onset = kappa.concavity_onset();
    let slope = |i: usize| (values[i + 1] - values[i]) / (grid[i + 1] - grid[i]);
    if let Some(i) = (1..grid.len() - 1)
        .filter(|&i| grid[i - 1] >= onset)
        .find(|&i| slope(i) > slope(i - 1) * (1.0 + 1e-9) + EPS)
    {
        violations.push(KappaViolation { property: KappaProperty::Concave, t: grid[i] });
    }
    let horizon_ratio = kappa.eval(horizon) / horizon;
    if horizon_ratio.is_nan() || horizon_ratio > tolerance {
        violations.push(KappaViolation { property: KappaProperty::Sublinear, t: horizon });
    }
    KappaReport { valid: violations.is_empty(), horizon, tolerance, horizon_ratio, violations }
}

/// Constants `(D₁, D₂)` with `D₁ κ(x) ≤ κ(y) ≤ D₂ κ(x)` whenever `|x − y| ≤ D₀ κ(x)`,
/// as extremes over the sample grid up to `horizon`. Since κ is nondecreasing the
/// extremes sit at the ends of the window around each `x`.
pub fn sublinear_constants(kappa: &SublinearFunction, d0: f64, horizon: f64) -> (f64, f64) {
    assert!(d0 >= 0.0, "D0 must be nonnegative");
    let mut d1 = f64::INFINITY;
    let mut d2: f64 = 0.0;
    for x in sample_grid(horizon) {
        let kx = kappa.eval(x);
        let reach = d0 * kx;
        d1 = d1.min(kappa.eval((x - reach).max(0.0)) / kx);
        d2 = d2.max(kappa.eval(x + reach) / kx);
    }
    (d1, d2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_gauges() {
        for k in [SublinearFunction::One, SublinearFunction::log_power(1.0).unwrap(), SublinearFunction::sqrt()] {
            assert!(k.validate(1e6, 0.01).valid, "{k}");
        }
        let linear = SublinearFunction::sqrt().pow(2.0).unwrap();
        let r = linear.validate(1e6, 0.01);
        assert!(!r.valid);
        assert_eq!(r.violations[0].property, KappaProperty::Sublinear);
        let cubed_log = SublinearFunction::log_power(1.0).unwrap().pow(3.0).unwrap();
        assert_eq!(cubed_log, SublinearFunction::LogPower { p: 3.0 });
        assert!(cubed_log.validate(1e6, 0.01).valid);
    }

    #[test]
    fn tables_interpolate_and_extrapolate() {
        let t = SublinearFunction::table_from_str("0 1\n# comment\n10, 2\n20 2.5\n").unwrap();
        assert_eq!(t.eval(5.0), 1.5);
        assert_eq!(t.eval(30.0), 3.0);
        let linear = SublinearFunction::table_from_str("0 1\n10 11").unwrap();
        assert!(!linear.validate(1e6, 0.01).valid);
        assert!(SublinearFunction::table_from_str("1 1").is_err());
        assert!(SublinearFunction::table_from_str("0 1\n0 2").is_err());
        let below = SublinearFunction::table(vec![(0.0, 0.5), (1.0, 1.0)]).unwrap();
        assert_eq!(below.validate(1e6, 1.0).violations[0].property, KappaProperty::AtLeastOne);
    }

    #[test]
    fn parse_specs() {
        assert_eq!("one".parse::<SublinearFunction>().unwrap(), SublinearFunction::One);
        assert_eq!("pow:0.5".parse::<SublinearFunction>().unwrap(), SublinearFunction::sqrt());
        assert!("pow:-1".parse::<SublinearFunction>().is_err());
        assert!("cube".parse::<SublinearFunction>().is_err());
    }

    #[test]
    fn constants() {
        assert_eq!(sublinear_constants(&SublinearFunction::sqrt(), 0.0, 1e6), (1.0, 1.0));
        assert_eq!(sublinear_constants(&SublinearFunction::One, 5.0, 1e6), (1.0, 1.0));
        let (d1, d2) = sublinear_constants(&SublinearFunction::sqrt(), 2.0, 1e6);
        assert!(d1 > 0.0 && d1 <= 1.0 && d2 >= 1.0 && d2.is_finite());
    }
}
