use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::{FlowPoint, RE_MAX, RE_MIN, ROUGH_MAX};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Spacing {
    Log,
    Linear,
}

impl std::str::FromStr for Spacing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "log" => Ok(Spacing::Log),
            "linear" | "lin" => Ok(Spacing::Linear),
            other => Err(Error::config(format!(
                "unknown spacing `{other}` (expected log or linear)"
            ))),
        }
    }
}

/// Tensor mesh over `(Re, ε/D)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub re_min: f64,
    pub re_max: f64,
    pub rough_min: f64,
    pub rough_max: f64,
    pub n_re: usize,
    pub n_rough: usize,
    pub re_spacing: Spacing,
    pub rough_spacing: Spacing,
}

impl Default for GridSpec {
    /// 300 × 300 = 90 000 points, log-spaced, `Re ∈ [4000, 1e8]`,
    /// `ε/D ∈ [1e-6, 0.05]`.
    fn default() -> Self {
        Self {
            re_min: RE_MIN,
            re_max: RE_MAX,
            rough_min: 1e-6,
            rough_max: ROUGH_MAX,
            n_re: 300,
            n_rough: 300,
            re_spacing: Spacing::Log,
            rough_spacing: Spacing::Log,
        }
    }
}

impl GridSpec {
    pub fn with_size(mut self, n_re: usize, n_rough: usize) -> Self {
        self.n_re = n_re;
        self.n_rough = n_rough;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, lo, hi) in [
            ("Re", self.re_min, self.re_max),
            ("eps/D", self.rough_min, self.rough_max),
        ] {
            if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo < hi) {
                return Err(Error::config(format!(
                    "{name} bounds must be positive, finite and ordered, got [{lo}, {hi}]"
                )));
            }
        }
        if self.n_re < 2 || self.n_rough < 2 {
            return Err(Error::config(format!(
                "grid needs at least 2 points per axis, got {}x{}",
                self.n_re, self.n_rough
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n_re * self.n_rough
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn re_axis(&self) -> Vec<f64> {
        axis(self.re_min, self.re_max, self.n_re, self.re_spacing)
    }

    pub fn rough_axis(&self) -> Vec<f64> {
        axis(
            self.rough_min,
            self.rough_max,
            self.n_rough,
            self.rough_spacing,
        )
    }
}

/// `n ≥ 2` points from `lo` to `hi`, both endpoints exact.
fn axis(lo: f64, hi: f64, n: usize, spacing: Spacing) -> Vec<f64> {
    let last = (n - 1) as f64;
    let mut v: Vec<f64> = match spacing {
        Spacing::Linear => (0..n).map(|i| lo + (hi - lo) * (i as f64 / last)).collect(),
        Spacing::Log => {
            let (llo, lhi) = (lo.ln(), hi.ln());
            (0..n)
                .map(|i| (llo + (lhi - llo) * (i as f64 / last)).exp())
                .collect()
        }
    };
    v[0] = lo;
    v[n - 1] = hi;
    v
}

/// All mesh points, rough-major: the Re index varies fastest.
pub fn build_grid(spec: &GridSpec) -> Result<Vec<FlowPoint>> {
    spec.validate()?;
    let re = spec.re_axis();
    let rough = spec.rough_axis();
    let mut points = Vec::with_capacity(spec.len());
    for &k in &rough {
        for &r in &re {
            points.push(FlowPoint::out_of_domain(r, k)?);
        }
    }
    Ok(points)
}
