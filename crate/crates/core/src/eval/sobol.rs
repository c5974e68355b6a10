//! Two-dimensional Sobol sequence (unscrambled, Gray-code order).
//!
//! Dimension 0 is the base-2 van der Corput sequence; dimension 1 uses the
//! primitive polynomial `x + 1` with initial direction number `m₁ = 1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::FlowPoint;

use super::grid::GridSpec;

const BITS: usize = 32;

#[derive(Debug, Clone)]
pub struct Sobol2d {
    directions: [[u32; BITS]; 2],
    state: [u32; 2],
    index: u64,
}

impl Default for Sobol2d {
    fn default() -> Self {
        Self::new()
    }
}

impl Sobol2d {
    pub fn new() -> Self {
        let mut directions = [[0u32; BITS]; 2];
        for (k, d) in directions[0].iter_mut().enumerate() {
            *d = 1 << (31 - k);
        }
        directions[1][0] = 1 << 31;
        for k in 1..BITS {
            let prev = directions[1][k - 1];
            directions[1][k] = prev ^ (prev >> 1);
        }
        Self {
            directions,
            state: [0; 2],
            index: 0,
        }
    }
}

impl Iterator for Sobol2d {
    type Item = [f64; 2];

    fn next(&mut self) -> Option<[f64; 2]> {
        if self.index > u64::from(u32::MAX) {
            return None;
        }
        if self.index > 0 {
            let c = (self.index - 1).trailing_ones() as usize;
            self.state[0] ^= self.directions[0][c];
            self.state[1] ^= self.directions[1][c];
        }
        self.index += 1;
        let scale = 1.0 / (1u64 << 32) as f64;
        Some([
            f64::from(self.state[0]) * scale,
            f64::from(self.state[1]) * scale,
        ])
    }
}

/// The first `n` points of the sequence, in `[0, 1)²`.
pub fn sobol_2d(n: usize) -> Vec<[f64; 2]> {
    Sobol2d::new().take(n).collect()
}

/// How unit-square samples map onto `(Re, ε/D)` bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SobolMapping {
    /// Uniform in raw `Re` and `ε/D`.
    Uniform,
    /// Uniform in `log Re` and `log ε/D`.
    LogUniform,
}

/// `n` Sobol samples mapped onto the bounds of `bounds` (its point counts
/// are ignored). Dimension 0 drives `Re`, dimension 1 drives `ε/D`.
pub fn sobol_points(n: usize, bounds: &GridSpec, mapping: SobolMapping) -> Result<Vec<FlowPoint>> {
    if n == 0 {
        return Err(Error::config("Sobol sample size must be at least 1"));
    }
    GridSpec {
        n_re: 2,
        n_rough: 2,
        ..*bounds
    }
    .validate()?;
    let map = |u: f64, lo: f64, hi: f64| match mapping {
        SobolMapping::Uniform => lo + u * (hi - lo),
        // exp(ln lo) can round below lo
        SobolMapping::LogUniform => (lo.ln() + u * (hi.ln() - lo.ln())).exp().clamp(lo, hi),
    };
    sobol_2d(n)
        .into_iter()
        .map(|[u, v]| {
            FlowPoint::out_of_domain(
                map(u, bounds.re_min, bounds.re_max),
                map(v, bounds.rough_min, bounds.rough_max),
            )
        })
        .collect()
}
