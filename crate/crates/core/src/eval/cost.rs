use serde::Serialize;

use crate::error::Result;
use crate::schemes::{AccelForm, LogStrategy, SchemeSpec, SinStrategy, Starter};

/// Measured cost of one evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Timing {
    pub median_ns: f64,
    /// Median absolute deviation of the per-repetition figures.
    pub mad_ns: f64,
}

/// Operation counts of one scheme evaluation. Divisions by literal
/// constants count; multiplications and additions do not.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostProfile {
    pub scheme_id: String,
    /// Real logarithm evaluations, normalization included.
    pub n_log: u32,
    pub n_sin: u32,
    /// Non-integer powers. No scheme uses one.
    pub n_pow: u32,
    pub n_div: u32,
    pub timing: Option<Timing>,
}

/// Static operation counts for a registered scheme id.
pub fn cost_profile(scheme_id: &str) -> Result<CostProfile> {
    let spec = SchemeSpec::lookup(scheme_id)?;
    Ok(static_counts(&spec))
}

pub(crate) fn static_counts(spec: &SchemeSpec) -> CostProfile {
    let (mut n_log, mut n_sin, mut n_div) = (0, 0, 0);

    if spec.starter().is_normalized() {
        n_log += 2;
    }
    match spec.starter() {
        Starter::Eq2 => n_div += 2,
        Starter::Eq3 => n_div += 1,
        Starter::Eq4 | Starter::Eq5 | Starter::Eq6 => match spec.sin_strategy() {
            SinStrategy::Exact => n_sin += 1,
            SinStrategy::Pade => n_div += 1,
            SinStrategy::Quintic => n_div += 3,
        },
    }

    let steps = spec.accel_steps() as u32;
    match (spec.log_strategy(), spec.accel_form()) {
        (LogStrategy::PadeOneLog, _) => {
            // first step as usual; the second rebuilds its log argument
            // (2), forms the ratio (1), the Padé quotient (1) and /ln 10 (1)
            n_log += 1;
            n_div += 2 + 5;
        }
        (LogStrategy::Exact, AccelForm::Direct) => {
            n_log += steps;
            n_div += 2 * steps;
        }
        (LogStrategy::Exact, AccelForm::Transformed) => {
            // b comes free with the normalization, otherwise it costs a log
            if !spec.starter().is_normalized() {
                n_log += 1;
            }
            n_log += steps;
            n_div += steps;
        }
    }

    CostProfile {
        scheme_id: spec.id().to_string(),
        n_log,
        n_sin,
        n_pow: 0,
        n_div,
        timing: None,
    }
}
