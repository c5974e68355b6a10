use std::hint::black_box;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::FlowPoint;
use crate::schemes::{evaluate_scheme, SchemeSpec};

use super::cost::{static_counts, CostProfile, Timing};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub scheme_id: String,
    /// Static counts with the measured timing filled in.
    pub profile: CostProfile,
    pub reps: usize,
    pub batch: usize,
}

impl BenchRecord {
    pub fn timing(&self) -> Timing {
        self.profile.timing.expect("benchmark records are timed")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    /// Whether the one-log path beat plain `eq2a2` on this host, when both
    /// were measured.
    pub pade_faster: Option<bool>,
}

/// Times each scheme over the whole `batch`, `reps` times, single-threaded.
/// Every scheme is evaluated once up front so timing loops never see an
/// error.
pub fn benchmark(specs: &[SchemeSpec], batch: &[FlowPoint], reps: usize) -> Result<BenchReport> {
    if reps < 3 {
        return Err(Error::config(format!(
            "benchmark needs at least 3 reps, got {reps}"
        )));
    }
    if batch.is_empty() {
        return Err(Error::config("benchmark batch is empty"));
    }
    for spec in specs {
        for p in batch {
            evaluate_scheme(spec, p)?;
        }
    }

    let mut records = Vec::with_capacity(specs.len());
    for spec in specs {
        let mut per_eval = Vec::with_capacity(reps);
        for _ in 0..reps {
            let start = Instant::now();
            let mut sink = 0.0;
            for p in black_box(batch) {
                sink += evaluate_scheme(spec, black_box(p)).map_or(0.0, |it| it.x());
            }
            black_box(sink);
            let ns = start.elapsed().as_nanos() as f64;
            // never report zero on coarse clocks
            per_eval.push((ns / batch.len() as f64).max(f64::MIN_POSITIVE));
        }
        let median_ns = median(&mut per_eval);
        let mut dev: Vec<f64> = per_eval.iter().map(|t| (t - median_ns).abs()).collect();
        let mad_ns = median(&mut dev);
        let mut profile = static_counts(spec);
        profile.timing = Some(Timing { median_ns, mad_ns });
        records.push(BenchRecord {
            scheme_id: spec.id().to_string(),
            profile,
            reps,
            batch: batch.len(),
        });
    }

    let median_of = |id: &str| {
        records
            .iter()
            .find(|r| r.scheme_id == id)
            .map(|r| r.timing().median_ns)
    };
    let pade_faster = match (median_of("eq2a2-pade"), median_of("eq2a2")) {
        (Some(pade), Some(plain)) => Some(pade < plain),
        _ => None,
    };
    Ok(BenchReport {
        records,
        pade_faster,
    })
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}
