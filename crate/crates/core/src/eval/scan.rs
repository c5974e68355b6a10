use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::{relative_error_pct, solve_colebrook_exact, FlowPoint, DEFAULT_MAX_ITER};
use crate::schemes::{evaluate_scheme_traced, SchemeSpec};

use super::grid::{build_grid, GridSpec};
use super::parallel::map_chunks;

/// One mesh point of an error map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorEntry {
    pub re: f64,
    pub rel_rough: f64,
    pub lambda_ref: f64,
    pub lambda_approx: f64,
    pub rel_err_pct: f64,
}

/// Kernel-domain audit collected during a scan.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct KernelAudit {
    /// Points whose sine argument fell outside the kernel window and were
    /// evaluated with the exact sine instead.
    pub sine_fallbacks: usize,
    pub sine_arg_range: Option<(f64, f64)>,
    pub pade_z_range: Option<(f64, f64)>,
}

impl KernelAudit {
    fn merge(mut self, other: KernelAudit) -> Self {
        self.sine_fallbacks += other.sine_fallbacks;
        self.sine_arg_range = merge_range(self.sine_arg_range, other.sine_arg_range);
        self.pade_z_range = merge_range(self.pade_z_range, other.pade_z_range);
        self
    }
}

fn merge_range(a: Option<(f64, f64)>, b: Option<(f64, f64)>) -> Option<(f64, f64)> {
    match (a, b) {
        (Some((lo1, hi1)), Some((lo2, hi2))) => Some((lo1.min(lo2), hi1.max(hi2))),
        (x, None) | (None, x) => x,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorMap {
    pub scheme_id: String,
    pub grid: GridSpec,
    /// Rough-major, matching [`build_grid`].
    pub entries: Vec<ErrorEntry>,
    pub audit: KernelAudit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorStats {
    pub max_pct: f64,
    pub argmax_re: f64,
    pub argmax_rough: f64,
    pub mean_pct: f64,
    /// Nearest-rank 99th percentile.
    pub p99_pct: f64,
    pub count: usize,
}

/// Reference friction factors for every point of a grid, reusable across
/// schemes.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceField {
    pub grid: GridSpec,
    pub tol: f64,
    pub points: Vec<FlowPoint>,
    pub lambdas: Vec<f64>,
}

pub fn reference_field(grid: &GridSpec, tol: f64, workers: usize) -> Result<ReferenceField> {
    let points = build_grid(grid)?;
    let parts = map_chunks(&points, workers, |_, chunk| {
        chunk
            .iter()
            .map(|p| {
                Ok(solve_colebrook_exact(p, tol, DEFAULT_MAX_ITER)?
                    .iterate
                    .lambda())
            })
            .collect::<Result<Vec<f64>>>()
    })?;
    Ok(ReferenceField {
        grid: *grid,
        tol,
        points,
        lambdas: parts.into_iter().flatten().collect(),
    })
}

/// Error map and summary of `scheme` over `grid`, against the reference
/// solver at `oracle_tol`. Results do not depend on `workers`.
pub fn scan_errors(
    scheme: &SchemeSpec,
    grid: &GridSpec,
    oracle_tol: f64,
    workers: usize,
) -> Result<(ErrorMap, ErrorStats)> {
    let field = reference_field(grid, oracle_tol, workers)?;
    scan_with_reference(scheme, &field, workers)
}

pub fn scan_with_reference(
    scheme: &SchemeSpec,
    field: &ReferenceField,
    workers: usize,
) -> Result<(ErrorMap, ErrorStats)> {
    let indexed: Vec<(FlowPoint, f64)> = field
        .points
        .iter()
        .copied()
        .zip(field.lambdas.iter().copied())
        .collect();
    let parts = map_chunks(&indexed, workers, |_, chunk| {
        let mut audit = KernelAudit::default();
        let mut entries = Vec::with_capacity(chunk.len());
        for (p, lambda_ref) in chunk {
            let (it, trace) = evaluate_scheme_traced(scheme, p).map_err(|e| at_point(e, p))?;
            if let Some(s) = trace.sine {
                audit.sine_fallbacks += usize::from(s.fallback);
                audit.sine_arg_range = merge_range(audit.sine_arg_range, Some((s.arg, s.arg)));
            }
            if let Some(z) = trace.pade_z {
                audit.pade_z_range = merge_range(audit.pade_z_range, Some((z, z)));
            }
            let lambda_approx = it.lambda();
            entries.push(ErrorEntry {
                re: p.re(),
                rel_rough: p.rel_rough(),
                lambda_ref: *lambda_ref,
                lambda_approx,
                rel_err_pct: relative_error_pct(*lambda_ref, lambda_approx)?,
            });
        }
        Ok((entries, audit))
    })?;

    let mut entries = Vec::with_capacity(indexed.len());
    let mut audit = KernelAudit::default();
    for (e, a) in parts {
        entries.extend(e);
        audit = audit.merge(a);
    }
    let stats = stats_from_entries(&entries, workers)?;
    Ok((
        ErrorMap {
            scheme_id: scheme.id().to_string(),
            grid: field.grid,
            entries,
            audit,
        },
        stats,
    ))
}

fn at_point(e: Error, p: &FlowPoint) -> Error {
    match e {
        Error::Domain(msg) => {
            Error::Domain(format!("{msg} (at Re={}, eps/D={})", p.re(), p.rel_rough()))
        }
        other => other,
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn merge(&mut self, other: CompensatedSum) {
        self.add(other.sum);
        self.add(other.carry);
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Partial {
    max: Option<(f64, f64, f64)>,
    sum: CompensatedSum,
}

impl Partial {
    fn push(&mut self, e: &ErrorEntry) {
        self.sum.add(e.rel_err_pct);
        self.offer((e.rel_err_pct, e.re, e.rel_rough));
    }

    /// Larger error wins; equal errors go to the lexicographically smaller
    /// `(Re, ε/D)`.
    fn offer(&mut self, cand: (f64, f64, f64)) {
        let better = match self.max {
            None => true,
            Some(cur) => match cand.0.total_cmp(&cur.0) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => {
                    (cand.1, cand.2).partial_cmp(&(cur.1, cur.2)) == Some(Ordering::Less)
                }
            },
        };
        if better {
            self.max = Some(cand);
        }
    }

    fn merge(&mut self, other: Partial) {
        self.sum.merge(other.sum);
        if let Some(m) = other.max {
            self.offer(m);
        }
    }
}

/// Summary statistics with a partitioned reduction over `workers` chunks;
/// max and argmax are partition-invariant, the mean to rounding.
pub fn stats_from_entries(entries: &[ErrorEntry], workers: usize) -> Result<ErrorStats> {
    if entries.is_empty() {
        return Err(Error::config("cannot summarise an empty error map"));
    }
    if let Some(bad) = entries.iter().find(|e| !e.rel_err_pct.is_finite()) {
        return Err(Error::domain(format!(
            "non-finite relative error at Re={}, eps/D={}",
            bad.re, bad.rel_rough
        )));
    }
    let parts = map_chunks(entries, workers, |_, chunk| {
        let mut p = Partial::default();
        chunk.iter().for_each(|e| p.push(e));
        Ok(p)
    })?;
    let mut total = Partial::default();
    for p in parts {
        total.merge(p);
    }
    let (max_pct, argmax_re, argmax_rough) = total.max.expect("non-empty");

    let mut sorted: Vec<f64> = entries.iter().map(|e| e.rel_err_pct).collect();
    sorted.sort_by(f64::total_cmp);
    let rank = ((0.99 * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());

    Ok(ErrorStats {
        max_pct,
        argmax_re,
        argmax_rough,
        mean_pct: total.sum.value() / entries.len() as f64,
        p99_pct: sorted[rank - 1],
        count: entries.len(),
    })
}
