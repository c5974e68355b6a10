use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::schemes::{SchemeSpec, TABLE1_IDS};

use super::cost::cost_profile;
use super::grid::GridSpec;
use super::scan::{reference_field, scan_with_reference, ErrorStats};

/// Published maximum relative error (%) for the schemes that have one.
pub fn published_max_pct(scheme_id: &str) -> Option<f64> {
    Some(match scheme_id {
        "eq2" => 16.56,
        "eq2a1" => 0.98,
        "eq2a2" => 0.13,
        "eq3" => 20.0,
        "eq3a" => 5.35,
        "eq4" => 60.0,
        "eq4a" => 6.29,
        "eq5" => 6.0,
        "eq5a" => 0.28,
        "eq6" => 2.0,
        "eq6a" => 0.17,
        _ => return None,
    })
}

/// Accuracy class a table row is published under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Accuracy {
    High,
    Moderate,
    Low,
}

impl Accuracy {
    pub fn of(scheme_id: &str) -> Option<Accuracy> {
        match scheme_id {
            "eq2a2" | "eq6a" | "eq5a" => Some(Accuracy::High),
            "eq2a1" | "eq6" => Some(Accuracy::Moderate),
            "eq5" | "eq4a" | "eq3a" => Some(Accuracy::Low),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Accuracy::High => "high",
            Accuracy::Moderate => "moderate",
            Accuracy::Low => "low",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1Row {
    pub scheme_id: String,
    pub accuracy: Accuracy,
    pub n_log: u32,
    pub published_max_pct: f64,
    pub stats: ErrorStats,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1Report {
    pub grid: GridSpec,
    pub rows: Vec<Table1Row>,
}

/// Scans the eight table schemes over `grid` against one shared reference
/// field.
pub fn table1_report(grid: &GridSpec, oracle_tol: f64, workers: usize) -> Result<Table1Report> {
    let field = reference_field(grid, oracle_tol, workers)?;
    let rows = TABLE1_IDS
        .iter()
        .map(|&id| {
            let spec = SchemeSpec::lookup(id)?;
            let (_, stats) = scan_with_reference(&spec, &field, workers)?;
            Ok(Table1Row {
                scheme_id: id.to_string(),
                accuracy: Accuracy::of(id).expect("table id"),
                n_log: cost_profile(id)?.n_log,
                published_max_pct: published_max_pct(id).expect("table id"),
                stats,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Table1Report { grid: *grid, rows })
}

impl Table1Report {
    pub fn to_csv(&self) -> String {
        let mut s = String::from(
            "scheme,accuracy,n_log,published_max_pct,max_pct,argmax_re,argmax_rough,mean_pct,p99_pct\n",
        );
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                r.scheme_id,
                r.accuracy.name(),
                r.n_log,
                r.published_max_pct,
                r.stats.max_pct,
                r.stats.argmax_re,
                r.stats.argmax_rough,
                r.stats.mean_pct,
                r.stats.p99_pct
            ));
        }
        s
    }
}

impl fmt::Display for Table1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<8} {:<9} {:>5} {:>14} {:>12} {:>12} {:>12}",
            "scheme", "accuracy", "logs", "published_%", "max_%", "mean_%", "p99_%"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<8} {:<9} {:>5} {:>14} {:>12.4} {:>12.4} {:>12.4}",
                r.scheme_id,
                r.accuracy.name(),
                r.n_log,
                r.published_max_pct,
                r.stats.max_pct,
                r.stats.mean_pct,
                r.stats.p99_pct
            )?;
        }
        Ok(())
    }
}
