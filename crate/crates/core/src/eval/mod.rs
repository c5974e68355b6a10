//! Domain sampling, error-map scans against the reference solver, the
//! accuracy-versus-complexity table, operation counts, timing and export.

mod bench;
mod cost;
mod export;
mod grid;
mod parallel;
mod scan;
mod sobol;
mod table1;

pub use bench::{benchmark, BenchRecord, BenchReport};
pub use cost::{cost_profile, CostProfile, Timing};
pub use export::{export_csv, export_heatmap, import_csv, write_csv, write_heatmap, CSV_HEADER};
pub use grid::{build_grid, GridSpec, Spacing};
pub use parallel::default_workers;
pub use scan::{
    reference_field, scan_errors, scan_with_reference, stats_from_entries, ErrorEntry, ErrorMap,
    ErrorStats, KernelAudit, ReferenceField,
};
pub use sobol::{sobol_2d, sobol_points, Sobol2d, SobolMapping};
pub use table1::{published_max_pct, table1_report, Accuracy, Table1Report, Table1Row};
