//! Command-line front end.
//!
//! Exit codes: 0 ok, 1 usage or configuration, 2 domain, 3 reference solver
//! did not converge, 4 I/O.

mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub use config::CliConfig;

use crate::error::{Error, Result};
use crate::eval::{
    benchmark, build_grid, default_workers, export_csv, export_heatmap, scan_errors, sobol_points,
    table1_report, GridSpec, SobolMapping, Spacing,
};
use crate::flow::{relative_error_pct, solve_colebrook_exact, FlowPoint, DEFAULT_MAX_ITER};
use crate::kernels::{sweep, KernelKind};
use crate::schemes::{
    evaluate_scheme, AccelForm, SchemeSpec, SinStrategy, TransformConstants, REGISTRY_IDS,
};

/// Pseudo-scheme id for the reference solver in `solve`.
pub const REFERENCE_ID: &str = "colebrook";

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnknownScheme(_) | Error::Config(_) => 1,
        Error::Domain(_) => 2,
        Error::NonConvergence { .. } => 3,
        Error::Io { .. } => 4,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "colebrook",
    version,
    about = "Colebrook friction factor: explicit schemes, kernels and error maps"
)]
struct Cli {
    /// Defaults file (`key = value` lines); flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate schemes at one (Re, eps/D) point against the reference solver.
    Solve(SolveArgs),
    /// Error map of one scheme over a mesh.
    Scan(ScanArgs),
    /// Measured versus published maximum errors of the eight table schemes.
    Table1(Table1Args),
    /// Time schemes over a fixed Sobol batch.
    Bench(BenchArgs),
    /// Sweep the rational kernels against the functions they replace.
    Kernels(KernelArgs),
    /// Describe the mesh, optionally listing its points.
    Grid(GridArgs),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct SolveArgs {
    #[arg(long)]
    re: f64,
    /// Relative roughness eps/D.
    #[arg(long)]
    rough: f64,
    /// Scheme id, repeatable; `colebrook` is the reference solver itself.
    #[arg(long = "scheme", default_value = REFERENCE_ID)]
    schemes: Vec<String>,
    #[arg(long, value_parser = parse_sin)]
    sin: Option<SinStrategy>,
    #[arg(long, value_parser = parse_constants)]
    constants: Option<TransformConstants>,
    #[arg(long)]
    tol: Option<f64>,
    /// Iteration cap of the reference solver.
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    /// Print one JSON object instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args, Default)]
#[command(allow_negative_numbers = true)]
struct GridFlags {
    /// Mesh size as `N_RExN_ROUGH`, e.g. 300x300.
    #[arg(long, value_parser = parse_grid_size)]
    grid: Option<(usize, usize)>,
    #[arg(long)]
    re_min: Option<f64>,
    #[arg(long)]
    re_max: Option<f64>,
    #[arg(long)]
    rough_min: Option<f64>,
    #[arg(long)]
    rough_max: Option<f64>,
    #[arg(long, value_parser = parse_spacing)]
    re_spacing: Option<Spacing>,
    #[arg(long, value_parser = parse_spacing)]
    rough_spacing: Option<Spacing>,
}

impl GridFlags {
    fn apply(&self, mut g: GridSpec) -> Result<GridSpec> {
        if let Some((n_re, n_rough)) = self.grid {
            g = g.with_size(n_re, n_rough);
        }
        g.re_min = self.re_min.unwrap_or(g.re_min);
        g.re_max = self.re_max.unwrap_or(g.re_max);
        g.rough_min = self.rough_min.unwrap_or(g.rough_min);
        g.rough_max = self.rough_max.unwrap_or(g.rough_max);
        g.re_spacing = self.re_spacing.unwrap_or(g.re_spacing);
        g.rough_spacing = self.rough_spacing.unwrap_or(g.rough_spacing);
        g.validate()?;
        Ok(g)
    }
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long)]
    scheme: String,
    #[command(flatten)]
    grid: GridFlags,
    /// CSV error map output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Plain PGM heatmap output.
    #[arg(long)]
    heatmap: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_parser = parse_sin)]
    sin: Option<SinStrategy>,
    #[arg(long, value_parser = parse_constants)]
    constants: Option<TransformConstants>,
}

#[derive(Debug, Args)]
struct Table1Args {
    #[command(flatten)]
    grid: GridFlags,
    /// Also write the table as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// `all` or scheme ids (repeatable or comma-separated).
    #[arg(long = "scheme", default_value = "all", value_delimiter = ',')]
    schemes: Vec<String>,
    #[arg(long, default_value_t = 7)]
    reps: usize,
    /// Number of Sobol points per batch.
    #[arg(long, default_value_t = 10_000)]
    batch: usize,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct KernelArgs {
    /// Kernel to check, repeatable; all three by default.
    #[arg(long = "check", value_parser = parse_kernel)]
    checks: Vec<KernelKind>,
    /// Interior sweep points.
    #[arg(long, default_value_t = 100_000)]
    sweep: usize,
    /// Window override, lower end.
    #[arg(long, requires = "hi")]
    lo: Option<f64>,
    #[arg(long, requires = "lo")]
    hi: Option<f64>,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[command(flatten)]
    grid: GridFlags,
    /// List every point as `re,rel_rough`.
    #[arg(long)]
    points: bool,
}

fn parse_sin(s: &str) -> std::result::Result<SinStrategy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_constants(s: &str) -> std::result::Result<TransformConstants, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_spacing(s: &str) -> std::result::Result<Spacing, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kernel(s: &str) -> std::result::Result<KernelKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_grid_size(s: &str) -> std::result::Result<(usize, usize), String> {
    let bad = || format!("expected NxM with positive integers, got `{s}`");
    let (n, m) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((
        n.trim().parse().map_err(|_| bad())?,
        m.trim().parse().map_err(|_| bad())?,
    ))
}

/// Runs the CLI on `args` (program name first), writing to the given
/// streams, and returns the process exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                1
            } else {
                let _ = write!(out, "{}", e.render());
                0
            };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// [`run_with`] on the process arguments and standard streams.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let cfg = match &cli.config {
        Some(path) => CliConfig::from_file(path)?,
        None => CliConfig::default(),
    };
    match cli.command {
        Command::Solve(a) => cmd_solve(&cfg, a, out, err),
        Command::Scan(a) => cmd_scan(&cfg, a, out, err),
        Command::Table1(a) => cmd_table1(&cfg, a, out),
        Command::Bench(a) => cmd_bench(a, out),
        Command::Kernels(a) => cmd_kernels(a, out),
        Command::Grid(a) => cmd_grid(&cfg, a, out),
    }
}

/// Resolves `id`, applying the sine and constants defaults where the scheme
/// uses them and the id does not already pin them.
fn resolve_scheme(
    id: &str,
    cfg: &CliConfig,
    sin: Option<SinStrategy>,
    constants: Option<TransformConstants>,
) -> Result<SchemeSpec> {
    let mut spec = SchemeSpec::lookup(id)?;
    if spec.starter().has_sine() {
        let chosen = sin.or_else(|| (!id.contains("+sin-")).then_some(cfg.sin_strategy));
        if let Some(s) = chosen {
            spec = spec.with_sin(s)?;
        }
    }
    if spec.accel_form() == AccelForm::Transformed {
        let chosen = constants.or_else(|| (!id.contains("+const-")).then_some(cfg.constants));
        if let Some(c) = chosen {
            spec = spec.with_constants(c)?;
        }
    }
    Ok(spec)
}

fn tolerance(flag: Option<f64>, cfg: &CliConfig) -> Result<f64> {
    let tol = flag.unwrap_or(cfg.oracle_tol);
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::config(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(tol)
}

fn workers(flag: Option<usize>, cfg: &CliConfig) -> Result<usize> {
    match flag.or(cfg.workers) {
        Some(0) => Err(Error::config("workers must be at least 1")),
        Some(n) => Ok(n),
        None => Ok(default_workers()),
    }
}

fn write_out(out: &mut dyn Write, text: std::fmt::Arguments<'_>) -> Result<()> {
    out.write_fmt(text).map_err(|e| Error::io("<stdout>", e))
}

macro_rules! outln {
    ($out:expr, $($arg:tt)*) => {
        write_out($out, format_args!("{}\n", format_args!($($arg)*)))
    };
}

#[derive(Debug, Serialize)]
struct SolveResult {
    scheme: String,
    lambda: f64,
    x: f64,
    oracle_lambda: f64,
    rel_err_pct: f64,
    steps: usize,
}

#[derive(Debug, Serialize)]
struct SolveOutput {
    re: f64,
    rel_rough: f64,
    in_domain: bool,
    warning: Option<String>,
    results: Vec<SolveResult>,
}

fn cmd_solve(
    cfg: &CliConfig,
    a: SolveArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let point = FlowPoint::out_of_domain(a.re, a.rough)?;
    let tol = tolerance(a.tol, cfg)?;
    let specs = a
        .schemes
        .iter()
        .map(|id| match id.as_str() {
            REFERENCE_ID => Ok(None),
            id => resolve_scheme(id, cfg, a.sin, a.constants).map(Some),
        })
        .collect::<Result<Vec<_>>>()?;

    let warning = (!point.is_in_domain()).then(|| {
        format!(
            "Re={} eps/D={} lies outside the validated domain Re in [4000, 1e8], eps/D in [0, 0.05]",
            point.re(),
            point.rel_rough()
        )
    });
    if let Some(w) = &warning {
        let _ = writeln!(err, "warning: {w}");
    }

    let oracle = solve_colebrook_exact(&point, tol, a.max_iter)?;
    let oracle_lambda = oracle.iterate.lambda();
    let mut results = Vec::with_capacity(specs.len());
    for spec in &specs {
        let r = match spec {
            None => SolveResult {
                scheme: REFERENCE_ID.to_string(),
                lambda: oracle_lambda,
                x: oracle.iterate.x(),
                oracle_lambda,
                rel_err_pct: 0.0,
                steps: oracle.iterations,
            },
            Some(spec) => {
                let it = evaluate_scheme(spec, &point)?;
                SolveResult {
                    scheme: spec.id().to_string(),
                    lambda: it.lambda(),
                    x: it.x(),
                    oracle_lambda,
                    rel_err_pct: relative_error_pct(oracle_lambda, it.lambda())?,
                    steps: it.step(),
                }
            }
        };
        results.push(r);
    }

    if a.json {
        let doc = SolveOutput {
            re: point.re(),
            rel_rough: point.rel_rough(),
            in_domain: point.is_in_domain(),
            warning,
            results,
        };
        let text = serde_json::to_string(&doc).map_err(|e| Error::config(e.to_string()))?;
        return outln!(out, "{text}");
    }
    for (i, r) in results.iter().enumerate() {
        if i > 0 {
            outln!(out, "")?;
        }
        outln!(out, "scheme        {}", r.scheme)?;
        outln!(out, "lambda        {}", r.lambda)?;
        outln!(out, "x             {}", r.x)?;
        outln!(out, "oracle_lambda {}", r.oracle_lambda)?;
        outln!(out, "rel_err_pct   {}", r.rel_err_pct)?;
        outln!(out, "steps         {}", r.steps)?;
    }
    Ok(())
}

fn cmd_scan(cfg: &CliConfig, a: ScanArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let spec = resolve_scheme(&a.scheme, cfg, a.sin, a.constants)?;
    let grid = a.grid.apply(cfg.grid)?;
    let tol = tolerance(a.tol, cfg)?;
    let workers = workers(a.workers, cfg)?;

    let outside = build_grid(&grid)?
        .iter()
        .filter(|p| !p.is_in_domain())
        .count();
    if outside > 0 {
        let _ = writeln!(
            err,
            "warning: {outside} of {} mesh points lie outside the validated domain",
            grid.len()
        );
    }

    let (map, stats) = scan_errors(&spec, &grid, tol, workers)?;
    if let Some(p) = &a.out {
        export_csv(&map, cfg.output_path(p))?;
    }
    if let Some(p) = &a.heatmap {
        export_heatmap(&map, cfg.output_path(p))?;
    }
    if map.audit.sine_fallbacks > 0 {
        let _ = writeln!(
            err,
            "note: {} sine arguments fell outside the kernel window and used the exact sine",
            map.audit.sine_fallbacks
        );
    }
    outln!(
        out,
        "# scheme max_pct argmax_re argmax_rough mean_pct p99_pct"
    )?;
    outln!(
        out,
        "{} {} {} {} {} {}",
        map.scheme_id,
        stats.max_pct,
        stats.argmax_re,
        stats.argmax_rough,
        stats.mean_pct,
        stats.p99_pct
    )
}

fn cmd_table1(cfg: &CliConfig, a: Table1Args, out: &mut dyn Write) -> Result<()> {
    let grid = a.grid.apply(cfg.grid)?;
    let report = table1_report(&grid, tolerance(a.tol, cfg)?, workers(a.workers, cfg)?)?;
    if let Some(p) = &a.csv {
        let path = cfg.output_path(p);
        std::fs::write(&path, report.to_csv()).map_err(|e| Error::io(&path, e))?;
    }
    write_out(out, format_args!("{report}"))
}

fn cmd_bench(a: BenchArgs, out: &mut dyn Write) -> Result<()> {
    let ids: Vec<String> = if a.schemes.iter().any(|s| s == "all") {
        REGISTRY_IDS.iter().map(|s| s.to_string()).collect()
    } else {
        a.schemes
    };
    let specs = ids
        .iter()
        .map(|id| SchemeSpec::lookup(id))
        .collect::<Result<Vec<_>>>()?;
    if a.batch == 0 {
        return Err(Error::config("batch must be at least 1"));
    }
    let batch = sobol_points(a.batch, &GridSpec::default(), SobolMapping::LogUniform)?;
    let report = benchmark(&specs, &batch, a.reps)?;

    outln!(
        out,
        "{:<14} {:>5} {:>5} {:>5} {:>12} {:>10}",
        "scheme",
        "logs",
        "sins",
        "divs",
        "median_ns",
        "mad_ns"
    )?;
    for r in &report.records {
        let t = r.timing();
        outln!(
            out,
            "{:<14} {:>5} {:>5} {:>5} {:>12.2} {:>10.2}",
            r.scheme_id,
            r.profile.n_log,
            r.profile.n_sin,
            r.profile.n_div,
            t.median_ns,
            t.mad_ns
        )?;
    }
    if let Some(faster) = report.pade_faster {
        outln!(
            out,
            "eq2a2-pade faster than eq2a2: {}",
            if faster { "yes" } else { "no" }
        )?;
    }
    Ok(())
}

fn cmd_kernels(a: KernelArgs, out: &mut dyn Write) -> Result<()> {
    let kinds = if a.checks.is_empty() {
        vec![
            KernelKind::LnPade,
            KernelKind::SinPade,
            KernelKind::SinQuintic,
        ]
    } else {
        a.checks
    };
    for kind in kinds {
        let window = match (a.lo, a.hi) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => kind.default_window(),
        };
        let r = sweep(kind, window, a.sweep)?;
        outln!(
            out,
            "{} window=({}, {}) points={} max_rel_err_pct={:.6e} at={} bound_pct={} {}",
            kind.name(),
            r.window.0,
            r.window.1,
            r.points,
            100.0 * r.max_rel_err,
            r.argmax,
            100.0 * kind.bound(),
            if r.passes() { "PASS" } else { "FAIL" }
        )?;
    }
    Ok(())
}

fn cmd_grid(cfg: &CliConfig, a: GridArgs, out: &mut dyn Write) -> Result<()> {
    let grid = a.grid.apply(cfg.grid)?;
    let points = build_grid(&grid)?;
    let inside = points.iter().filter(|p| p.is_in_domain()).count();
    let spacing = |s: Spacing| match s {
        Spacing::Log => "log",
        Spacing::Linear => "linear",
    };
    outln!(
        out,
        "points {} ({}x{})",
        grid.len(),
        grid.n_re,
        grid.n_rough
    )?;
    outln!(
        out,
        "re {} .. {} {}",
        grid.re_min,
        grid.re_max,
        spacing(grid.re_spacing)
    )?;
    outln!(
        out,
        "rough {} .. {} {}",
        grid.rough_min,
        grid.rough_max,
        spacing(grid.rough_spacing)
    )?;
    outln!(out, "in_domain {inside}")?;
    if a.points {
        outln!(out, "re,rel_rough")?;
        for p in &points {
            outln!(out, "{},{}", p.re(), p.rel_rough())?;
        }
    }
    Ok(())
}
