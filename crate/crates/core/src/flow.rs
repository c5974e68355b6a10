//! Domain types, the Colebrook right-hand side, the reference solver,
//! input normalization and the relative-error metric.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::schemes;

/// Lower Reynolds bound of the validated turbulent domain.
pub const RE_MIN: f64 = 4000.0;
/// Upper Reynolds bound of the validated turbulent domain.
pub const RE_MAX: f64 = 1e8;
/// Upper relative-roughness bound of the validated domain.
pub const ROUGH_MAX: f64 = 0.05;
/// Smallest ε/D accepted by the normalized and log-transformed paths.
pub const MIN_NORMALIZED_ROUGHNESS: f64 = 1e-9;

/// Constant in front of `x/Re` inside the logarithm.
pub const REYNOLDS_COEFF: f64 = 2.51;
/// Divisor of ε/D inside the logarithm.
pub const ROUGHNESS_DIVISOR: f64 = 3.71;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 100;

/// Initial guess used by the reference solver outside the validated domain.
const FALLBACK_GUESS: f64 = 8.0;

/// One `(Re, ε/D)` input pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlowPoint {
    re: f64,
    rel_rough: f64,
    in_domain: bool,
}

impl FlowPoint {
    /// Builds a point inside the validated domain `Re ∈ [4000, 1e8]`,
    /// `ε/D ∈ [0, 0.05]`; anything else is a domain error.
    pub fn new(re: f64, rel_rough: f64) -> Result<Self> {
        let p = Self::out_of_domain(re, rel_rough)?;
        if !p.in_domain {
            return Err(Error::domain(format!(
                "(Re={re}, eps/D={rel_rough}) outside Re in [{RE_MIN}, {RE_MAX}], \
                 eps/D in [0, {ROUGH_MAX}]"
            )));
        }
        Ok(p)
    }

    /// Builds a point anywhere with `Re > 0` and `ε/D ≥ 0`, recording whether
    /// it lies in the validated domain. Schemes still evaluate such points.
    pub fn out_of_domain(re: f64, rel_rough: f64) -> Result<Self> {
        if !re.is_finite() || !rel_rough.is_finite() {
            return Err(Error::domain(format!(
                "non-finite input (Re={re}, eps/D={rel_rough})"
            )));
        }
        if re <= 0.0 {
            return Err(Error::domain(format!(
                "Reynolds number must be positive, got {re}"
            )));
        }
        if rel_rough < 0.0 {
            return Err(Error::domain(format!(
                "relative roughness must be non-negative, got {rel_rough}"
            )));
        }
        let in_domain = (RE_MIN..=RE_MAX).contains(&re) && rel_rough <= ROUGH_MAX;
        Ok(Self {
            re,
            rel_rough,
            in_domain,
        })
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn rel_rough(&self) -> f64 {
        self.rel_rough
    }

    pub fn is_in_domain(&self) -> bool {
        self.in_domain
    }

    /// Lexicographic `(Re, ε/D)` ordering, used for deterministic tie-breaks.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.re
            .total_cmp(&other.re)
            .then(self.rel_rough.total_cmp(&other.rel_rough))
    }
}

/// `a = log10(Re)`, `b = −log10(ε/D)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalizedPoint {
    pub a: f64,
    pub b: f64,
}

impl NormalizedPoint {
    /// Inverse of [`normalize`]: `(10^a, 10^−b)`.
    pub fn denormalize(&self) -> (f64, f64) {
        (10f64.powf(self.a), 10f64.powf(-self.b))
    }
}

/// An estimate `x = 1/√λ` together with its position in an acceleration
/// chain (0 for a starter, +1 per fixed-point step).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrictionIterate {
    x: f64,
    step: usize,
}

impl FrictionIterate {
    pub fn new(x: f64, step: usize) -> Result<Self> {
        if !(x.is_finite() && x > 0.0) {
            return Err(Error::domain(format!(
                "friction iterate 1/sqrt(lambda) must be finite and positive, got {x}"
            )));
        }
        Ok(Self { x, step })
    }

    /// `1/√λ`.
    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn step(&self) -> usize {
        self.step
    }

    /// Darcy friction factor `λ = x⁻²`.
    pub fn lambda(&self) -> f64 {
        1.0 / (self.x * self.x)
    }

    /// The next iterate in the chain with value `x`.
    pub(crate) fn advance(&self, x: f64) -> Result<Self> {
        Self::new(x, self.step + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolveReport {
    pub iterate: FrictionIterate,
    pub iterations: usize,
    /// `|x_{k+1} − x_k|` of the last iteration.
    pub residual: f64,
    pub converged: bool,
}

/// The argument `2.51·x/Re + (ε/D)/3.71` of the Colebrook logarithm.
#[inline]
pub fn log_argument(point: &FlowPoint, x: f64) -> f64 {
    REYNOLDS_COEFF * x / point.re + point.rel_rough / ROUGHNESS_DIVISOR
}

/// Right-hand side `−2·log10(2.51·x/Re + (ε/D)/3.71)` of the Colebrook
/// equation. This is the one implementation of the fixed-point map; the
/// acceleration step in [`schemes`] calls it directly.
pub fn colebrook_rhs(point: &FlowPoint, x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::domain(format!(
            "x must be finite and positive, got {x}"
        )));
    }
    let y = log_argument(point, x);
    if !(y > 0.0) {
        return Err(Error::domain(format!(
            "logarithm argument {y} is not positive"
        )));
    }
    Ok(-2.0 * y.log10())
}

/// Reference solution of the Colebrook equation with the default tolerance
/// (1e-12 on successive iterates) and iteration cap (100).
pub fn solve_colebrook(point: &FlowPoint) -> Result<SolveReport> {
    solve_colebrook_exact(point, DEFAULT_TOL, DEFAULT_MAX_ITER)
}

/// Reference solution by plain fixed-point iteration on `x`, started from
/// the raw-input starter in-domain and from `x = 8` elsewhere.
pub fn solve_colebrook_exact(point: &FlowPoint, tol: f64, max_iter: usize) -> Result<SolveReport> {
    let x0 = if point.in_domain {
        schemes::starter_eq2(point)?.x()
    } else {
        FALLBACK_GUESS
    };
    solve_colebrook_from(point, x0, tol, max_iter)
}

/// Fixed-point iteration `x ← colebrook_rhs(x)` from an explicit start.
/// Stops once `|x_{k+1} − x_k| ≤ tol`.
pub fn solve_colebrook_from(
    point: &FlowPoint,
    x0: f64,
    tol: f64,
    max_iter: usize,
) -> Result<SolveReport> {
    if !(tol > 0.0) {
        return Err(Error::config(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if max_iter == 0 {
        return Err(Error::config("max_iter must be at least 1"));
    }
    let mut x = x0;
    let mut residual = f64::INFINITY;
    for k in 1..=max_iter {
        let next = colebrook_rhs(point, x)?;
        residual = (next - x).abs();
        x = next;
        if residual <= tol {
            return Ok(SolveReport {
                iterate: FrictionIterate::new(x, k)?,
                iterations: k,
                residual,
                converged: true,
            });
        }
    }
    Err(Error::NonConvergence {
        re: point.re,
        rel_rough: point.rel_rough,
        iterations: max_iter,
        last_x: x,
        residual,
    })
}

/// `a = log10(Re)`, `b = −log10(ε/D)`. Smooth pipes (`ε/D = 0`) and
/// roughness below 1e-9 have no normalized form.
pub fn normalize(point: &FlowPoint) -> Result<NormalizedPoint> {
    Ok(NormalizedPoint {
        a: point.re.log10(),
        b: normalized_roughness(point)?,
    })
}

/// `b = −log10(ε/D)` alone, with the same smooth-limit checks as [`normalize`].
pub fn normalized_roughness(point: &FlowPoint) -> Result<f64> {
    if point.rel_rough <= 0.0 {
        return Err(Error::domain(
            "normalization undefined for smooth limit (eps/D = 0)",
        ));
    }
    if point.rel_rough < MIN_NORMALIZED_ROUGHNESS {
        return Err(Error::domain(format!(
            "eps/D = {} below the normalized-path floor {MIN_NORMALIZED_ROUGHNESS}",
            point.rel_rough
        )));
    }
    Ok(-point.rel_rough.log10())
}

/// `|λ_accurate − λ| / λ_accurate · 100`.
pub fn relative_error_pct(lambda_accurate: f64, lambda_approx: f64) -> Result<f64> {
    if !(lambda_accurate > 0.0) || !lambda_accurate.is_finite() {
        return Err(Error::domain(format!(
            "reference friction factor must be positive, got {lambda_accurate}"
        )));
    }
    if !lambda_approx.is_finite() {
        return Err(Error::domain(format!(
            "approximate friction factor is not finite: {lambda_approx}"
        )));
    }
    Ok((lambda_accurate - lambda_approx).abs() / lambda_accurate * 100.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bisect_fixed_point(point: &FlowPoint) -> f64 {
        let f = |x: f64| x + 2.0 * (2.51 * x / point.re() + point.rel_rough() / 3.71).log10();
        let (mut lo, mut hi) = (1.0_f64, 20.0_f64);
        while hi - lo > 1e-14 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn rhs_examples() {
        let p = FlowPoint::new(1e5, 1e-4).unwrap();
        // mpmath, 40 digits: 7.386488876919739039...
        assert!((colebrook_rhs(&p, 7.0).unwrap() - 7.386_488_876_919_739).abs() < 1e-13);
        let smooth = FlowPoint::new(4000.0, 0.0).unwrap();
        // 5.006832531021810892...
        assert!((colebrook_rhs(&smooth, 5.0).unwrap() - 5.006_832_531_021_811).abs() < 1e-13);
    }

    #[test]
    fn rhs_rejects_bad_x() {
        let p = FlowPoint::new(1e5, 1e-4).unwrap();
        assert!(matches!(colebrook_rhs(&p, 0.0), Err(Error::Domain(_))));
        assert!(matches!(colebrook_rhs(&p, f64::NAN), Err(Error::Domain(_))));
        // smooth pipe with x < 0 gives a negative argument
        let s = FlowPoint::new(4000.0, 0.0).unwrap();
        assert!(colebrook_rhs(&s, -1.0).is_err());
    }

    #[test]
    fn solver_matches_bisection() {
        for (re, rough, lambda) in [
            (1e5, 1e-4, 0.018_512_499_481_647_09),
            (4000.0, 0.0, 0.039_907_014_055_634_9),
        ] {
            let p = FlowPoint::new(re, rough).unwrap();
            let report = solve_colebrook(&p).unwrap();
            assert!(report.converged);
            assert!(report.residual <= DEFAULT_TOL);
            let x_bis = bisect_fixed_point(&p);
            assert!((report.iterate.x() - x_bis).abs() < 1e-11);
            assert!((report.iterate.lambda() - lambda).abs() / lambda < 1e-11);
        }
    }

    #[test]
    fn fixed_point_identity() {
        let p = FlowPoint::new(1e5, 1e-4).unwrap();
        let x = solve_colebrook(&p).unwrap().iterate.x();
        assert!((colebrook_rhs(&p, x).unwrap() - x).abs() <= 10.0 * DEFAULT_TOL);
    }

    #[test]
    fn roughness_monotonicity() {
        let rough = FlowPoint::new(1e6, 0.05).unwrap();
        let smooth = FlowPoint::new(1e6, 1e-5).unwrap();
        let lr = solve_colebrook(&rough).unwrap().iterate.lambda();
        let ls = solve_colebrook(&smooth).unwrap().iterate.lambda();
        assert!(lr > ls);
    }

    #[test]
    fn non_convergence_reports_last_iterate() {
        let p = FlowPoint::new(1e5, 1e-4).unwrap();
        match solve_colebrook_from(&p, 8.0, 1e-12, 2) {
            Err(Error::NonConvergence {
                iterations, last_x, ..
            }) => {
                assert_eq!(iterations, 2);
                assert!(last_x > 7.0 && last_x < 8.0);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
        assert!(matches!(
            solve_colebrook_from(&p, 8.0, 0.0, 10),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            solve_colebrook_from(&p, 8.0, 1e-12, 0),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn domain_flagging() {
        assert!(FlowPoint::new(3999.0, 1e-3).is_err());
        assert!(FlowPoint::new(1e5, 0.06).is_err());
        let p = FlowPoint::out_of_domain(2000.0, 0.06).unwrap();
        assert!(!p.is_in_domain());
        // out-of-domain points are still solved
        assert!(solve_colebrook(&p).unwrap().converged);
        assert!(FlowPoint::out_of_domain(1e5, -1.0).is_err());
        assert!(FlowPoint::out_of_domain(0.0, 1e-3).is_err());
        assert!(FlowPoint::out_of_domain(f64::INFINITY, 1e-3).is_err());
    }

    #[test]
    fn normalize_examples() {
        let p = FlowPoint::new(1e8, 1e-3).unwrap();
        let n = normalize(&p).unwrap();
        assert_eq!(n.a, 8.0);
        assert_eq!(n.b, 3.0);
        let p = FlowPoint::new(4000.0, 1e-3).unwrap();
        assert!((normalize(&p).unwrap().a - 3.602_059_991_327_962).abs() < 1e-14);
        assert!(normalize(&FlowPoint::new(4000.0, 0.0).unwrap()).is_err());
        assert!(normalize(&FlowPoint::new(4000.0, 1e-10).unwrap()).is_err());
        assert!(normalize(&FlowPoint::new(4000.0, 1e-9).unwrap()).is_ok());
    }

    #[test]
    fn relative_error_examples() {
        assert_eq!(relative_error_pct(0.02, 0.02).unwrap(), 0.0);
        assert!((relative_error_pct(0.02, 0.021).unwrap() - 5.0).abs() < 1e-12);
        assert!((relative_error_pct(0.04, 0.03).unwrap() - 25.0).abs() < 1e-12);
        assert!(relative_error_pct(0.0, 0.03).is_err());
        assert!(relative_error_pct(-0.01, 0.03).is_err());
    }

    #[test]
    fn iterate_invariants() {
        let it = FrictionIterate::new(5.0, 0).unwrap();
        assert_eq!(it.lambda(), 1.0 / 25.0);
        assert_eq!(it.advance(4.0).unwrap().step(), 1);
        assert!(FrictionIterate::new(0.0, 0).is_err());
        assert!(FrictionIterate::new(-1.0, 0).is_err());
    }
}
