//! Explicit starters, the fixed-point acceleration step (direct and
//! log-transformed) and the registry of named schemes composed from them.
//!
//! Scheme ids follow the equation labels of the approximations:
//!
//! | id            | meaning                                              |
//! |---------------|------------------------------------------------------|
//! | `eqN`         | starter `N ∈ {2,…,6}` alone                          |
//! | `eqNa`, `eqNa1` | starter plus one acceleration step                |
//! | `eqNaK`       | starter plus `K` acceleration steps                  |
//! | `…-pade`      | second step through the one-logarithm Padé path      |
//! | `…-t`         | steps through the log-transformed accelerator        |
//!
//! Modifiers may follow the base id: `+sin-pade` / `+sin-quintic` swap the
//! sine for a rational kernel (starters 4–6 only) and `+const-full` uses
//! full-precision constants in the transformed accelerator.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::{self, colebrook_rhs, FlowPoint, FrictionIterate, NormalizedPoint};
use crate::kernels;

/// Highest number of acceleration steps accepted by the id grammar.
pub const MAX_ACCEL_STEPS: usize = 8;

/// The eight schemes of the accuracy-versus-complexity table, in table order.
pub const TABLE1_IDS: [&str; 8] = [
    "eq2a2", "eq6a", "eq5a", "eq2a1", "eq6", "eq5", "eq4a", "eq3a",
];

/// Every base id the registry exposes.
pub const REGISTRY_IDS: [&str; 18] = [
    "eq2",
    "eq2a1",
    "eq2a2",
    "eq2a2-pade",
    "eq3",
    "eq3a",
    "eq4",
    "eq4a",
    "eq5",
    "eq5a",
    "eq6",
    "eq6a",
    "eq2a1-t",
    "eq2a2-t",
    "eq3a-t",
    "eq4a-t",
    "eq5a-t",
    "eq6a-t",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Starter {
    /// Rational polynomial in raw `Re`, `ε/D`.
    Eq2,
    /// `3.13·b − 1.56·b²/a`.
    Eq3,
    Eq4,
    Eq5,
    Eq6,
}

impl Starter {
    pub fn number(self) -> u8 {
        match self {
            Starter::Eq2 => 2,
            Starter::Eq3 => 3,
            Starter::Eq4 => 4,
            Starter::Eq5 => 5,
            Starter::Eq6 => 6,
        }
    }

    fn from_number(n: u8) -> Option<Self> {
        Some(match n {
            2 => Starter::Eq2,
            3 => Starter::Eq3,
            4 => Starter::Eq4,
            5 => Starter::Eq5,
            6 => Starter::Eq6,
            _ => return None,
        })
    }

    /// Whether the starter consumes `a = log10 Re` and `b = −log10 ε/D`.
    pub fn is_normalized(self) -> bool {
        self != Starter::Eq2
    }

    pub fn has_sine(self) -> bool {
        matches!(self, Starter::Eq4 | Starter::Eq5 | Starter::Eq6)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AccelForm {
    /// `x ← −2·log10(2.51·x/Re + (ε/D)/3.71)`.
    Direct,
    /// `x ← c₁ + 2b − c₂·ln(1 − θ)`.
    Transformed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LogStrategy {
    Exact,
    /// Second of two direct steps via the Padé logarithm of `y₁/y₂`.
    PadeOneLog,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SinStrategy {
    Exact,
    Pade,
    Quintic,
}

impl SinStrategy {
    pub fn name(self) -> &'static str {
        match self {
            SinStrategy::Exact => "exact",
            SinStrategy::Pade => "pade",
            SinStrategy::Quintic => "quintic",
        }
    }
}

impl std::str::FromStr for SinStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(SinStrategy::Exact),
            "pade" => Ok(SinStrategy::Pade),
            "quintic" => Ok(SinStrategy::Quintic),
            other => Err(Error::config(format!(
                "unknown sine strategy `{other}` (expected exact, pade or quintic)"
            ))),
        }
    }
}

/// Constants of the transformed accelerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TransformConstants {
    /// `1.1387478` and `0.8686` as printed.
    Printed,
    /// `2·log10(3.71)` and `2/ln 10` to machine precision.
    Full,
}

impl TransformConstants {
    pub fn offset(self) -> f64 {
        match self {
            TransformConstants::Printed => 1.138_747_8,
            TransformConstants::Full => 2.0 * flow::ROUGHNESS_DIVISOR.log10(),
        }
    }

    pub fn ln_factor(self) -> f64 {
        match self {
            TransformConstants::Printed => 0.8686,
            TransformConstants::Full => 2.0 / std::f64::consts::LN_10,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TransformConstants::Printed => "printed",
            TransformConstants::Full => "full",
        }
    }
}

impl std::str::FromStr for TransformConstants {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(TransformConstants::Printed),
            "full" => Ok(TransformConstants::Full),
            other => Err(Error::config(format!(
                "unknown constants mode `{other}` (expected printed or full)"
            ))),
        }
    }
}

/// A named recipe: starter, acceleration steps and kernel choices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SchemeSpec {
    id: String,
    starter: Starter,
    accel_steps: usize,
    accel_form: AccelForm,
    log_strategy: LogStrategy,
    sin_strategy: SinStrategy,
    constants: TransformConstants,
}

impl SchemeSpec {
    /// Resolves a scheme id, including modifiers, to its recipe.
    pub fn lookup(id: &str) -> Result<Self> {
        let unknown = || Error::UnknownScheme(id.to_string());
        let mut parts = id.split('+');
        let base = parts.next().unwrap_or_default();

        let rest = base.strip_prefix("eq").ok_or_else(unknown)?;
        let mut chars = rest.chars();
        let starter = chars
            .next()
            .and_then(|c| c.to_digit(10))
            .and_then(|d| Starter::from_number(d as u8))
            .ok_or_else(unknown)?;
        let rest = chars.as_str();

        let (steps_part, suffix) = match rest.find('-') {
            Some(i) => (&rest[..i], Some(&rest[i + 1..])),
            None => (rest, None),
        };
        let accel_steps = match steps_part {
            "" => 0,
            "a" => 1,
            s => {
                let k = s.strip_prefix('a').ok_or_else(unknown)?;
                let k: usize = k.parse().map_err(|_| unknown())?;
                if k == 0 || k > MAX_ACCEL_STEPS {
                    return Err(unknown());
                }
                k
            }
        };
        let (accel_form, log_strategy) = match suffix {
            None => (AccelForm::Direct, LogStrategy::Exact),
            Some("t") => (AccelForm::Transformed, LogStrategy::Exact),
            Some("pade") => (AccelForm::Direct, LogStrategy::PadeOneLog),
            Some(_) => return Err(unknown()),
        };

        let mut spec = SchemeSpec {
            id: id.to_string(),
            starter,
            accel_steps,
            accel_form,
            log_strategy,
            sin_strategy: SinStrategy::Exact,
            constants: TransformConstants::Printed,
        };
        for modifier in parts {
            match modifier {
                "sin-pade" => spec.sin_strategy = SinStrategy::Pade,
                "sin-quintic" => spec.sin_strategy = SinStrategy::Quintic,
                "sin-exact" => spec.sin_strategy = SinStrategy::Exact,
                "const-full" => spec.constants = TransformConstants::Full,
                "const-printed" => spec.constants = TransformConstants::Printed,
                _ => return Err(unknown()),
            }
        }
        spec.validate()?;
        Ok(spec)
    }

    /// All base registry entries.
    pub fn registry() -> Vec<SchemeSpec> {
        REGISTRY_IDS
            .iter()
            .map(|id| SchemeSpec::lookup(id).expect("registry ids are valid"))
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if self.log_strategy == LogStrategy::PadeOneLog
            && (self.accel_steps != 2 || self.accel_form != AccelForm::Direct)
        {
            return Err(Error::config(format!(
                "{}: the one-log Padé strategy needs exactly two direct acceleration steps",
                self.id
            )));
        }
        if self.accel_form == AccelForm::Transformed && self.accel_steps == 0 {
            return Err(Error::config(format!(
                "{}: transformed form needs at least one acceleration step",
                self.id
            )));
        }
        if !self.starter.has_sine() && self.sin_strategy != SinStrategy::Exact {
            return Err(Error::config(format!(
                "{}: starter eq{} has no sine term, sine strategy must be exact",
                self.id,
                self.starter.number()
            )));
        }
        Ok(())
    }

    /// Same scheme with a different sine strategy; the id gains a modifier.
    pub fn with_sin(&self, sin: SinStrategy) -> Result<Self> {
        if sin == self.sin_strategy {
            return Ok(self.clone());
        }
        let base = self.id.split('+').next().unwrap_or_default();
        let mut id = base.to_string();
        if sin != SinStrategy::Exact {
            id.push_str(&format!("+sin-{}", sin.name()));
        }
        if self.constants == TransformConstants::Full {
            id.push_str("+const-full");
        }
        SchemeSpec::lookup(&id)
    }

    /// Same scheme with different transformed-accelerator constants.
    pub fn with_constants(&self, constants: TransformConstants) -> Result<Self> {
        if constants == self.constants {
            return Ok(self.clone());
        }
        let base = self.id.split('+').next().unwrap_or_default();
        let mut id = base.to_string();
        if self.sin_strategy != SinStrategy::Exact {
            id.push_str(&format!("+sin-{}", self.sin_strategy.name()));
        }
        if constants == TransformConstants::Full {
            id.push_str("+const-full");
        }
        SchemeSpec::lookup(&id)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn starter(&self) -> Starter {
        self.starter
    }

    pub fn accel_steps(&self) -> usize {
        self.accel_steps
    }

    pub fn accel_form(&self) -> AccelForm {
        self.accel_form
    }

    pub fn log_strategy(&self) -> LogStrategy {
        self.log_strategy
    }

    pub fn sin_strategy(&self) -> SinStrategy {
        self.sin_strategy
    }

    pub fn constants(&self) -> TransformConstants {
        self.constants
    }
}

impl fmt::Display for SchemeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}

/// A sine evaluated under some strategy. Kernel strategies fall back to the
/// exact sine outside their accuracy window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SineEval {
    pub arg: f64,
    pub value: f64,
    pub fallback: bool,
}

pub fn eval_sine(strategy: SinStrategy, arg: f64) -> SineEval {
    let kernel = match strategy {
        SinStrategy::Exact => {
            return SineEval {
                arg,
                value: arg.sin(),
                fallback: false,
            }
        }
        SinStrategy::Pade => kernels::pade_sin_checked(arg),
        SinStrategy::Quintic => kernels::quintic_sin_checked(arg),
    };
    if kernel.in_window {
        SineEval {
            arg,
            value: kernel.value,
            fallback: false,
        }
    } else {
        SineEval {
            arg,
            value: arg.sin(),
            fallback: true,
        }
    }
}

/// A sine-bearing starter's estimate plus the audited sine evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SineStart {
    pub iterate: FrictionIterate,
    pub sine: SineEval,
}

/// Rational polynomial starter in raw inputs:
///
/// ```text
/// x₀ = 4.34·Re/(Re + 129000·Re·ε + 7850000)
///    + 781·Re/(187·Re + 133000·Re·ε + 8960000) − 20.5·ε + 4.85
/// ```
pub fn starter_eq2(point: &FlowPoint) -> Result<FrictionIterate> {
    let re = point.re();
    let k = point.rel_rough();
    let x0 = 4.34 * re / (re + 129_000.0 * re * k + 7_850_000.0)
        + 781.0 * re / (187.0 * re + 133_000.0 * re * k + 8_960_000.0)
        - 20.5 * k
        + 4.85;
    FrictionIterate::new(x0, 0)
}

pub fn starter_eq3(norm: &NormalizedPoint) -> Result<FrictionIterate> {
    let NormalizedPoint { a, b } = *norm;
    if a == 0.0 {
        return Err(Error::domain("starter eq3 divides by a = log10(Re) = 0"));
    }
    FrictionIterate::new(3.13 * b - 1.56 * b * b / a, 0)
}

pub fn starter_eq4(norm: &NormalizedPoint, sin: SinStrategy) -> Result<SineStart> {
    let NormalizedPoint { a, b } = *norm;
    let sine = eval_sine(sin, 0.937 * a - b);
    let x0 = b + 0.904 * a + 1.08 * sine.value - 1.85;
    Ok(SineStart {
        iterate: FrictionIterate::new(x0, 0)?,
        sine,
    })
}

pub fn starter_eq5(norm: &NormalizedPoint, sin: SinStrategy) -> Result<SineStart> {
    let NormalizedPoint { a, b } = *norm;
    let sine = eval_sine(sin, 0.935 * a - b);
    let x0 =
        a + 0.61 * b + 0.28 * a * b + 0.51 * sine.value - 0.894 - 0.103 * a * a - 0.158 * b * b;
    Ok(SineStart {
        iterate: FrictionIterate::new(x0, 0)?,
        sine,
    })
}

/// The `sin²` term reuses the single sine evaluation.
pub fn starter_eq6(norm: &NormalizedPoint, sin: SinStrategy) -> Result<SineStart> {
    let NormalizedPoint { a, b } = *norm;
    let sine = eval_sine(sin, 0.939 * a - b);
    let s = sine.value;
    let x0 = 1.15 * a + 0.569 * b + 0.292 * a * b + 0.478 * s + 0.122 * s * s
        - 1.284
        - 0.12 * a * a
        - 0.162 * b * b;
    Ok(SineStart {
        iterate: FrictionIterate::new(x0, 0)?,
        sine,
    })
}

/// One fixed-point step through the Colebrook map.
pub fn accelerate(point: &FlowPoint, it: &FrictionIterate) -> Result<FrictionIterate> {
    it.advance(colebrook_rhs(point, it.x())?)
}

/// `θ = −2.51·3.71·x / ((ε/D)·Re)`; always negative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Theta(f64);

impl Theta {
    pub fn value(self) -> f64 {
        self.0
    }
}

pub fn theta(point: &FlowPoint, x: f64) -> Result<Theta> {
    if !(point.rel_rough() > 0.0) {
        return Err(Error::domain("theta undefined for eps/D = 0"));
    }
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::domain(format!(
            "x must be finite and positive, got {x}"
        )));
    }
    Ok(Theta(
        -flow::REYNOLDS_COEFF * flow::ROUGHNESS_DIVISOR * x / (point.rel_rough() * point.re()),
    ))
}

/// One fixed-point step in the log-transformed form
/// `x ← c₁ + 2b − c₂·ln(1 − θ)`, with `b = −log10(ε/D)`.
pub fn accelerate_transformed(
    point: &FlowPoint,
    it: &FrictionIterate,
    constants: TransformConstants,
) -> Result<FrictionIterate> {
    let b = flow::normalized_roughness(point)?;
    accelerate_transformed_with_b(point, b, it, constants)
}

/// As [`accelerate_transformed`] with an already computed `b`.
pub fn accelerate_transformed_with_b(
    point: &FlowPoint,
    b: f64,
    it: &FrictionIterate,
    constants: TransformConstants,
) -> Result<FrictionIterate> {
    let th = theta(point, it.x())?.value();
    it.advance(constants.offset() + 2.0 * b - constants.ln_factor() * (-th).ln_1p())
}

/// Side information gathered while evaluating a scheme.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct SchemeTrace {
    pub sine: Option<SineEval>,
    /// Ratio handed to the Padé logarithm on the one-log path.
    pub pade_z: Option<f64>,
}

pub fn evaluate_scheme(spec: &SchemeSpec, point: &FlowPoint) -> Result<FrictionIterate> {
    evaluate_scheme_traced(spec, point).map(|(it, _)| it)
}

/// Starter, then `accel_steps` acceleration steps, with kernel substitutions.
pub fn evaluate_scheme_traced(
    spec: &SchemeSpec,
    point: &FlowPoint,
) -> Result<(FrictionIterate, SchemeTrace)> {
    let mut trace = SchemeTrace::default();

    let norm = if spec.starter.is_normalized() {
        Some(flow::normalize(point)?)
    } else {
        None
    };
    let start = match spec.starter {
        Starter::Eq2 => starter_eq2(point)?,
        Starter::Eq3 => starter_eq3(norm.as_ref().expect("normalized"))?,
        s => {
            let n = norm.as_ref().expect("normalized");
            let out = match s {
                Starter::Eq4 => starter_eq4(n, spec.sin_strategy)?,
                Starter::Eq5 => starter_eq5(n, spec.sin_strategy)?,
                _ => starter_eq6(n, spec.sin_strategy)?,
            };
            trace.sine = Some(out.sine);
            out.iterate
        }
    };

    let it = match (spec.log_strategy, spec.accel_form) {
        (LogStrategy::PadeOneLog, _) => {
            let step = kernels::one_log_second_iteration_traced(point, start.x())?;
            trace.pade_z = Some(step.z);
            step.second
        }
        (LogStrategy::Exact, AccelForm::Direct) => {
            let mut it = start;
            for _ in 0..spec.accel_steps {
                it = accelerate(point, &it)?;
            }
            it
        }
        (LogStrategy::Exact, AccelForm::Transformed) => {
            // b is recycled from the normalization when there is one
            let b = match norm {
                Some(n) => n.b,
                None => flow::normalized_roughness(point)?,
            };
            let mut it = start;
            for _ in 0..spec.accel_steps {
                it = accelerate_transformed_with_b(point, b, &it, spec.constants)?;
            }
            it
        }
    };
    Ok((it, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{normalize, solve_colebrook};

    fn np(a: f64, b: f64) -> NormalizedPoint {
        NormalizedPoint { a, b }
    }

    #[test]
    fn eq2_examples() {
        let p = FlowPoint::new(4000.0, 0.0).unwrap();
        // 5.174006795211623249...
        assert!((starter_eq2(&p).unwrap().x() - 5.174_006_795_211_623).abs() < 1e-13);
        let p = FlowPoint::new(1e8, 0.05).unwrap();
        // 3.939902646760375860...
        assert!((starter_eq2(&p).unwrap().x() - 3.939_902_646_760_376).abs() < 1e-13);
        assert_eq!(starter_eq2(&p).unwrap().step(), 0);
    }

    #[test]
    fn eq3_examples() {
        // 3.13·1.30103 − 1.56·1.30103²/8 = 3.7421514831245
        let x = starter_eq3(&np(8.0, 1.30103)).unwrap().x();
        assert!((x - 3.742_151_483_124_5).abs() < 1e-12);
        let x = starter_eq3(&np(4.0, 2.0)).unwrap().x();
        assert!((x - 4.70).abs() < 1e-12);
        assert!(matches!(starter_eq3(&np(0.0, 2.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn eq4_examples() {
        // 1.30103 + 7.232 + 1.08·sin(6.19497) − 1.85 = 6.587880987702838...
        let out = starter_eq4(&np(8.0, 1.30103), SinStrategy::Exact).unwrap();
        assert!((out.iterate.x() - 6.587_880_987_702_838).abs() < 1e-12);
        assert!((out.sine.arg - 6.19497).abs() < 1e-12);
        // zero sine argument: b = 0.937·a
        let a = 5.0;
        let b = 0.937 * a;
        let out = starter_eq4(&np(a, b), SinStrategy::Exact).unwrap();
        assert!((out.iterate.x() - (b + 0.904 * a - 1.85)).abs() < 1e-12);
    }

    #[test]
    fn eq5_examples() {
        // 6.646233611169035730...
        let out = starter_eq5(&np(5.0, 3.0), SinStrategy::Exact).unwrap();
        assert!((out.iterate.x() - 6.646_233_611_169_036).abs() < 1e-12);
        let a = 6.0;
        let b = 0.935 * a;
        let x = starter_eq5(&np(a, b), SinStrategy::Exact)
            .unwrap()
            .iterate
            .x();
        let expect = a + 0.61 * b + 0.28 * a * b - 0.894 - 0.103 * a * a - 0.158 * b * b;
        assert!((x - expect).abs() < 1e-12);
    }

    #[test]
    fn eq6_examples() {
        // 5.091292099156339967...
        let out = starter_eq6(&np(6.0, 2.0), SinStrategy::Exact).unwrap();
        assert!((out.iterate.x() - 5.091_292_099_2).abs() < 1e-10);
        let a = 6.0;
        let b = 0.939 * a;
        let x = starter_eq6(&np(a, b), SinStrategy::Exact)
            .unwrap()
            .iterate
            .x();
        let expect = 1.15 * a + 0.569 * b + 0.292 * a * b - 1.284 - 0.12 * a * a - 0.162 * b * b;
        assert!((x - expect).abs() < 1e-12);
    }

    #[test]
    fn sine_fallback_outside_window() {
        let inside = eval_sine(SinStrategy::Pade, 0.5);
        assert!(!inside.fallback);
        assert_eq!(inside.value, kernels::pade_sin(0.5));
        let outside = eval_sine(SinStrategy::Quintic, 3.0);
        assert!(outside.fallback);
        assert_eq!(outside.value, 3.0f64.sin());
        assert!(!eval_sine(SinStrategy::Exact, 3.0).fallback);
    }

    #[test]
    fn accelerate_example() {
        let p = FlowPoint::new(1e5, 1e-4).unwrap();
        let it = FrictionIterate::new(7.0, 0).unwrap();
        let next = accelerate(&p, &it).unwrap();
        assert_eq!(next.step(), 1);
        assert!((next.x() - 7.386_488_876_919_739).abs() < 1e-13);
        let xs = solve_colebrook(&p).unwrap().iterate;
        assert!((accelerate(&p, &xs).unwrap().x() - xs.x()).abs() < 1e-12);
    }

    #[test]
    fn theta_examples() {
        let p = FlowPoint::new(1e8, 0.05).unwrap();
        let th = theta(&p, 3.9399).unwrap().value();
        assert!((th - (-7.337_748_558e-6)).abs() < 1e-15);
        assert!(theta(&FlowPoint::new(1e8, 0.0).unwrap(), 3.9).is_err());
        assert!(theta(&p, 0.0).is_err());
    }

    #[test]
    fn transformed_matches_direct() {
        let p = FlowPoint::new(1e5, 1e-4).unwrap();
        let it = FrictionIterate::new(7.0, 0).unwrap();
        let direct = accelerate(&p, &it).unwrap().x();
        let printed = accelerate_transformed(&p, &it, TransformConstants::Printed).unwrap();
        assert_eq!(printed.step(), 1);
        assert!((printed.x() - direct).abs() / direct <= 1e-3);
        let full = accelerate_transformed(&p, &it, TransformConstants::Full).unwrap();
        assert!((full.x() - direct).abs() / direct <= 1e-12);
        let smooth = FlowPoint::new(1e5, 0.0).unwrap();
        assert!(accelerate_transformed(&smooth, &it, TransformConstants::Full).is_err());
    }

    #[test]
    fn registry_resolves() {
        for id in REGISTRY_IDS {
            let s = SchemeSpec::lookup(id).unwrap();
            assert_eq!(s.id(), id);
        }
        for id in TABLE1_IDS {
            assert!(REGISTRY_IDS.contains(&id));
        }
        let s = SchemeSpec::lookup("eq2a2-pade").unwrap();
        assert_eq!(s.accel_steps(), 2);
        assert_eq!(s.log_strategy(), LogStrategy::PadeOneLog);
        let s = SchemeSpec::lookup("eq6a-t+const-full").unwrap();
        assert_eq!(s.accel_form(), AccelForm::Transformed);
        assert_eq!(s.constants(), TransformConstants::Full);
        assert_eq!(SchemeSpec::lookup("eq2a").unwrap().accel_steps(), 1);
        assert_eq!(SchemeSpec::lookup("eq3a3").unwrap().accel_steps(), 3);
    }

    #[test]
    fn registry_rejects() {
        for id in [
            "",
            "eq",
            "eq7",
            "eq1a",
            "eq2b",
            "eq2a0",
            "eq2a99",
            "eq2-x",
            "eq2a1-pade",
            "eq2-pade",
            "eq2-t",
            "eq2+sin-pade",
            "eq3a+sin-quintic",
            "eq4+bogus",
            "colebrook",
        ] {
            assert!(SchemeSpec::lookup(id).is_err(), "{id} should not resolve");
        }
        assert!(matches!(
            SchemeSpec::lookup("eq9"),
            Err(Error::UnknownScheme(_))
        ));
        assert!(matches!(
            SchemeSpec::lookup("eq2a1-pade"),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn with_sin_and_constants() {
        let s = SchemeSpec::lookup("eq6a").unwrap();
        let q = s.with_sin(SinStrategy::Quintic).unwrap();
        assert_eq!(q.id(), "eq6a+sin-quintic");
        assert_eq!(SchemeSpec::lookup(q.id()).unwrap(), q);
        assert_eq!(q.with_sin(SinStrategy::Exact).unwrap().id(), "eq6a");
        assert!(SchemeSpec::lookup("eq2a2")
            .unwrap()
            .with_sin(SinStrategy::Pade)
            .is_err());
        let t = SchemeSpec::lookup("eq4a-t+sin-pade").unwrap();
        let f = t.with_constants(TransformConstants::Full).unwrap();
        assert_eq!(f.id(), "eq4a-t+sin-pade+const-full");
    }

    #[test]
    fn evaluate_plain_starter_is_starter() {
        let p = FlowPoint::new(3e5, 2e-3).unwrap();
        let s = SchemeSpec::lookup("eq2").unwrap();
        assert_eq!(evaluate_scheme(&s, &p).unwrap(), starter_eq2(&p).unwrap());
        let s = SchemeSpec::lookup("eq6").unwrap();
        let n = normalize(&p).unwrap();
        assert_eq!(
            evaluate_scheme(&s, &p).unwrap(),
            starter_eq6(&n, SinStrategy::Exact).unwrap().iterate
        );
    }

    #[test]
    fn evaluate_eq2a2_example() {
        let p = FlowPoint::new(1e5, 1e-4).unwrap();
        let exact = solve_colebrook(&p).unwrap().iterate.lambda();
        let spec = SchemeSpec::lookup("eq2a2").unwrap();
        let it = evaluate_scheme(&spec, &p).unwrap();
        assert_eq!(it.step(), 2);
        assert!((it.lambda() - exact).abs() / exact * 100.0 <= 0.13);
        let pade = SchemeSpec::lookup("eq2a2-pade").unwrap();
        let (pit, trace) = evaluate_scheme_traced(&pade, &p).unwrap();
        assert_eq!(pit.step(), 2);
        assert!(trace.pade_z.is_some());
        assert!((pit.lambda() - it.lambda()).abs() / it.lambda() * 100.0 <= 1e-8);
    }

    #[test]
    fn normalized_schemes_reject_smooth_pipes() {
        let p = FlowPoint::new(1e5, 0.0).unwrap();
        for id in ["eq3", "eq5a", "eq2a1-t"] {
            let s = SchemeSpec::lookup(id).unwrap();
            assert!(
                matches!(evaluate_scheme(&s, &p), Err(Error::Domain(_))),
                "{id}"
            );
        }
        // raw-input schemes accept it
        let s = SchemeSpec::lookup("eq2a2").unwrap();
        assert!(evaluate_scheme(&s, &p).is_ok());
    }

    #[test]
    fn sine_trace_recorded() {
        let p = FlowPoint::new(1e5, 1e-4).unwrap();
        let s = SchemeSpec::lookup("eq5a+sin-pade").unwrap();
        let (_, trace) = evaluate_scheme_traced(&s, &p).unwrap();
        let sine = trace.sine.unwrap();
        // 0.935·5 − 4 = 0.675 lies in the kernel window
        assert!((sine.arg - 0.675).abs() < 1e-12);
        assert!(!sine.fallback);
        assert!(kernels::in_sine_window(sine.arg));
    }
}
