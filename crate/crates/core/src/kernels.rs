//! Rational replacements for the transcendental functions used by the
//! schemes: a Padé logarithm, the one-logarithm second acceleration step
//! built on it, and two sine approximants.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::{log_argument, FlowPoint, FrictionIterate};

/// Window on which the sine approximants are accurate (open interval).
pub const SINE_WINDOW: (f64, f64) = (-0.08821, 1.18456);
/// Window outside which [`pade_ln`] results are untrusted.
pub const PADE_LN_WINDOW: (f64, f64) = (0.5, 2.0);

/// A kernel value plus whether the argument was inside the kernel's
/// accuracy window. Callers decide what to do with out-of-window values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelValue {
    pub value: f64,
    pub in_window: bool,
}

/// Padé approximant of `ln z` about `z = 1`, evaluated in the printed
/// Horner nesting:
///
/// ```text
/// ln z ≈ (z(z(11z + 27) − 27) − 11) / (z(z(3z + 27) + 27) + 3)
/// ```
pub fn pade_ln(z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::domain(format!(
            "pade_ln argument must be positive, got {z}"
        )));
    }
    Ok(pade_ln_unchecked(z))
}

#[inline]
fn pade_ln_unchecked(z: f64) -> f64 {
    let num = z * (z * (11.0 * z + 27.0) - 27.0) - 11.0;
    let den = z * (z * (3.0 * z + 27.0) + 27.0) + 3.0;
    num / den
}

pub fn pade_ln_checked(z: f64) -> Result<KernelValue> {
    Ok(KernelValue {
        value: pade_ln(z)?,
        in_window: (PADE_LN_WINDOW.0..=PADE_LN_WINDOW.1).contains(&z),
    })
}

/// Result of [`one_log_second_iteration_traced`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OneLogStep {
    pub first: FrictionIterate,
    pub second: FrictionIterate,
    /// Ratio `y₁/y₂` handed to the Padé logarithm.
    pub z: f64,
}

/// Two acceleration steps from `x0` that evaluate a single real logarithm.
///
/// `log10(y₁)` is computed once; the second step reuses it through
/// `log10(y₂) = log10(y₁) − ln(y₁/y₂)/ln 10` with the Padé logarithm.
pub fn one_log_second_iteration(point: &FlowPoint, x0: f64) -> Result<FrictionIterate> {
    Ok(one_log_second_iteration_traced(point, x0)?.second)
}

pub fn one_log_second_iteration_traced(point: &FlowPoint, x0: f64) -> Result<OneLogStep> {
    let start = FrictionIterate::new(x0, 0)?;
    let y1 = log_argument(point, start.x());
    if !(y1 > 0.0) {
        return Err(Error::domain(format!(
            "first log argument {y1} is not positive"
        )));
    }
    let log_y1 = y1.log10();
    let first = start.advance(-2.0 * log_y1)?;
    let y2 = log_argument(point, first.x());
    if !(y2 > 0.0) {
        return Err(Error::domain(format!(
            "second log argument {y2} is not positive"
        )));
    }
    let z = y1 / y2;
    let log_y2 = log_y1 - pade_ln(z)? / std::f64::consts::LN_10;
    let second = first.advance(-2.0 * log_y2)?;
    Ok(OneLogStep { first, second, z })
}

/// Padé approximant `sin x ≈ x(60 − 7x²)/(60 + 3x²)`. Odd and total.
pub fn pade_sin(x: f64) -> f64 {
    let x2 = x * x;
    x * (60.0 - 7.0 * x2) / (60.0 + 3.0 * x2)
}

/// Quintic fit `sin x ≈ x − x²/5350.6747 − x³/6.0171 + x⁵/127.4678`.
/// The published form carries an `x²` term, so it is not odd.
pub fn quintic_sin(x: f64) -> f64 {
    let x2 = x * x;
    let x3 = x2 * x;
    let x5 = x3 * x2;
    x - x2 / 5350.6747 - x3 / 6.0171 + x5 / 127.4678
}

/// Whether `x` lies in the open window where the sine kernels are accurate.
pub fn in_sine_window(x: f64) -> bool {
    x > SINE_WINDOW.0 && x < SINE_WINDOW.1
}

pub fn pade_sin_checked(x: f64) -> KernelValue {
    KernelValue {
        value: pade_sin(x),
        in_window: in_sine_window(x),
    }
}

pub fn quintic_sin_checked(x: f64) -> KernelValue {
    KernelValue {
        value: quintic_sin(x),
        in_window: in_sine_window(x),
    }
}

/// Kernels that can be swept against the reference function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KernelKind {
    LnPade,
    SinPade,
    SinQuintic,
}

impl KernelKind {
    pub fn name(self) -> &'static str {
        match self {
            KernelKind::LnPade => "ln-pade",
            KernelKind::SinPade => "sin-pade",
            KernelKind::SinQuintic => "sin-quintic",
        }
    }

    /// Window swept by default: around 1 for the logarithm, the published
    /// sine window otherwise.
    pub fn default_window(self) -> (f64, f64) {
        match self {
            KernelKind::LnPade => (0.9, 1.1),
            KernelKind::SinPade | KernelKind::SinQuintic => SINE_WINDOW,
        }
    }

    /// Bound the sweep is judged against, as a relative error fraction.
    /// Published bounds for the sines; a 1e-4 ceiling for the logarithm.
    pub fn bound(self) -> f64 {
        match self {
            KernelKind::LnPade => 1e-4,
            KernelKind::SinPade => 0.068e-2,
            KernelKind::SinQuintic => 0.003e-2,
        }
    }

    fn approx(self, x: f64) -> f64 {
        match self {
            KernelKind::LnPade => pade_ln_unchecked(x),
            KernelKind::SinPade => pade_sin(x),
            KernelKind::SinQuintic => quintic_sin(x),
        }
    }

    fn reference(self, x: f64) -> f64 {
        match self {
            KernelKind::LnPade => x.ln(),
            KernelKind::SinPade | KernelKind::SinQuintic => x.sin(),
        }
    }
}

impl std::str::FromStr for KernelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ln-pade" => Ok(KernelKind::LnPade),
            "sin-pade" => Ok(KernelKind::SinPade),
            "sin-quintic" => Ok(KernelKind::SinQuintic),
            other => Err(Error::config(format!(
                "unknown kernel `{other}` (expected ln-pade, sin-pade or sin-quintic)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepResult {
    pub kind: KernelKind,
    pub window: (f64, f64),
    pub points: usize,
    /// Maximum relative error, as a fraction.
    pub max_rel_err: f64,
    pub argmax: f64,
}

impl SweepResult {
    pub fn passes(&self) -> bool {
        self.max_rel_err <= self.kind.bound()
    }
}

/// Maximum relative error of a kernel against the reference function over
/// `n` equally spaced interior points of the open window `(lo, hi)`,
/// skipping points where `|reference| < 1e-9` (at `ln 1 = 0` the relative
/// error is pure rounding noise from the cancelling numerator).
pub fn sweep(kind: KernelKind, window: (f64, f64), n: usize) -> Result<SweepResult> {
    let (lo, hi) = window;
    if n == 0 || !(lo < hi) {
        return Err(Error::config(format!(
            "sweep needs n >= 1 and lo < hi, got n={n}, window=({lo}, {hi})"
        )));
    }
    if kind == KernelKind::LnPade && lo <= 0.0 {
        return Err(Error::config("ln-pade sweep window must be positive"));
    }
    let h = (hi - lo) / (n + 1) as f64;
    let mut max_rel_err = 0.0;
    let mut argmax = lo;
    for i in 1..=n {
        let x = lo + i as f64 * h;
        let reference = kind.reference(x);
        if reference.abs() < 1e-9 {
            continue;
        }
        let err = ((kind.approx(x) - reference) / reference).abs();
        if err > max_rel_err {
            max_rel_err = err;
            argmax = x;
        }
    }
    Ok(SweepResult {
        kind,
        window,
        points: n,
        max_rel_err,
        argmax,
    })
}
