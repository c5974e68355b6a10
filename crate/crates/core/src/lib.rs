//! # colebrook
//!
//! Turbulent pipe-flow friction factors from the implicit Colebrook equation
//!
//! ```text
//! 1/√λ = −2·log10( 2.51/(Re·√λ) + (ε/D)/3.71 )
//! ```
//!
//! and a family of cheap explicit approximations to it.
//!
//! The crate is organised around the variable `x = 1/√λ`:
//!
//! * [`flow`] holds the domain types, the right-hand side of the equation,
//!   the machine-precision fixed-point reference solver, input normalization
//!   (`a = log10 Re`, `b = −log10 ε/D`) and the relative-error metric.
//! * [`schemes`] holds the explicit starters (a rational polynomial in the raw
//!   inputs and four polynomial/sine forms in the normalized inputs), the
//!   fixed-point acceleration step in its direct and log-transformed forms,
//!   and a registry of named schemes built from them.
//! * [`kernels`] holds the rational replacements for `ln` and `sin`, including
//!   the one-logarithm second acceleration step.
//! * [`eval`] samples the domain (tensor mesh or 2-D Sobol), scans error maps
//!   against the reference solver, reproduces the accuracy-versus-complexity
//!   table, counts operations, times schemes and exports CSV/PGM maps.
//! * [`cli`] is the command-line front end used by the `colebrook` binary.
//!
//! ```
//! use colebrook::flow::{solve_colebrook, FlowPoint};
//! use colebrook::schemes::{evaluate_scheme, SchemeSpec};
//!
//! let point = FlowPoint::new(1e5, 1e-4).unwrap();
//! let exact = solve_colebrook(&point).unwrap().iterate.lambda();
//! let spec = SchemeSpec::lookup("eq2a2").unwrap();
//! let approx = evaluate_scheme(&spec, &point).unwrap().lambda();
//! assert!((approx - exact).abs() / exact < 0.0013);
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod eval;
pub mod flow;
pub mod kernels;
pub mod schemes;

pub use error::{Error, Result};
pub use flow::{FlowPoint, FrictionIterate, NormalizedPoint, SolveReport};
pub use schemes::SchemeSpec;
