//! Flat `key = value` defaults file.
//!
//! ```text
//! # mesh
//! n_re = 300
//! n_rough = 300
//! rough_min = 1e-6
//! re_spacing = log
//! oracle_tol = 1e-12
//! sin_strategy = exact
//! constants = printed
//! output_dir = out
//! ```

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::eval::GridSpec;
use crate::flow::DEFAULT_TOL;
use crate::schemes::{SinStrategy, TransformConstants};

#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub grid: GridSpec,
    pub oracle_tol: f64,
    pub sin_strategy: SinStrategy,
    pub constants: TransformConstants,
    /// Directory relative output paths are resolved against.
    pub output_dir: Option<PathBuf>,
    pub workers: Option<usize>,
}

impl Default for CliConfig {
    fn default() -> Self {
        Self {
            grid: GridSpec::default(),
            oracle_tol: DEFAULT_TOL,
            sin_strategy: SinStrategy::Exact,
            constants: TransformConstants::Printed,
            output_dir: None,
            workers: None,
        }
    }
}

impl CliConfig {
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = CliConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or_default().trim();
            if line.is_empty() {
                continue;
            }
            let lineno = i + 1;
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::config(format!("line {lineno}: expected `key = value`")))?;
            let ctx = |e: Error| match e {
                Error::Config(msg) => Error::Config(format!("line {lineno}: {key}: {msg}")),
                other => other,
            };
            cfg.set(key, value).map_err(ctx)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let g = &mut self.grid;
        match key {
            "re_min" => g.re_min = number(value)?,
            "re_max" => g.re_max = number(value)?,
            "rough_min" => g.rough_min = number(value)?,
            "rough_max" => g.rough_max = number(value)?,
            "n_re" => g.n_re = count(value)?,
            "n_rough" => g.n_rough = count(value)?,
            "re_spacing" => g.re_spacing = value.parse()?,
            "rough_spacing" => g.rough_spacing = value.parse()?,
            "oracle_tol" => self.oracle_tol = number(value)?,
            "sin_strategy" => self.sin_strategy = value.parse()?,
            "constants" => self.constants = value.parse()?,
            "output_dir" => self.output_dir = Some(PathBuf::from(value)),
            "workers" => self.workers = Some(count(value)?),
            other => return Err(Error::config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Same rules as programmatic construction.
    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        if !(self.oracle_tol.is_finite() && self.oracle_tol > 0.0) {
            return Err(Error::config(format!(
                "oracle_tol must be positive, got {}",
                self.oracle_tol
            )));
        }
        if self.workers == Some(0) {
            return Err(Error::config("workers must be at least 1"));
        }
        Ok(())
    }

    pub fn output_path(&self, p: &Path) -> PathBuf {
        match &self.output_dir {
            Some(dir) if p.is_relative() => dir.join(p),
            _ => p.to_path_buf(),
        }
    }
}

fn number(v: &str) -> Result<f64> {
    v.parse()
        .map_err(|_| Error::config(format!("`{v}` is not a number")))
}

fn count(v: &str) -> Result<usize> {
    v.parse()
        .map_err(|_| Error::config(format!("`{v}` is not a non-negative integer")))
}
