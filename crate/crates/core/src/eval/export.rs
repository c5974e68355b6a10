//! CSV and plain-PGM serialization of error maps.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};

use super::scan::{ErrorEntry, ErrorMap};

pub const CSV_HEADER: &str = "re,rel_rough,lambda_ref,lambda_approx,rel_err_pct";

const PGM_MAX_LINE: usize = 70;

/// Writes the map as CSV, one row per grid point in map order. Floats use
/// the shortest representation that parses back to the same value.
pub fn write_csv<W: Write>(map: &ErrorMap, mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for e in &map.entries {
        writeln!(
            out,
            "{},{},{},{},{}",
            e.re, e.rel_rough, e.lambda_ref, e.lambda_approx, e.rel_err_pct
        )?;
    }
    out.flush()
}

pub fn export_csv(map: &ErrorMap, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv(map, BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

/// Reads entries written by [`export_csv`].
pub fn import_csv(path: impl AsRef<Path>) -> Result<Vec<ErrorEntry>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut lines = BufReader::new(file).lines();
    match lines.next() {
        Some(Ok(h)) if h.trim_end() == CSV_HEADER => {}
        Some(Err(e)) => return Err(Error::io(path, e)),
        _ => {
            return Err(Error::config(format!(
                "{}: missing CSV header `{CSV_HEADER}`",
                path.display()
            )))
        }
    }
    let mut entries = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let bad = || {
            Error::config(format!(
                "{}:{}: malformed row `{line}`",
                path.display(),
                i + 2
            ))
        };
        let fields: Vec<f64> = line
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let [re, rel_rough, lambda_ref, lambda_approx, rel_err_pct] = fields[..] else {
            return Err(bad());
        };
        entries.push(ErrorEntry {
            re,
            rel_rough,
            lambda_ref,
            lambda_approx,
            rel_err_pct,
        });
    }
    Ok(entries)
}

/// Writes the map as a plain (P2) graymap: one pixel per grid point, `Re`
/// index along x, roughness index down y (so `−log10 ε/D` decreases
/// downward on an ascending axis). Gray level is linear in the error, 255 at
/// the map maximum; an all-zero map is all black.
pub fn write_heatmap<W: Write>(map: &ErrorMap, mut out: W) -> io::Result<()> {
    let (w, h) = (map.grid.n_re, map.grid.n_rough);
    if map.entries.len() != w * h {
        return Err(io::Error::new(
            io::ErrorKind::InvalidInput,
            format!("{} entries do not fill a {w}x{h} grid", map.entries.len()),
        ));
    }
    let max = map
        .entries
        .iter()
        .map(|e| e.rel_err_pct)
        .fold(0.0_f64, f64::max);

    writeln!(out, "P2")?;
    writeln!(out, "# {} relative error, max {} %", map.scheme_id, max)?;
    writeln!(out, "{w} {h}")?;
    writeln!(out, "255")?;
    for row in map.entries.chunks(w) {
        let mut line = String::new();
        for e in row {
            let level = if max > 0.0 {
                (255.0 * (e.rel_err_pct / max).clamp(0.0, 1.0)).round() as u8
            } else {
                0
            };
            let token = level.to_string();
            if !line.is_empty() && line.len() + 1 + token.len() > PGM_MAX_LINE {
                writeln!(out, "{line}")?;
                line.clear();
            }
            if !line.is_empty() {
                line.push(' ');
            }
            line.push_str(&token);
        }
        writeln!(out, "{line}")?;
    }
    out.flush()
}

pub fn export_heatmap(map: &ErrorMap, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_heatmap(map, BufWriter::new(file)).map_err(|e| Error::io(path, e))
}
