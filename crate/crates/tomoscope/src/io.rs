//! Deterministic file formats: the tomogram text format, CSV triples, and
//! 8-bit PGM heatmaps with a JSON sidecar.
//!
//! All floating-point output uses 17 significant digits, which round-trips
//! `f64` exactly, so repeated runs produce byte-identical files and every
//! emitted file reloads without loss.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Result, TomoError};
use crate::numgrid::{AngleGrid, Grid1D};
use crate::radon::OpticalTomogram;

fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

// ---------------------------------------------------------------------------
// Tomogram text format

/// Serializes a tomogram as
/// `#tomogram v1` / `#xgrid x_min x_max n` / `#agrid n_theta`, followed by
/// `n_theta` rows of `n` whitespace-separated decimals.
pub fn tomogram_to_string(t: &OpticalTomogram) -> String {
    let g = t.xgrid();
    let mut s = String::new();
    let _ = writeln!(s, "#tomogram v1");
    let _ = writeln!(s, "#xgrid {} {} {}", fmt_f64(g.x_min()), fmt_f64(g.x_max()), g.len());
    let _ = writeln!(s, "#agrid {}", t.agrid().len());
    for row in t.values().rows() {
        let line: Vec<String> = row.iter().map(|&v| fmt_f64(v)).collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    s
}

pub fn tomogram_from_str(s: &str) -> Result<OpticalTomogram> {
    let mut lines = s.lines();
    let header = lines.next().unwrap_or_default();
    if header.trim() != "#tomogram v1" {
        return Err(TomoError::Parse(format!("bad header line: `{header}`")));
    }
    let xline = lines.next().unwrap_or_default();
    let xparts: Vec<&str> = xline.split_whitespace().collect();
    if xparts.len() != 4 || xparts[0] != "#xgrid" {
        return Err(TomoError::Parse(format!("bad xgrid line: `{xline}`")));
    }
    let parse_f = |s: &str| -> Result<f64> {
        s.parse().map_err(|_| TomoError::Parse(format!("bad number `{s}`")))
    };
    let x_min = parse_f(xparts[1])?;
    let x_max = parse_f(xparts[2])?;
    let n: usize = xparts[3]
        .parse()
        .map_err(|_| TomoError::Parse(format!("bad grid size `{}`", xparts[3])))?;
    let aline = lines.next().unwrap_or_default();
    let aparts: Vec<&str> = aline.split_whitespace().collect();
    if aparts.len() != 2 || aparts[0] != "#agrid" {
        return Err(TomoError::Parse(format!("bad agrid line: `{aline}`")));
    }
    let n_theta: usize = aparts[1]
        .parse()
        .map_err(|_| TomoError::Parse(format!("bad angle count `{}`", aparts[1])))?;
    let mut w = Array2::<f64>::zeros((n_theta, n));
    for t in 0..n_theta {
        let line = lines
            .next()
            .ok_or_else(|| TomoError::Parse(format!("missing data row {t}")))?;
        let mut count = 0;
        for (j, tok) in line.split_whitespace().enumerate() {
            if j >= n {
                return Err(TomoError::Parse(format!("row {t} has more than {n} values")));
            }
            w[(t, j)] = parse_f(tok)?;
            count += 1;
        }
        if count != n {
            return Err(TomoError::Parse(format!("row {t} has {count} values, expected {n}")));
        }
    }
    OpticalTomogram::from_values(AngleGrid::new(n_theta)?, Grid1D::new(x_min, x_max, n)?, w)
}

pub fn write_tomogram(path: &Path, t: &OpticalTomogram) -> Result<()> {
    fs::write(path, tomogram_to_string(t))?;
    Ok(())
}

pub fn read_tomogram(path: &Path) -> Result<OpticalTomogram> {
    tomogram_from_str(&fs::read_to_string(path)?)
}

// ---------------------------------------------------------------------------
// CSV triples

/// Serializes `theta,X,w` triples with a header line, rows in angle-major
/// order.
pub fn tomogram_to_csv(t: &OpticalTomogram) -> String {
    let xs = t.xgrid().points();
    let thetas = t.agrid().thetas();
    let mut s = String::from("theta,X,w\n");
    for (k, &theta) in thetas.iter().enumerate() {
        for (j, &x) in xs.iter().enumerate() {
            let _ = writeln!(
                s,
                "{},{},{}",
                fmt_f64(theta),
                fmt_f64(x),
                fmt_f64(t.values()[(k, j)])
            );
        }
    }
    s
}

/// Reloads a CSV produced by [`tomogram_to_csv`]; the grids are recovered
/// from the row structure and the values parse back exactly.
pub fn tomogram_from_csv(s: &str) -> Result<OpticalTomogram> {
    let mut rows: Vec<(f64, f64, f64)> = Vec::new();
    for (i, line) in s.lines().enumerate() {
        if i == 0 {
            if line.trim() != "theta,X,w" {
                return Err(TomoError::Parse(format!("bad CSV header `{line}`")));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 3 {
            return Err(TomoError::Parse(format!("bad CSV row `{line}`")));
        }
        let p = |s: &str| -> Result<f64> {
            s.parse().map_err(|_| TomoError::Parse(format!("bad number `{s}`")))
        };
        rows.push((p(parts[0])?, p(parts[1])?, p(parts[2])?));
    }
    if rows.is_empty() {
        return Err(TomoError::Parse("empty CSV".into()));
    }
    let theta0 = rows[0].0;
    let n = rows.iter().take_while(|r| r.0 == theta0).count();
    if n == 0 || rows.len() % n != 0 {
        return Err(TomoError::Parse("ragged CSV row structure".into()));
    }
    let n_theta = rows.len() / n;
    let x_min = rows[0].1;
    let x_max = rows[n - 1].1;
    let mut w = Array2::<f64>::zeros((n_theta, n));
    for (i, (_, _, v)) in rows.into_iter().enumerate() {
        w[(i / n, i % n)] = v;
    }
    OpticalTomogram::from_values(AngleGrid::new(n_theta)?, Grid1D::new(x_min, x_max, n)?, w)
}

pub fn write_csv(path: &Path, t: &OpticalTomogram) -> Result<()> {
    fs::write(path, tomogram_to_csv(t))?;
    Ok(())
}

pub fn read_csv(path: &Path) -> Result<OpticalTomogram> {
    tomogram_from_csv(&fs::read_to_string(path)?)
}

// ---------------------------------------------------------------------------
// PGM heatmap

/// Scaling metadata recorded next to a PGM heatmap.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PgmSidecar {
    pub rows: usize,
    pub cols: usize,
    pub min: f64,
    pub max: f64,
    pub scaling: String,
}

/// Writes an 8-bit binary PGM (row = angle index, column = X index) with
/// linear min-max scaling, plus a JSON sidecar recording the scale.
pub fn write_pgm(path: &Path, sidecar_path: &Path, t: &OpticalTomogram) -> Result<()> {
    let w = t.values();
    let (rows, cols) = w.dim();
    let min = w.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let span = if max > min { max - min } else { 1.0 };
    let mut bytes = format!("P5\n{cols} {rows}\n255\n").into_bytes();
    bytes.extend(w.iter().map(|&v| ((v - min) / span * 255.0).round() as u8));
    fs::write(path, bytes)?;
    let sidecar = PgmSidecar {
        rows,
        cols,
        min,
        max,
        scaling: "linear".into(),
    };
    fs::write(
        sidecar_path,
        serde_json::to_string_pretty(&sidecar)
            .map_err(|e| TomoError::Parse(e.to_string()))?,
    )?;
    Ok(())
}
