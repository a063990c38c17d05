//! JSON run configuration for the command-line tool.
//!
//! Unknown fields are rejected, and parse failures report the JSON path of
//! the offending field.

use std::path::Path;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, TomoError};
use crate::numgrid::{AngleGrid, FilterSpec, Grid1D};
use crate::states::{DensityMatrix, WaveFunction};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
    pub n_theta: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        let g = Grid1D::default_quadrature();
        Self {
            x_min: g.x_min(),
            x_max: g.x_max(),
            n: g.len(),
            n_theta: AngleGrid::default_quadrature().len(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FilterConfig {
    pub cutoff_fraction: f64,
}

impl Default for FilterConfig {
    fn default() -> Self {
        Self { cutoff_fraction: 1.0 }
    }
}

/// One component of a mixed state: a weight and a pure-state spec string.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixtureComponent {
    pub weight: f64,
    pub state: String,
}

/// Tolerances used when comparing expectation routes.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ToleranceConfig {
    pub route_agreement: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self { route_agreement: 1e-3 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// State spec: `fock:N`, `coherent:RE,IM`, or `mix` (with `mixture` set).
    pub state: String,
    /// Components used when `state` is `mix`.
    pub mixture: Vec<MixtureComponent>,
    pub grid: GridConfig,
    pub filter: FilterConfig,
    pub output_dir: String,
    /// Expectation routes: any of `matrix`, `tomops`, `dual-regular`,
    /// `dual-singular`, or `all`.
    pub routes: Vec<String>,
    pub tolerances: ToleranceConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            state: "fock:0".into(),
            mixture: Vec::new(),
            grid: GridConfig::default(),
            filter: FilterConfig::default(),
            output_dir: "out".into(),
            routes: vec!["all".into()],
            tolerances: ToleranceConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let de = &mut serde_json::Deserializer::from_str(&text);
        serde_path_to_error::deserialize(de).map_err(|e| TomoError::Config {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })
    }

    pub fn xgrid(&self) -> Result<Grid1D> {
        Grid1D::new(self.grid.x_min, self.grid.x_max, self.grid.n)
    }

    pub fn agrid(&self) -> Result<AngleGrid> {
        AngleGrid::new(self.grid.n_theta)
    }

    pub fn filter_spec(&self) -> FilterSpec {
        FilterSpec { k_cutoff_fraction: self.filter.cutoff_fraction }
    }

    /// Builds the configured density matrix on the configured grid.
    pub fn density(&self) -> Result<DensityMatrix> {
        let grid = self.xgrid()?;
        if self.state.trim() == "mix" {
            if self.mixture.is_empty() {
                return Err(TomoError::Config {
                    path: "mixture".into(),
                    message: "state `mix` needs at least one mixture component".into(),
                });
            }
            let mut parts = Vec::new();
            for c in &self.mixture {
                parts.push((c.weight, pure_density(&c.state, grid)?));
            }
            DensityMatrix::mix(&parts)
        } else {
            pure_density(&self.state, grid)
        }
    }
}

/// Parses `fock:N` or `coherent:RE,IM` into a pure-state density matrix.
pub fn pure_density(spec: &str, grid: Grid1D) -> Result<DensityMatrix> {
    let psi = parse_pure(spec, grid)?;
    Ok(DensityMatrix::from_pure(&psi))
}

fn parse_pure(spec: &str, grid: Grid1D) -> Result<WaveFunction> {
    let bad = |msg: &str| TomoError::Parse(format!("state `{spec}`: {msg}"));
    let (kind, args) = spec
        .trim()
        .split_once(':')
        .ok_or_else(|| bad("expected `fock:N` or `coherent:RE,IM`"))?;
    match kind {
        "fock" => {
            let n: usize = args.parse().map_err(|_| bad("bad photon number"))?;
            if n > 12 {
                return Err(bad("photon number above 12 is not supported"));
            }
            WaveFunction::fock(grid, n)
        }
        "coherent" => {
            let (re, im) = args
                .split_once(',')
                .ok_or_else(|| bad("expected `coherent:RE,IM`"))?;
            let re: f64 = re.trim().parse().map_err(|_| bad("bad real part"))?;
            let im: f64 = im.trim().parse().map_err(|_| bad("bad imaginary part"))?;
            WaveFunction::coherent(grid, C64::new(re, im))
        }
        _ => Err(bad("unknown state kind")),
    }
}
