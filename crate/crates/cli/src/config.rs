//! Run configuration: defaults, an optional `key = value` file, then flags.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use anyonlab::{OracleConfig, ScarfParams, WolfesParams};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn parse(s: &str) -> Result<Self, CliError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::Config(format!("format: expected csv or json, got {other:?}"))),
        }
    }
}

/// Values that may come from the config file or from flags. `None` means
/// "not given here".
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub g: Option<f64>,
    pub f: Option<f64>,
    pub omega: Option<f64>,
    pub a: Option<f64>,
    pub bands: Option<Vec<usize>>,
    pub k_points: Option<usize>,
    pub grid: Option<usize>,
    pub eps: Option<f64>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
}

impl Overrides {
    /// Fields set in `other` win.
    pub fn merge(mut self, other: Overrides) -> Self {
        macro_rules! take {
            ($($field:ident),*) => { $( if other.$field.is_some() { self.$field = other.$field; } )* };
        }
        take!(g, f, omega, a, bands, k_points, grid, eps, format, out);
        self
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut o = Overrides::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("config line {}: expected key = value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key.replace('_', "-").as_str() {
                "g" => o.g = Some(parse_num(key, value)?),
                "f" => o.f = Some(parse_num(key, value)?),
                "omega" => o.omega = Some(parse_num(key, value)?),
                "a" => o.a = Some(parse_num(key, value)?),
                "bands" => o.bands = Some(parse_bands(value)?),
                "k-points" => o.k_points = Some(parse_num(key, value)?),
                "grid" => o.grid = Some(parse_num(key, value)?),
                "eps" => o.eps = Some(parse_num(key, value)?),
                "format" => o.format = Some(value.to_string()),
                "out" => o.out = Some(PathBuf::from(value)),
                _ => return Err(CliError::Config(format!("config line {}: unknown key {key:?}", lineno + 1))),
            }
        }
        Ok(o)
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value.parse().map_err(|_| CliError::Config(format!("{key}: cannot parse {value:?}")))
}

pub fn parse_bands(value: &str) -> Result<Vec<usize>, CliError> {
    let bands: Vec<usize> = value
        .split(',')
        .map(|b| parse_num("bands", b.trim()))
        .collect::<Result<_, _>>()?;
    if bands.is_empty() {
        return Err(CliError::Config("bands: empty list".into()));
    }
    Ok(bands)
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub g: f64,
    pub f: Option<f64>,
    pub omega: f64,
    pub a: f64,
    pub bands: Vec<usize>,
    pub k_points: usize,
    pub grid_points: usize,
    pub eps: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(o: Overrides) -> Result<Self, CliError> {
        let cfg = RunConfig {
            g: o.g.unwrap_or(-0.16),
            f: o.f,
            omega: o.omega.unwrap_or(1.0),
            a: o.a.unwrap_or(PI / 3.0),
            bands: o.bands.unwrap_or_else(|| vec![0, 1, 2, 3]),
            k_points: o.k_points.unwrap_or(33),
            grid_points: o.grid.unwrap_or(128),
            eps: o.eps.unwrap_or(1e-6),
            format: Format::parse(o.format.as_deref().unwrap_or("csv"))?,
            out: o.out,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return bad(format!("omega = {} must be positive", self.omega));
        }
        if !(self.a > 0.0 && self.a.is_finite()) {
            return bad(format!("a = {} must be positive", self.a));
        }
        if self.k_points < 2 {
            return bad(format!("k-points = {} must be at least 2", self.k_points));
        }
        if self.grid_points < 32 {
            return bad(format!("grid = {} must be at least 32", self.grid_points));
        }
        if !(self.eps > 0.0 && self.eps <= 0.1) {
            return bad(format!("eps = {} must lie in (0, 0.1] (fraction of a)", self.eps));
        }
        self.scarf()?;
        Ok(())
    }

    pub fn scarf(&self) -> Result<ScarfParams, CliError> {
        ScarfParams::from_coupling(self.g, self.a).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn wolfes(&self) -> Result<WolfesParams, CliError> {
        let f = self.f.ok_or_else(|| CliError::Config("f: required for the wolfes model".into()))?;
        WolfesParams::from_couplings(self.g, f, self.a).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn oracle(&self) -> OracleConfig {
        OracleConfig { eps: self.eps, ..OracleConfig::default() }
    }

    /// `k_j = jπ/(a(K−1))`.
    pub fn k_grid(&self) -> Vec<f64> {
        let last = (self.k_points - 1) as f64;
        (0..self.k_points)
            .map(|j| if j + 1 == self.k_points { PI / self.a } else { j as f64 * PI / (self.a * last) })
            .collect()
    }
}
