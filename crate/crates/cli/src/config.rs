use std::str::FromStr;

use tropcalc_core::semantics::Caps;
use tropcalc_core::syntax::{Dialect, Reading};
use tropcalc_core::tropical::{MultiDegree, Point, TropSeries, TropValue};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
    Tsv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ReadingArg {
    Tropical,
    Literal,
}

impl From<ReadingArg> for Reading {
    fn from(r: ReadingArg) -> Self {
        match r {
            ReadingArg::Tropical => Reading::Tropical,
            ReadingArg::Literal => Reading::Literal,
        }
    }
}

/// Resolved settings for one invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub dialect: Dialect,
    pub caps: Caps,
    pub depth_cap: u32,
    pub degree_cap: u32,
    pub eps: TropValue,
    pub delta: TropValue,
    pub seed: u64,
    pub format: Format,
    pub reading: Reading,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            dialect: Dialect::Stlc,
            caps: Caps::default(),
            depth_cap: 12,
            degree_cap: 4,
            eps: TropValue::ratio(1, 100),
            delta: TropValue::int(1),
            seed: 0,
            format: Format::Json,
            reading: Reading::Tropical,
        }
    }
}

fn positive(name: &str, n: u32) -> Result<u32, CliError> {
    if n == 0 {
        return Err(CliError::User(format!("{name} must be at least 1")));
    }
    Ok(n)
}

impl RunConfig {
    /// Applies `key=value` overrides as found in `TROPCALC_CAPS`.
    pub fn apply_env(&mut self, spec: &str) -> Result<(), CliError> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| CliError::User(format!("TROPCALC_CAPS: expected key=value, got `{item}`")))?;
            let n: u32 = v
                .trim()
                .parse()
                .map_err(|_| CliError::User(format!("TROPCALC_CAPS: `{v}` is not a natural number")))?;
            match k.trim() {
                "kmax" => self.caps.k_max = positive("kmax", n)?,
                "nmax" => self.caps.n_max = positive("nmax", n)?,
                "fixmax" => self.caps.f_max = positive("fixmax", n)?,
                "depth" => self.depth_cap = positive("depth", n)?,
                "degree" => self.degree_cap = positive("degree", n)?,
                other => return Err(CliError::User(format!("TROPCALC_CAPS: unknown key `{other}`"))),
            }
        }
        Ok(())
    }

    pub fn set_kmax(&mut self, n: u32) -> Result<(), CliError> {
        self.caps.k_max = positive("--kmax", n)?;
        Ok(())
    }

    pub fn set_nmax(&mut self, n: u32) -> Result<(), CliError> {
        self.caps.n_max = positive("--nmax", n)?;
        Ok(())
    }

    pub fn set_fixmax(&mut self, n: u32) -> Result<(), CliError> {
        self.caps.f_max = positive("--fixmax", n)?;
        Ok(())
    }

    pub fn set_depth(&mut self, n: u32) -> Result<(), CliError> {
        self.depth_cap = positive("--depth", n)?;
        Ok(())
    }

    pub fn set_degree(&mut self, n: u32) -> Result<(), CliError> {
        self.degree_cap = positive("--degree", n)?;
        Ok(())
    }

    pub fn set_eps(&mut self, s: &str) -> Result<(), CliError> {
        self.eps = open_interval("--eps", s)?;
        Ok(())
    }

    pub fn set_delta(&mut self, s: &str) -> Result<(), CliError> {
        self.delta = open_interval("--delta", s)?;
        Ok(())
    }
}

pub fn value(s: &str) -> Result<TropValue, CliError> {
    TropValue::from_str(s.trim()).map_err(|e| CliError::User(format!("bad value `{s}`: {e}")))
}

fn open_interval(name: &str, s: &str) -> Result<TropValue, CliError> {
    let v = value(s)?;
    if v.is_zero() || v.is_inf() {
        return Err(CliError::User(format!("{name} must lie in (0, inf), got {v}")));
    }
    Ok(v)
}

/// `a=0.5,b=1`
pub fn params(s: &str) -> Result<Point, CliError> {
    let mut out = Point::new();
    for item in s.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::User(format!("--params: expected name=value, got `{item}`")))?;
        out.insert(k.trim().to_string(), value(v)?);
    }
    Ok(out)
}

/// `0:1,1:1/2,…` as a univariate series in `var`.
pub fn coeffs(s: &str, var: &str) -> Result<TropSeries, CliError> {
    let mut out = TropSeries::empty([var]);
    for item in s.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once(':')
            .ok_or_else(|| CliError::User(format!("--coeffs: expected degree:value, got `{item}`")))?;
        let d: u32 = k
            .trim()
            .parse()
            .map_err(|_| CliError::User(format!("--coeffs: `{k}` is not a degree")))?;
        out.insert(MultiDegree::var(var, d), value(v)?);
    }
    Ok(out)
}

pub fn series(s: &str) -> Result<TropSeries, CliError> {
    s.parse().map_err(|e| CliError::User(format!("bad series `{s}`: {e}")))
}
