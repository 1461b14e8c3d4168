//! Job configuration: a JSON file whose keys can be overridden by flags.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use harmonics_core::abelian::{LineGrid, MAX_LINE_NODES};
use harmonics_core::slc::{CoordGrid, FrequencyGrid};
use harmonics_core::su2::{IrrepIndex, KQuadrature, MAX_TWO_J};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Largest coordinate grid on `G` a job may request.
pub const MAX_GROUP_NODES: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Decompose,
    Wigner,
    TransformK,
    TransformG,
    TransformP,
    Plancherel,
    Lorentz,
    Convolve,
    VerifyAll,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    #[default]
    K,
    G,
    P,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// A midpoint grid on `[-L, L]` with `m` nodes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(rename = "L")]
    pub half_width: f64,
    pub m: usize,
}

impl GridSpec {
    pub const fn new(half_width: f64, m: usize) -> Self {
        Self { half_width, m }
    }

    pub fn line(&self) -> Result<LineGrid> {
        if self.m > MAX_LINE_NODES {
            return Err(CliError::CapExceeded { what: "grid m", requested: self.m, cap: MAX_LINE_NODES });
        }
        Ok(LineGrid::new(self.half_width, self.m)?)
    }
}

/// Per-axis grids. Missing axes take command-specific defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Grids {
    /// Both real coordinates of `n = x + iy`.
    pub z: Option<GridSpec>,
    pub t: Option<GridSpec>,
    pub lambda: Option<GridSpec>,
    /// Both components of `ξ`.
    pub xi: Option<GridSpec>,
    /// All four translation coordinates.
    pub v: Option<GridSpec>,
    /// All four components of `η`.
    pub eta: Option<GridSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Family {
    pub sigma: f64,
    pub tau: f64,
    pub v_sigma: f64,
    /// Seed for the random coefficients; defaults to the job seed.
    pub coefficient_seed: Option<u64>,
}

impl Default for Family {
    fn default() -> Self {
        Self { sigma: 1.0, tau: 0.5, v_sigma: 1.0, coefficient_seed: None }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Output {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct JobConfig {
    pub command: Option<Command>,
    pub target: Option<Target>,
    pub grids: Grids,
    pub jmax_twice: Option<u32>,
    pub seed: u64,
    pub family: Family,
    pub output: Output,
    pub input: Option<PathBuf>,
    pub full: bool,
    pub timing: bool,
}

impl Default for JobConfig {
    fn default() -> Self {
        Self {
            command: None,
            target: None,
            grids: Grids::default(),
            jmax_twice: None,
            seed: 1,
            family: Family::default(),
            output: Output::default(),
            input: None,
            full: false,
            timing: false,
        }
    }
}

/// Flag values that take precedence over the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub target: Option<Target>,
    pub seed: Option<u64>,
    pub jmax_twice: Option<u32>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub input: Option<PathBuf>,
    pub full: bool,
    pub timing: bool,
}

impl JobConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn apply(&mut self, o: Overrides) {
        self.target = o.target.or(self.target);
        self.seed = o.seed.unwrap_or(self.seed);
        self.jmax_twice = o.jmax_twice.or(self.jmax_twice);
        if o.out.is_some() {
            self.output.path = o.out;
        }
        self.output.format = o.format.or(self.output.format);
        self.input = o.input.or(self.input.take());
        self.full |= o.full;
        self.timing |= o.timing;
    }

    pub fn format(&self) -> Format {
        self.output.format.unwrap_or_default()
    }

    pub fn target(&self) -> Target {
        self.target.unwrap_or_default()
    }

    pub fn coefficient_seed(&self) -> u64 {
        self.family.coefficient_seed.unwrap_or(self.seed)
    }

    /// Checks everything that does not depend on the command.
    pub fn validate(&self) -> Result<()> {
        let f = &self.family;
        for (name, x) in [("sigma", f.sigma), ("tau", f.tau), ("v_sigma", f.v_sigma)] {
            if !(x.is_finite() && x > 0.0) {
                return Err(CliError::Config(format!("family.{name} must be positive, got {x}")));
            }
        }
        if let Some(j) = self.jmax_twice {
            if j > MAX_TWO_J {
                return Err(CliError::CapExceeded { what: "jmax_twice", requested: j as usize, cap: MAX_TWO_J as usize });
            }
        }
        let g = &self.grids;
        for spec in [g.z, g.t, g.lambda, g.xi, g.v, g.eta].into_iter().flatten() {
            spec.line()?;
        }
        Ok(())
    }

    /// The resolved grids and band for `command`.
    pub fn resolve(&self, command: Command) -> Result<Resolved> {
        self.validate()?;
        let d = Defaults::for_job(command, self.target());
        let g = &self.grids;
        let jmax_twice = self.jmax_twice.unwrap_or(d.jmax_twice);
        let pick = |s: Option<GridSpec>, fallback: GridSpec| s.unwrap_or(fallback).line();
        Ok(Resolved {
            jmax_twice,
            z: pick(g.z, d.z)?,
            t: pick(g.t, d.t)?,
            lambda: pick(g.lambda, d.lambda)?,
            xi: pick(g.xi, d.xi)?,
            v: pick(g.v, d.v)?,
            eta: pick(g.eta, d.eta)?,
        })
    }
}

struct Defaults {
    jmax_twice: u32,
    z: GridSpec,
    t: GridSpec,
    lambda: GridSpec,
    xi: GridSpec,
    v: GridSpec,
    eta: GridSpec,
}

impl Defaults {
    fn for_job(command: Command, target: Target) -> Self {
        let g = Self {
            jmax_twice: 2,
            z: GridSpec::new(6.5, 24),
            t: GridSpec::new(3.25, 24),
            lambda: GridSpec::new(13.0, 26),
            xi: GridSpec::new(6.0, 24),
            v: GridSpec::new(8.0, 32),
            eta: GridSpec::new(6.0, 24),
        };
        match (command, target) {
            // the smallest grids allowed; the table still has 2²¹ rows
            (Command::TransformP, _) => Self {
                jmax_twice: 0,
                z: GridSpec::new(5.0, 12),
                t: GridSpec::new(2.5, 12),
                lambda: GridSpec::new(6.0, 8),
                xi: GridSpec::new(4.0, 8),
                v: GridSpec::new(6.0, 16),
                eta: GridSpec::new(3.0, 8),
            },
            (Command::Plancherel, Target::P) => Self {
                jmax_twice: 1,
                z: GridSpec::new(6.5, 28),
                t: GridSpec::new(3.25, 28),
                lambda: GridSpec::new(13.0, 26),
                ..g
            },
            (Command::Wigner | Command::TransformK, _) | (Command::Plancherel, Target::K) => Self { jmax_twice: 4, ..g },
            _ => g,
        }
    }
}

/// Grids after defaults and caps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Resolved {
    pub jmax_twice: u32,
    pub z: LineGrid,
    pub t: LineGrid,
    pub lambda: LineGrid,
    pub xi: LineGrid,
    pub v: LineGrid,
    pub eta: LineGrid,
}

impl Resolved {
    pub fn irrep(&self) -> Result<IrrepIndex> {
        Ok(IrrepIndex::new(self.jmax_twice)?)
    }

    /// The NAK grid on `G` with a `K` quadrature for `jmax_twice`.
    pub fn group_grid(&self) -> Result<CoordGrid> {
        let k = KQuadrature::new(self.irrep()?);
        let n = k.len() * self.z.count() * self.z.count() * self.t.count();
        if n > MAX_GROUP_NODES {
            return Err(CliError::CapExceeded { what: "group grid nodes", requested: n, cap: MAX_GROUP_NODES });
        }
        Ok(CoordGrid::nak(k, self.z, self.z, self.t))
    }

    pub fn freq(&self) -> FrequencyGrid {
        FrequencyGrid { lambda: self.lambda, xi1: self.xi, xi2: self.xi }
    }
}
