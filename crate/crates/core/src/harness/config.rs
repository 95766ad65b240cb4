use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use super::catalogue::find_suite;
use crate::error::{Error, Result};
use crate::seqspace::Flavor;
use crate::space::{HierarchyMode, ModelKind, ModelSpec};

/// Tolerance keys accepted under `[tolerances]`, with their defaults.
pub const TOLERANCES: [(&str, f64); 9] = [
    ("telescoping", 1e-10),
    ("commutativity", 1e-12),
    ("kernel_symmetry", 1e-12),
    ("reconstruction", 1e-9),
    ("band_leak", 1e-10),
    ("neumann_residual", 1e-9),
    ("atomic_residual", 1e-6),
    ("route", 1e-9),
    ("identity", 1e-9),
];

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default = "default_s")]
    pub s: Vec<f64>,
    #[serde(default = "default_pq")]
    pub p: Vec<f64>,
    #[serde(default = "default_pq")]
    pub q: Vec<f64>,
    #[serde(default = "default_flavors")]
    pub flavors: Vec<Flavor>,
}

fn default_s() -> Vec<f64> {
    vec![-1.0, 0.0, 1.0]
}
fn default_pq() -> Vec<f64> {
    vec![1.0, 2.0]
}
fn default_flavors() -> Vec<Flavor> {
    vec![Flavor::Classical, Flavor::Tilde]
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { s: default_s(), p: default_pq(), q: default_pq(), flavors: default_flavors() }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default = "default_model")]
    pub model: ModelSpec,
    #[serde(default = "default_b")]
    pub b: f64,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    #[serde(default)]
    pub mode: HierarchyMode,
    #[serde(default)]
    pub seed: u64,
    /// Number of random functions (or sequences) per battery.
    #[serde(default = "default_battery")]
    pub battery: usize,
    /// Functions per battery in the norm-equivalence suites.
    #[serde(default = "default_norm_battery")]
    pub norm_battery: usize,
    /// Random sequences per battery in the operator suites.
    #[serde(default = "default_sequence_battery")]
    pub sequence_battery: usize,
    /// Random samples in the weight and Hardy suites.
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub grid: GridConfig,
    /// Also run the refinement comparisons on the doubled model.
    #[serde(default = "default_true")]
    pub refine: bool,
    /// Band width below which the Ahlfors relaxation of the multiplier threshold applies.
    #[serde(default = "default_ahlfors")]
    pub ahlfors_factor: f64,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    /// `None` runs every suite; an empty list writes the manifest only.
    #[serde(default)]
    pub suites: Option<Vec<String>>,
}

fn default_model() -> ModelSpec {
    ModelSpec::cycle(64)
}
fn default_b() -> f64 {
    2.0
}
fn default_gamma() -> f64 {
    0.5
}
fn default_battery() -> usize {
    20
}
fn default_norm_battery() -> usize {
    50
}
fn default_sequence_battery() -> usize {
    100
}
fn default_samples() -> usize {
    1000
}
fn default_true() -> bool {
    true
}
fn default_ahlfors() -> f64 {
    4.0
}

impl Default for SuiteConfig {
    fn default() -> Self {
        toml::from_str("").expect("defaults parse")
    }
}

impl SuiteConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.b > 1.0) {
            return Err(Error::Config(format!("b must exceed 1, got {}", self.b)));
        }
        if !(self.gamma > 0.0 && self.gamma <= 1.0) {
            return Err(Error::Config(format!("gamma must lie in (0, 1], got {}", self.gamma)));
        }
        if self.battery == 0 || self.norm_battery == 0 || self.sequence_battery == 0 || self.samples == 0 {
            return Err(Error::Config("battery sizes must be positive".into()));
        }
        if self.model.kind == ModelKind::Tree && self.model.edges.is_none() {
            return Err(Error::Config("tree models need an edge list".into()));
        }
        for key in self.tolerances.keys() {
            if !TOLERANCES.iter().any(|(k, _)| k == key) {
                return Err(Error::Config(format!("unknown tolerance '{key}'")));
            }
        }
        for (k, v) in &self.tolerances {
            if !(*v > 0.0) {
                return Err(Error::Config(format!("tolerance '{k}' must be positive")));
            }
        }
        if let Some(names) = &self.suites {
            for name in names {
                if find_suite(name).is_none() {
                    return Err(Error::Config(format!("unknown suite '{name}'")));
                }
            }
        }
        let grid = &self.grid;
        if grid.p.iter().chain(&grid.q).any(|v| !(*v > 0.0)) || grid.s.iter().any(|s| !s.is_finite()) {
            return Err(Error::Config("grid needs finite s and positive p, q".into()));
        }
        Ok(())
    }

    pub fn tolerance(&self, key: &str) -> f64 {
        self.tolerances.get(key).copied().unwrap_or_else(|| {
            TOLERANCES.iter().find(|(k, _)| *k == key).map(|(_, v)| *v).expect("known tolerance key")
        })
    }

    pub fn mode_name(&self) -> &'static str {
        match self.mode {
            HierarchyMode::Homogeneous => "homogeneous",
            HierarchyMode::Inhomogeneous => "inhomogeneous",
        }
    }
}
