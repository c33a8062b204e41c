use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::code::{css_validate, hgp_rep3, lifted_product, lp_tanner, CssCode, QcBaseMatrix};
use crate::decoder::{DecoderConfig, DecoderMode};
use crate::error::{Error, Result};
use crate::gf2::io::read_alist;

/// Where a sweep's code comes from. File paths are resolved relative to the config file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CodeSpec {
    /// `lp_tanner` or `hgp_rep3`.
    Builtin(String),
    /// Lifted product of two base-matrix JSON files.
    LiftedProduct { a: PathBuf, b: PathBuf },
    /// Stabilizer matrices in alist form.
    Alist { h_x: PathBuf, h_z: PathBuf },
}

impl CodeSpec {
    pub fn build(&self, base_dir: &Path) -> Result<CssCode> {
        let resolve = |p: &PathBuf| {
            if p.is_absolute() {
                p.clone()
            } else {
                base_dir.join(p)
            }
        };
        match self {
            CodeSpec::Builtin(name) => match name.as_str() {
                "lp_tanner" => Ok(lp_tanner()),
                "hgp_rep3" => Ok(hgp_rep3()),
                other => Err(Error::InvalidConfig(format!("unknown builtin code {other:?}"))),
            },
            CodeSpec::LiftedProduct { a, b } => {
                let a = QcBaseMatrix::read(resolve(a))?;
                let b = QcBaseMatrix::read(resolve(b))?;
                lifted_product(&a, &b)
            }
            CodeSpec::Alist { h_x, h_z } => {
                let name = h_x
                    .file_stem()
                    .map_or_else(|| "alist".to_string(), |s| s.to_string_lossy().into_owned());
                CssCode::new(name, read_alist(resolve(h_x))?, read_alist(resolve(h_z))?)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum StopRule {
    /// Exactly this many trials per grid point.
    Trials { trials: u64 },
    /// Stop at the trial that produces the `logical_errors`-th failure, or at `max_trials`.
    LogicalErrors { logical_errors: u64, max_trials: u64 },
}

impl StopRule {
    pub fn max_trials(&self) -> u64 {
        match *self {
            StopRule::Trials { trials } => trials,
            StopRule::LogicalErrors { max_trials, .. } => max_trials,
        }
    }

    pub fn error_target(&self) -> Option<u64> {
        match *self {
            StopRule::Trials { .. } => None,
            StopRule::LogicalErrors { logical_errors, .. } => Some(logical_errors),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub code: CodeSpec,
    /// Label for the `code` CSV column; defaults to the built code's name.
    #[serde(default)]
    pub name: Option<String>,
    pub p_grid: Vec<f64>,
    pub sigma_grid: Vec<f64>,
    pub modes: Vec<DecoderMode>,
    #[serde(default)]
    pub decoder: DecoderConfig,
    pub stop_rule: StopRule,
    #[serde(default)]
    pub master_seed: u64,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p_grid.is_empty() || self.sigma_grid.is_empty() || self.modes.is_empty() {
            return Err(Error::InvalidConfig("p_grid, sigma_grid and modes must be non-empty".into()));
        }
        for &p in &self.p_grid {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig(format!("p = {p} outside [0, 1]")));
            }
        }
        for &s in &self.sigma_grid {
            if !(s >= 0.0 && s.is_finite()) {
                return Err(Error::InvalidConfig(format!("sigma = {s} must be finite and >= 0")));
            }
        }
        match self.stop_rule {
            StopRule::Trials { trials: 0 } => {
                return Err(Error::InvalidConfig("stop_rule trials must be positive".into()))
            }
            StopRule::LogicalErrors {
                logical_errors,
                max_trials,
            } if logical_errors == 0 || max_trials == 0 => {
                return Err(Error::InvalidConfig("stop_rule counts must be positive".into()))
            }
            _ => {}
        }
        self.decoder.validate()
    }

    /// Builds the code and checks that it is a valid CSS pair.
    pub fn build_code(&self, base_dir: &Path) -> Result<CssCode> {
        let mut code = self.code.build(base_dir)?;
        let report = css_validate(&code);
        if !report.passed() {
            return Err(Error::InvalidConfig(format!(
                "code {} fails H_X H_Z^T = 0 on {} row pairs",
                code.name,
                report.offending_pairs.len()
            )));
        }
        if let Some(name) = &self.name {
            code.name = name.clone();
        }
        Ok(code)
    }
}
