use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::noise::DEFAULT_LLR_SAT;

/// Which syndrome input the decoder consumes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecoderMode {
    /// Noiseless syndrome, standard min-sum.
    Perfect,
    /// Thresholded noisy syndrome, standard min-sum.
    Hard,
    /// Soft syndrome with the cutoff rule and full syndrome-belief updates.
    Soft,
    /// Soft syndrome where only the belief sign is updated, never its reliability.
    SoftNoReliability,
}

impl DecoderMode {
    pub fn is_soft(self) -> bool {
        matches!(self, DecoderMode::Soft | DecoderMode::SoftNoReliability)
    }

    pub fn name(self) -> &'static str {
        match self {
            DecoderMode::Perfect => "perfect",
            DecoderMode::Hard => "hard",
            DecoderMode::Soft => "soft",
            DecoderMode::SoftNoReliability => "soft_no_reliability",
        }
    }
}

impl std::fmt::Display for DecoderMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for DecoderMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "perfect" => Ok(DecoderMode::Perfect),
            "hard" => Ok(DecoderMode::Hard),
            "soft" => Ok(DecoderMode::Soft),
            "soft_no_reliability" => Ok(DecoderMode::SoftNoReliability),
            other => Err(Error::InvalidConfig(format!("unknown decoder mode {other:?}"))),
        }
    }
}

/// How the per-bit prior LLR is derived from the depolarizing probability `p`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PriorMode {
    /// Flip probability `2p/3`, the marginal of one binary component under depolarizing noise.
    #[default]
    DepolarizingMarginal,
    /// Flip probability `p` itself.
    Bernoulli,
}

impl PriorMode {
    pub fn flip_probability(self, p: f64) -> f64 {
        match self {
            PriorMode::DepolarizingMarginal => 2.0 * p / 3.0,
            PriorMode::Bernoulli => p,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DecoderConfig {
    pub mode: DecoderMode,
    /// Normalization factor applied to check-to-variable messages, in (0, 1).
    pub beta: f64,
    /// Reliability cutoff: checks with belief above it use the plain min rule.
    pub gamma_cutoff: f64,
    pub l_max: usize,
    pub llr_sat: f64,
    pub prior_mode: PriorMode,
    /// Soft check updates read the evolving beliefs instead of the measured sign and
    /// reliability.
    pub evolving_check_inputs: bool,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        Self {
            mode: DecoderMode::Soft,
            beta: 0.75,
            gamma_cutoff: 5.0,
            l_max: 100,
            llr_sat: DEFAULT_LLR_SAT,
            prior_mode: PriorMode::DepolarizingMarginal,
            evolving_check_inputs: false,
        }
    }
}

impl DecoderConfig {
    pub fn with_mode(&self, mode: DecoderMode) -> Self {
        Self {
            mode,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(Error::InvalidConfig(format!("beta {} outside (0, 1)", self.beta)));
        }
        if self.l_max == 0 {
            return Err(Error::InvalidConfig("l_max must be at least 1".into()));
        }
        if self.gamma_cutoff.is_nan() || self.gamma_cutoff < 0.0 {
            return Err(Error::InvalidConfig(format!("gamma_cutoff {} must be >= 0", self.gamma_cutoff)));
        }
        if !(self.llr_sat > 0.0 && self.llr_sat.is_finite()) {
            return Err(Error::InvalidConfig(format!("llr_sat {} must be positive and finite", self.llr_sat)));
        }
        Ok(())
    }
}
