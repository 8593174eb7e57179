//! Suite configuration, read from JSON. Unknown keys are rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::base_ring::{BaseRing, ResidueField};
use crate::construction::{
    minimal_exponents, preset_coefficients, CoefficientPreset, Construction, ConstructionParams, SeriesFault,
};
use crate::error::{Error, Result};
use crate::expr::parse_aelem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Poly,
    Padic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldChoice {
    Rationals,
    Prime,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseConfig {
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldChoice>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

impl BaseConfig {
    pub fn rationals() -> Self {
        BaseConfig { mode: Mode::Poly, field: Some(FieldChoice::Rationals), q: None, p: None }
    }

    pub fn ring(&self) -> Result<BaseRing> {
        let ring = match (self.mode, self.field, self.q, self.p) {
            (Mode::Poly, None | Some(FieldChoice::Rationals), None, None) => {
                BaseRing::Localized(ResidueField::Rationals)
            }
            (Mode::Poly, Some(FieldChoice::Prime), Some(q), None) => BaseRing::Localized(ResidueField::Prime(q)),
            (Mode::Padic, None, None, Some(p)) => BaseRing::PAdic(p),
            _ => {
                return Err(Error::Config(
                    "base must be {mode: poly, field: rationals}, {mode: poly, field: prime, q} or {mode: padic, p}"
                        .into(),
                ))
            }
        };
        ring.validate().map_err(|e| Error::Config(e.to_string()))?;
        Ok(ring)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CoefficientConfig {
    Ones,
    RandomUnits { seed: u64 },
    /// Elements of `A` in expression syntax, e.g. `"1 + t"`.
    Explicit { values: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ExponentConfig {
    Minimal,
    Explicit { values: Vec<u32> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Identities,
    Trick2,
    DvrWitnesses,
    CNormalForm,
    Eq6,
    Claim,
    Ex1,
    Ex2,
    FracIntegral,
    Akizuki,
    Nonfiniteness,
    OracleEquivalence,
    MaximalIdeal,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Identities,
        Suite::Trick2,
        Suite::DvrWitnesses,
        Suite::CNormalForm,
        Suite::Eq6,
        Suite::Claim,
        Suite::Ex1,
        Suite::Ex2,
        Suite::FracIntegral,
        Suite::Akizuki,
        Suite::Nonfiniteness,
        Suite::OracleEquivalence,
        Suite::MaximalIdeal,
    ];
}

/// Deliberate corruption used to check that failures are detected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Fault {
    /// Perturb coefficient `index` of the stored series `z_level`.
    CorruptSeries { level: usize, index: u32 },
    /// Drop one term from the first trick-2 certificate.
    CorruptCertificate,
}

fn default_r_max() -> usize {
    5
}
fn default_precision() -> u32 {
    64
}
fn default_degree_bound() -> u32 {
    4
}
fn default_max_level() -> usize {
    6
}
fn default_trials() -> u64 {
    1000
}
fn default_seed() -> u64 {
    42
}
fn default_suites() -> Vec<Suite> {
    Suite::ALL.to_vec()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub base: BaseConfig,
    pub coefficients: CoefficientConfig,
    pub exponents: ExponentConfig,
    #[serde(default = "default_r_max")]
    pub r_max: usize,
    /// Series precision `N`.
    #[serde(default = "default_precision")]
    pub precision: u32,
    #[serde(default = "default_degree_bound")]
    pub degree_bound: u32,
    #[serde(default = "default_max_level")]
    pub max_level: usize,
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_suites")]
    pub suites: Vec<Suite>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fault: Option<Fault>,
}

impl Default for SuiteConfig {
    /// `k = Q`, `a_i = 1`, minimal exponents, `r_max = 5`.
    fn default() -> Self {
        SuiteConfig {
            base: BaseConfig::rationals(),
            coefficients: CoefficientConfig::Ones,
            exponents: ExponentConfig::Minimal,
            r_max: default_r_max(),
            precision: default_precision(),
            degree_bound: default_degree_bound(),
            max_level: default_max_level(),
            trials: default_trials(),
            seed: default_seed(),
            suites: default_suites(),
            fault: None,
        }
    }
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Checks everything except the construction hypotheses.
    pub fn check_caps(&self) -> Result<()> {
        if self.precision == 0 || self.trials == 0 {
            return Err(Error::Config("precision and trials must be positive".into()));
        }
        if self.max_level > self.r_max + 1 {
            return Err(Error::Config(format!(
                "max_level {} exceeds the top level r_max + 1 = {}",
                self.max_level,
                self.r_max + 1
            )));
        }
        if self.suites.is_empty() {
            return Err(Error::Config("no suites selected".into()));
        }
        Ok(())
    }

    pub fn construction_params(&self) -> Result<ConstructionParams> {
        self.check_caps()?;
        let base = self.base.ring()?;
        let len = self.r_max + 2;
        let preset = match &self.coefficients {
            CoefficientConfig::Ones => CoefficientPreset::Ones,
            CoefficientConfig::RandomUnits { seed } => CoefficientPreset::RandomUnits { seed: *seed },
            CoefficientConfig::Explicit { values } => CoefficientPreset::Explicit(
                values
                    .iter()
                    .map(|v| parse_aelem(base, v).map_err(|e| Error::Config(format!("coefficient `{v}`: {e}"))))
                    .collect::<Result<_>>()?,
            ),
        };
        let n = match &self.exponents {
            ExponentConfig::Minimal => minimal_exponents(self.r_max),
            ExponentConfig::Explicit { values } => values.clone(),
        };
        Ok(ConstructionParams {
            base,
            a: preset_coefficients(base, &preset, len),
            n,
            r_max: self.r_max,
            transcendence_assumed: true,
        })
    }

    /// Validated construction; hypothesis violations come back as
    /// [`Error::InvalidParams`].
    pub fn construction(&self) -> Result<Construction> {
        Construction::new(self.construction_params()?)
    }

    pub fn series_fault(&self) -> Option<SeriesFault> {
        match self.fault {
            Some(Fault::CorruptSeries { level, index }) => Some(SeriesFault { level, index }),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_fill_in() {
        let cfg = SuiteConfig::from_json(
            r#"{"base": {"mode": "poly", "field": "rationals"}, "coefficients": {"preset": "ones"},
                "exponents": {"kind": "minimal"}}"#,
        )
        .unwrap();
        assert_eq!(cfg, SuiteConfig::default());
        let c = cfg.construction().unwrap();
        assert_eq!(c.n(6), 126);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = SuiteConfig::from_json(
            r#"{"base": {"mode": "poly"}, "coefficients": {"preset": "ones"},
                "exponents": {"kind": "minimal"}, "colour": 3}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Config(_)));
        assert!(SuiteConfig::from_json(r#"{"base": {"mode": "poly", "x": 1}}"#).is_err());
    }

    #[test]
    fn violated_exponents() {
        let mut cfg = SuiteConfig { r_max: 1, max_level: 2, ..SuiteConfig::default() };
        cfg.exponents = ExponentConfig::Explicit { values: vec![0, 2, 5] };
        assert!(matches!(cfg.construction(), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn other_bases() {
        let cfg = SuiteConfig {
            base: BaseConfig { mode: Mode::Padic, field: None, q: None, p: Some(5) },
            coefficients: CoefficientConfig::Explicit { values: vec!["1".into(), "2".into(), "1/3".into()] },
            r_max: 1,
            max_level: 2,
            ..SuiteConfig::default()
        };
        let c = cfg.construction().unwrap();
        assert_eq!(c.a(2).to_string(), "1/3");
        let bad = BaseConfig { mode: Mode::Poly, field: Some(FieldChoice::Prime), q: Some(100), p: None };
        assert!(bad.ring().is_err());
    }
}
