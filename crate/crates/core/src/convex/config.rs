use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{rat, serde_str, Rational};

fn default_c_ak() -> Rational {
    rat(1, 4)
}

fn default_big_c_ak() -> Rational {
    rat(6, 1)
}

fn default_samples() -> u64 {
    100_000
}

fn default_seed() -> u64 {
    0x5EED
}

mod opt_rational {
    use crate::rational::{serde_str, Rational};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(transparent)]
    struct Wrap(#[serde(with = "serde_str")] Rational);

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        v.clone().map(Wrap).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

/// The unspecified absolute constants, plus Monte Carlo settings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsConfig {
    /// `c` in `a_k(K) = min (|cK| / |P_E K|)^{1/codim E}`.
    #[serde(with = "serde_str", default = "default_c_ak")]
    pub c_ak: Rational,
    /// `C` in `A_k(K) = max (|CK| / |K ∩ E|)^{1/codim E}`.
    #[serde(rename = "C_Ak", with = "serde_str", default = "default_big_c_ak")]
    pub big_c_ak: Rational,
    /// `c` in `t = c (k/n) μ_p(K)^{1/k}`; `None` until discovered by a sweep.
    #[serde(with = "opt_rational", default, skip_serializing_if = "Option::is_none")]
    pub c_41: Option<Rational>,
    #[serde(default = "default_samples")]
    pub mc_samples: u64,
    #[serde(default = "default_seed")]
    pub mc_seed: u64,
}

impl Default for ConstantsConfig {
    fn default() -> Self {
        ConstantsConfig {
            c_ak: default_c_ak(),
            big_c_ak: default_big_c_ak(),
            c_41: None,
            mc_samples: default_samples(),
            mc_seed: default_seed(),
        }
    }
}

impl ConstantsConfig {
    pub fn validate(&self) -> Result<()> {
        use num_traits::Signed;
        let positive = [("c_ak", Some(&self.c_ak)), ("C_Ak", Some(&self.big_c_ak)), ("c_41", self.c_41.as_ref())];
        for (name, v) in positive {
            if let Some(v) = v {
                if !v.is_positive() {
                    return Err(Error::Input(format!("constant {name} must be positive, got {v}")));
                }
            }
        }
        if self.mc_samples == 0 {
            return Err(Error::Input("mc_samples must be positive".into()));
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: ConstantsConfig = serde_json::from_str(s)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_partial_files() {
        let cfg = ConstantsConfig::from_json(r#"{"C_Ak": "7/2", "mc_seed": 9}"#).unwrap();
        assert_eq!(cfg.c_ak, rat(1, 4));
        assert_eq!(cfg.big_c_ak, rat(7, 2));
        assert_eq!(cfg.mc_seed, 9);
        assert_eq!(cfg.mc_samples, 100_000);
        let back: ConstantsConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn rejects_nonpositive_and_unknown() {
        assert!(ConstantsConfig::from_json(r#"{"c_ak": "0"}"#).is_err());
        assert!(ConstantsConfig::from_json(r#"{"c_41": "-1/2"}"#).is_err());
        assert!(ConstantsConfig::from_json(r#"{"bogus": 1}"#).is_err());
    }
}
