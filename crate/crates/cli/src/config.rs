//! The TOML job file.

use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub datum: DatumSpec,
    #[serde(default)]
    pub parameters: ParameterSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character: Option<ValueList>,
    #[serde(default)]
    pub bounds: Bounds,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<VectorSpec>,
    /// Eigencharacter for the weight-space commands; defaults to the character.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<ValueList>,
}

/// Either a catalog name or an explicit matrix, optionally with explicit
/// simple roots and coroots (otherwise the minimal realization is used).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple_roots: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple_coroots: Option<Vec<Vec<i64>>>,
}

/// `q` sets `sigma = sigma' = sqrt(q)` everywhere; otherwise per-generator
/// scalars (`sigma_prime` defaults to `sigma`).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_prime: Option<Vec<String>>,
}

/// Scalars as strings: `"5/3"`, `"-1"`, `"1+2*sqrt(3)"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueList {
    pub values: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Bounds {
    pub coroot_height: i64,
    pub weyl_length: usize,
    pub ball: usize,
    pub n_cap: usize,
    pub dominance_cap: usize,
    pub probe_coeff: i64,
}

impl Default for Bounds {
    fn default() -> Self {
        Self { coroot_height: 10, weyl_length: 6, ball: 3, n_cap: 8, dominance_cap: 200, probe_coeff: 3 }
    }
}

impl Bounds {
    pub fn validate(&self) -> Result<(), CliError> {
        let named = [
            ("coroot_height", self.coroot_height),
            ("weyl_length", self.weyl_length as i64),
            ("ball", self.ball as i64),
            ("n_cap", self.n_cap as i64),
            ("dominance_cap", self.dominance_cap as i64),
            ("probe_coeff", self.probe_coeff),
        ];
        match named.iter().find(|(_, v)| *v <= 0) {
            Some((name, _)) => Err(CliError::Config(format!("bounds.{name} must be positive"))),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorSpec {
    pub terms: Vec<TermSpec>,
}

/// `scalar * T_w v`, with `w` given by a one-based word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub word: Vec<usize>,
    pub scalar: String,
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: Self = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.bounds.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Every scalar string in the file, for choosing the coefficient field.
    pub fn scalars(&self) -> impl Iterator<Item = &str> {
        let p = &self.parameters;
        let lists = [p.sigma.as_ref(), p.sigma_prime.as_ref(), self.character.as_ref().map(|c| &c.values), self.weight.as_ref().map(|c| &c.values)];
        lists
            .into_iter()
            .flatten()
            .flatten()
            .map(String::as_str)
            .chain(self.vector.iter().flat_map(|v| v.terms.iter().map(|t| t.scalar.as_str())))
    }
}
