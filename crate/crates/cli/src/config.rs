//! Sweep configuration: built-in defaults, an optional TOML or JSON file,
//! then command-line flags, in increasing precedence.

use std::path::Path;

use serde::{Deserialize, Serialize};
use symbern_core::identities::CharacterSelector;
use symbern_core::{parse_rational, Perturbation, Rational, SweepGrid, Theorem, Weights};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub moduli: Vec<u64>,
    /// explicit character labels, applied to every modulus
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub characters: Option<Vec<usize>>,
    #[serde(default)]
    pub allow_imprimitive: bool,
    pub theorems: Vec<Theorem>,
    #[serde(default)]
    pub n_min: usize,
    pub n_max: usize,
    pub weights: Vec<Weights>,
    /// `y` tuples as exact rationals `"p/q"`; omitted entries read as 0
    #[serde(default)]
    pub ys: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturb: Option<Perturbation>,
}

/// Partial configuration as read from a file; absent keys keep defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    moduli: Option<Vec<u64>>,
    characters: Option<Vec<usize>>,
    allow_imprimitive: Option<bool>,
    theorems: Option<Vec<Theorem>>,
    n_min: Option<usize>,
    n_max: Option<usize>,
    weights: Option<Vec<Weights>>,
    ys: Option<Vec<Vec<String>>>,
    perturb: Option<Perturbation>,
}

impl SweepConfig {
    /// Small grid for quick `verify` runs.
    pub fn verify_defaults() -> Self {
        SweepConfig {
            moduli: vec![1],
            characters: None,
            allow_imprimitive: false,
            theorems: Theorem::ALL.to_vec(),
            n_min: 0,
            n_max: 4,
            weights: vec![Weights::new(1, 2, 3).expect("positive")],
            ys: Vec::new(),
            perturb: None,
        }
    }

    /// The full acceptance grid.
    pub fn sweep_defaults() -> Self {
        let w = |a, b, c| Weights::new(a, b, c).expect("positive");
        let tuple = |v: [&str; 3]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        SweepConfig {
            moduli: vec![1, 3, 4, 5, 7, 8],
            characters: None,
            allow_imprimitive: false,
            theorems: Theorem::ALL.to_vec(),
            n_min: 0,
            n_max: 10,
            weights: vec![w(1, 1, 1), w(1, 2, 3), w(2, 3, 5), w(3, 4, 7)],
            ys: vec![tuple(["0", "1/2", "2/3"]), tuple(["1/2", "2/3", "0"]), tuple(["2/3", "0", "1/2"])],
            perturb: None,
        }
    }

    /// Overlays the keys present in a TOML file (or JSON, by extension).
    pub fn merge_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let file: ConfigFile = if path.extension().is_some_and(|e| e == "json") {
            let mut value: serde_json::Value = serde_json::from_str(&text).map_err(|e| {
                CliError::Usage(format!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column()))
            })?;
            // a whole report document: rerun its echoed configuration
            if let Some(echo) = value.get_mut("config") {
                value = echo.take();
            }
            serde_json::from_value(value).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        } else {
            toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        };
        let ConfigFile { moduli, characters, allow_imprimitive, theorems, n_min, n_max, weights, ys, perturb } = file;
        if let Some(v) = moduli {
            self.moduli = v;
        }
        if characters.is_some() {
            self.characters = characters;
        }
        if let Some(v) = allow_imprimitive {
            self.allow_imprimitive = v;
        }
        if let Some(v) = theorems {
            self.theorems = v;
        }
        if let Some(v) = n_min {
            self.n_min = v;
        }
        if let Some(v) = n_max {
            self.n_max = v;
        }
        if let Some(v) = weights {
            self.weights = v;
        }
        if let Some(v) = ys {
            self.ys = v;
        }
        if perturb.is_some() {
            self.perturb = perturb;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(i) = self.moduli.iter().position(|&d| d == 0) {
            return Err(CliError::Usage(format!("field `moduli[{i}]`: modulus must be at least 1")));
        }
        if self.theorems.is_empty() {
            return Err(CliError::Usage("field `theorems`: select at least one theorem".into()));
        }
        if self.n_min > self.n_max {
            return Err(CliError::Usage(format!("fields `n_min` = {} exceeds `n_max` = {}", self.n_min, self.n_max)));
        }
        for (i, tuple) in self.ys.iter().enumerate() {
            if tuple.len() > 3 {
                return Err(CliError::Usage(format!("field `ys[{i}]`: at most three values (y1, y2, y3)")));
            }
            for (j, y) in tuple.iter().enumerate() {
                parse_rational(y).map_err(|e| CliError::Usage(format!("field `ys[{i}][{j}]`: {e}")))?;
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<SweepGrid, CliError> {
        self.validate()?;
        let ys = self
            .ys
            .iter()
            .map(|t| t.iter().map(|y| parse_rational(y)).collect::<Result<Vec<Rational>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(SweepGrid {
            moduli: self.moduli.clone(),
            characters: CharacterSelector {
                include_imprimitive: self.allow_imprimitive,
                labels: self.characters.clone(),
            },
            theorems: self.theorems.clone(),
            n_values: (self.n_min..=self.n_max).collect(),
            weights: self.weights.clone(),
            ys,
            perturbation: self.perturb,
        })
    }
}
