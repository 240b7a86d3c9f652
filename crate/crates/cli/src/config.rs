//! Flat key-value run configuration: dotted keys, one `key = value` per
//! line, `#` comments, command-line `--key value` overrides. Values stay
//! strings until a command asks for them typed, so the JSON config echo can
//! reproduce exactly what was supplied.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use tiltwell::io::JsonValue;
use tiltwell::potentials::{PotentialError, PotentialSpec};
use tiltwell::solitons::SolitonError;
use tiltwell::wavefunctional::WavefunctionalError;
use tiltwell::{EuclideanError, LatticeError};

/// Errors carrying their process exit code: 2 for configuration and
/// precondition problems, 3 for solver failures, 4 for file I/O.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Solver(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn config(message: impl Into<String>) -> Self {
        CliError::Config(message.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Solver(m) => write!(f, "solver error: {m}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
        }
    }
}

impl From<PotentialError> for CliError {
    fn from(e: PotentialError) -> Self {
        match e {
            PotentialError::NoConvergence { .. } => CliError::Solver(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<SolitonError> for CliError {
    fn from(e: SolitonError) -> Self {
        match e {
            SolitonError::IntegrationFailure { .. } => CliError::Solver(e.to_string()),
            SolitonError::Potential(inner) => inner.into(),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<EuclideanError> for CliError {
    fn from(e: EuclideanError) -> Self {
        match e {
            EuclideanError::Potential(inner) => inner.into(),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<WavefunctionalError> for CliError {
    fn from(e: WavefunctionalError) -> Self {
        match e {
            WavefunctionalError::Potential(inner) => inner.into(),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<tiltwell::io::IoError> for CliError {
    fn from(e: tiltwell::io::IoError) -> Self {
        match e {
            tiltwell::io::IoError::Io(inner) => CliError::Io(inner.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Merged configuration for one command invocation.
pub struct Config {
    pub command: String,
    entries: BTreeMap<String, String>,
}

impl Config {
    /// Reads the config file and applies `--key value` overrides on top.
    /// Duplicate keys within the file are rejected; a later override wins
    /// over both the file and earlier overrides.
    pub fn load(
        command: &str,
        path: &Path,
        overrides: &[(String, String)],
    ) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::config(format!(
                    "{}:{}: expected `key = value`, got `{line}`",
                    path.display(),
                    lineno + 1
                )));
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() {
                return Err(CliError::config(format!(
                    "{}:{}: empty key",
                    path.display(),
                    lineno + 1
                )));
            }
            if entries.insert(key.clone(), value).is_some() {
                return Err(CliError::config(format!(
                    "{}:{}: duplicate key `{key}`",
                    path.display(),
                    lineno + 1
                )));
            }
        }
        for (key, value) in overrides {
            entries.insert(key.clone(), value.clone());
        }
        Ok(Self {
            command: command.to_string(),
            entries,
        })
    }

    #[cfg(test)]
    pub fn from_pairs(command: &str, pairs: &[(&str, &str)]) -> Self {
        Self {
            command: command.to_string(),
            entries: pairs
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn require(&self, key: &str) -> Result<&str, CliError> {
        self.get(key).ok_or_else(|| {
            CliError::config(format!(
                "missing key `{key}` for command `{}`",
                self.command
            ))
        })
    }

    pub fn require_f64(&self, key: &str) -> Result<f64, CliError> {
        parse_f64(key, self.require(key)?)
    }

    pub fn optional_f64(&self, key: &str, default: f64) -> Result<f64, CliError> {
        match self.get(key) {
            Some(raw) => parse_f64(key, raw),
            None => Ok(default),
        }
    }

    pub fn require_usize(&self, key: &str) -> Result<usize, CliError> {
        let raw = self.require(key)?;
        raw.parse::<usize>()
            .map_err(|_| CliError::config(format!("key `{key}`: `{raw}` is not a whole number")))
    }

    /// Rejects any key outside the command's vocabulary.
    pub fn check_allowed(&self, allowed: &[&str]) -> Result<(), CliError> {
        for key in self.entries.keys() {
            if !allowed.contains(&key.as_str()) {
                return Err(CliError::config(format!(
                    "unknown key `{key}` for command `{}`",
                    self.command
                )));
            }
        }
        Ok(())
    }

    pub fn forbid(&self, key: &str, reason: &str) -> Result<(), CliError> {
        if self.entries.contains_key(key) {
            return Err(CliError::config(format!("key `{key}` not allowed: {reason}")));
        }
        Ok(())
    }

    /// The resolved configuration as a JSON object, values verbatim, plus
    /// the command name.
    pub fn echo_json(&self) -> JsonValue {
        let mut pairs: Vec<(String, JsonValue)> = self
            .entries
            .iter()
            .map(|(k, v)| (k.clone(), JsonValue::Str(v.clone())))
            .collect();
        pairs.push(("command".to_string(), JsonValue::Str(self.command.clone())));
        JsonValue::object(pairs)
    }

    /// Builds and validates the potential named by `potential.family`,
    /// rejecting parameter keys that belong to a different family.
    pub fn potential(&self) -> Result<PotentialSpec, CliError> {
        let family = self.require("potential.family")?;
        let (spec, family_keys): (PotentialSpec, &[&str]) = match family {
            "quartic" => (
                PotentialSpec::QuarticDoubleWell {
                    lambda: self.require_f64("potential.lambda")?,
                    a: self.require_f64("potential.a")?,
                    tilt: self.optional_f64("potential.tilt", 0.0)?,
                },
                &["potential.lambda", "potential.a", "potential.tilt"],
            ),
            "sine_gordon" => (
                PotentialSpec::DrivenSineGordon {
                    c_a: self.require_f64("potential.c_a")?,
                    c_b: self.optional_f64("potential.c_b", 0.0)?,
                    phi_c: self.optional_f64("potential.phi_c", 0.0)?,
                    tilt: self.optional_f64("potential.tilt", 0.0)?,
                },
                &[
                    "potential.c_a",
                    "potential.c_b",
                    "potential.phi_c",
                    "potential.tilt",
                ],
            ),
            "taylor" => (
                PotentialSpec::TaylorQuartic {
                    phi0: self.require_f64("potential.phi0")?,
                    c0: self.require_f64("potential.c0")?,
                    c1: self.require_f64("potential.c1")?,
                },
                &["potential.phi0", "potential.c0", "potential.c1"],
            ),
            other => {
                return Err(CliError::config(format!(
                    "key `potential.family`: unknown family `{other}` \
                     (expected quartic, sine_gordon, or taylor)"
                )))
            }
        };
        for key in self.entries.keys() {
            if key.starts_with("potential.")
                && key != "potential.family"
                && !family_keys.contains(&key.as_str())
            {
                return Err(CliError::config(format!(
                    "key `{key}` does not apply to potential family `{family}`"
                )));
            }
        }
        spec.validate()?;
        Ok(spec)
    }

    /// Builds the spatial grid from `grid.x_min`, `grid.x_max`, `grid.n`.
    pub fn grid(&self) -> Result<tiltwell::Grid, CliError> {
        let x_min = self.require_f64("grid.x_min")?;
        let x_max = self.require_f64("grid.x_max")?;
        let n = self.require_usize("grid.n")?;
        Ok(tiltwell::Grid::new(x_min, x_max, n)?)
    }
}

fn parse_f64(key: &str, raw: &str) -> Result<f64, CliError> {
    let value: f64 = raw
        .parse()
        .map_err(|_| CliError::config(format!("key `{key}`: `{raw}` is not a number")))?;
    if !value.is_finite() {
        return Err(CliError::config(format!(
            "key `{key}`: `{raw}` must be finite"
        )));
    }
    Ok(value)
}
