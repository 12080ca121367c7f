//! Run configuration: built-in defaults, then a `key=value` file, then
//! `BOHR_*` environment variables, then command-line flags.

use std::fs;
use std::path::Path;

use bohr_core::NumericConfig;

use crate::args::{Format, GlobalArgs};
use crate::CliError;

pub const ENV_PREFIX: &str = "BOHR_";

const KEYS: [&str; 9] = [
    "truncation",
    "root_tol",
    "quad_tol",
    "tail_tol",
    "theta_samples",
    "r_max",
    "scan_points",
    "format",
    "seed",
];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub numeric: NumericConfig,
    pub theta_samples: usize,
    pub format: Format,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            numeric: NumericConfig::default(),
            theta_samples: 64,
            format: Format::Csv,
            seed: 7,
        }
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid value {value:?} for {key}")))
}

impl RunConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let n = &mut self.numeric;
        match key {
            "truncation" | "T" => n.truncation = parse(key, value)?,
            "root_tol" => n.root_tol = parse(key, value)?,
            "quad_tol" => n.quad_tol = parse(key, value)?,
            "tail_tol" => n.tail_tol = parse(key, value)?,
            "r_max" => n.r_max = parse(key, value)?,
            "scan_points" => n.scan_points = parse(key, value)?,
            "theta_samples" => self.theta_samples = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "format" => {
                self.format = match value.trim() {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    other => return Err(CliError::Usage(format!("unknown format {other:?}"))),
                }
            }
            _ => return Err(CliError::Usage(format!("unknown config key {key:?}"))),
        }
        Ok(())
    }

    /// Applies `key=value` lines; blank lines and `#` comments are skipped.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or_default().trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("{}:{}: expected key=value", path.display(), i + 1))
            })?;
            self.set(key.trim(), value)?;
        }
        Ok(())
    }

    pub fn apply_env(&mut self, lookup: impl Fn(&str) -> Option<String>) -> Result<(), CliError> {
        for key in KEYS {
            if let Some(value) = lookup(&format!("{ENV_PREFIX}{}", key.to_ascii_uppercase())) {
                self.set(key, &value)?;
            }
        }
        Ok(())
    }

    pub fn apply_flags(&mut self, g: &GlobalArgs) {
        if let Some(t) = g.truncation {
            self.numeric.truncation = t;
        }
        if let Some(t) = g.root_tol {
            self.numeric.root_tol = t;
        }
        if let Some(t) = g.quad_tol {
            self.numeric.quad_tol = t;
        }
        if let Some(t) = g.theta_samples {
            self.theta_samples = t;
        }
        if let Some(s) = g.seed {
            self.seed = s;
        }
        if let Some(f) = g.format {
            self.format = f;
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let n = &self.numeric;
        if n.truncation < 32 {
            return Err(CliError::Usage(format!("truncation must be at least 32, got {}", n.truncation)));
        }
        for (name, v) in [("root_tol", n.root_tol), ("quad_tol", n.quad_tol), ("tail_tol", n.tail_tol)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Usage(format!("{name} must be positive, got {v}")));
            }
        }
        if !(n.r_max > 0.0 && n.r_max < 1.0) {
            return Err(CliError::Usage(format!("r_max must lie in (0, 1), got {}", n.r_max)));
        }
        if n.scan_points == 0 || self.theta_samples == 0 {
            return Err(CliError::Usage("scan_points and theta_samples must be positive".into()));
        }
        Ok(())
    }

    pub fn resolve(g: &GlobalArgs) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        if let Some(path) = &g.config {
            cfg.apply_file(path)?;
        }
        cfg.apply_env(|k| std::env::var(k).ok())?;
        cfg.apply_flags(g);
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;
    use std::io::Write;

    #[test]
    fn layering() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "# numerics\ntruncation = 128\nroot_tol=1e-10\n\nseed=3").unwrap();
        let mut cfg = RunConfig::default();
        cfg.apply_file(file.path()).unwrap();
        assert_eq!(cfg.numeric.truncation, 128);
        assert_eq!(cfg.numeric.root_tol, 1e-10);
        let env: HashMap<&str, &str> = [("BOHR_SEED", "11"), ("BOHR_FORMAT", "json")].into();
        cfg.apply_env(|k| env.get(k).map(|v| v.to_string())).unwrap();
        assert_eq!(cfg.seed, 11);
        assert_eq!(cfg.format, Format::Json);
        assert_eq!(cfg.numeric.truncation, 128);
        cfg.validate().unwrap();
    }

    #[test]
    fn validation() {
        let mut cfg = RunConfig::default();
        cfg.numeric.truncation = 16;
        assert!(cfg.validate().is_err());
        let mut cfg = RunConfig::default();
        cfg.numeric.quad_tol = 0.0;
        assert!(cfg.validate().is_err());
        assert!(RunConfig::default().set("nonsense", "1").is_err());
        assert!(RunConfig::default().set("root_tol", "abc").is_err());
    }
}
