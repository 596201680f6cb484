//! Run configuration and its `key = value` file format.
//!
//! ```text
//! # comments and blank lines are ignored
//! alpha = 7.2973525693e-3
//! p_fermi = 1.0
//! rel_tol = 1e-8            # quadrature keys may also be written quadrature.rel_tol
//! output_precision = 12
//! ```

use std::path::Path;

use dxl_core::densities::Constants;
use dxl_core::radialft::QuadratureSpec;

pub const DEFAULT_PRECISION: usize = 17;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub constants: Constants,
    pub quadrature: QuadratureSpec,
    pub output_precision: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { constants: Constants::default(), quadrature: QuadratureSpec::default(), output_precision: DEFAULT_PRECISION }
    }
}

fn number<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T, String> {
    value.parse().map_err(|_| format!("config line {line}: cannot parse '{value}' for {key}"))
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<RunConfig, String> {
        let mut cfg = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(format!("config line {line}: expected 'key = value', got '{content}'"));
            };
            let key = key.trim();
            let value = value.trim();
            let q = &mut cfg.quadrature;
            match key.strip_prefix("quadrature.").unwrap_or(key) {
                "alpha" => cfg.constants.alpha = number(key, value, line)?,
                "p_fermi" => cfg.constants.p_fermi = number(key, value, line)?,
                "output_precision" => cfg.output_precision = number(key, value, line)?,
                "rel_tol" => q.rel_tol = number(key, value, line)?,
                "abs_tol" => q.abs_tol = number(key, value, line)?,
                "max_panels" => q.max_panels = number(key, value, line)?,
                "accel_terms" => q.accel_terms = number(key, value, line)?,
                "tail_cut" => q.tail_cut = number(key, value, line)?,
                _ => return Err(format!("config line {line}: unknown key '{key}'")),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<RunConfig, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        RunConfig::parse(&text)
    }

    pub fn validate(&self) -> Result<(), String> {
        self.constants.validate().map_err(|e| e.to_string())?;
        self.quadrature.validate().map_err(|e| e.to_string())?;
        if !(6..=17).contains(&self.output_precision) {
            return Err(format!("output_precision must be in 6..=17, got {}", self.output_precision));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(RunConfig::parse("\n# nothing\n").unwrap(), RunConfig::default());
    }

    #[test]
    fn keys_and_comments() {
        let cfg = RunConfig::parse("alpha = 0.01\np_fermi=2 # Fermi\nquadrature.rel_tol = 1e-9\nmax_panels = 50\noutput_precision = 8\n").unwrap();
        assert_eq!(cfg.constants.alpha, 0.01);
        assert_eq!(cfg.constants.p_fermi, 2.0);
        assert_eq!(cfg.quadrature.rel_tol, 1e-9);
        assert_eq!(cfg.quadrature.max_panels, 50);
        assert_eq!(cfg.output_precision, 8);
        cfg.validate().unwrap();
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunConfig::parse("alpha 0.01").is_err());
        assert!(RunConfig::parse("beta = 1").is_err());
        assert!(RunConfig::parse("alpha = x").is_err());
        let cfg = RunConfig::parse("output_precision = 5").unwrap();
        assert!(cfg.validate().is_err());
        assert!(RunConfig::parse("p_fermi = -1").unwrap().validate().is_err());
    }
}
