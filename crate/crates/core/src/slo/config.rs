use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of a Soccer League Optimization run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SloConfig {
    /// Number of wealthiest teams.
    pub n_a: usize,
    /// Number of regular teams.
    pub n_b: usize,
    /// Number of weakest teams.
    pub n_c: usize,
    pub seasons: usize,
    /// Half-width of the training perturbation as a fraction of the
    /// dimension's domain width.
    pub alpha: f64,
    pub seed: u64,
}

impl Default for SloConfig {
    fn default() -> Self {
        Self {
            n_a: 30,
            n_b: 30,
            n_c: 30,
            seasons: 100,
            alpha: DEFAULT_ALPHA,
            seed: 0,
        }
    }
}

pub const DEFAULT_ALPHA: f64 = 0.05;

impl SloConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_a == 0 || self.n_b == 0 || self.n_c == 0 {
            return Err(Error::InvalidConfig(format!(
                "tier sizes must be positive (got {}/{}/{})",
                self.n_a, self.n_b, self.n_c
            )));
        }
        if self.seasons == 0 {
            return Err(Error::InvalidConfig("seasons must be at least 1".into()));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "alpha must lie in (0, 1], got {}",
                self.alpha
            )));
        }
        Ok(())
    }

    pub fn team_count(&self) -> usize {
        self.n_a + self.n_b + self.n_c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        let c = SloConfig::default();
        c.validate().unwrap();
        assert_eq!(c.team_count(), 90);
    }

    #[test]
    fn rejects_bad_values() {
        let base = SloConfig::default();
        for bad in [
            SloConfig { n_a: 0, ..base },
            SloConfig { n_c: 0, ..base },
            SloConfig { seasons: 0, ..base },
            SloConfig { alpha: 0.0, ..base },
            SloConfig { alpha: 1.5, ..base },
            SloConfig {
                alpha: f64::NAN,
                ..base
            },
        ] {
            assert!(bad.validate().is_err(), "{bad:?}");
        }
        SloConfig { alpha: 1.0, ..base }.validate().unwrap();
    }
}
