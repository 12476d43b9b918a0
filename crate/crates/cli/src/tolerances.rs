//! Calibrated constants for the `sqrt(p)` checks.

use std::path::Path;

use serde::{Deserialize, Serialize};

pub const DEFAULT_TOLERANCES: &str = include_str!("../fixtures/tolerances.toml");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerDegree {
    pub d3: f64,
    pub d4: f64,
    pub d5: f64,
}

impl PerDegree {
    pub fn get(&self, d: usize) -> Option<f64> {
        match d {
            3 => Some(self.d3),
            4 => Some(self.d4),
            5 => Some(self.d5),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Quartic {
    pub pair: f64,
    pub single: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Divisor {
    pub single: f64,
    pub prime_pair: f64,
    pub pair: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Chebotarev {
    pub d4: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorseScanBound {
    pub factor: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LargeQ {
    pub single: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub cube_pair: f64,
    pub prime_single: PerDegree,
    pub prime_pair: PerDegree,
    pub mu_single: PerDegree,
    pub chowla: PerDegree,
    pub quartic: Quartic,
    pub divisor: Divisor,
    pub chebotarev: Chebotarev,
    pub morse_scan: MorseScanBound,
    pub large_q: LargeQ,
}

impl Tolerances {
    pub fn parse(text: &str) -> Result<Tolerances, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    pub fn load(path: Option<&Path>) -> Result<Tolerances, String> {
        match path {
            None => Tolerances::parse(DEFAULT_TOLERANCES),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?;
                Tolerances::parse(&text)
            }
        }
    }

    /// The constant for the Möbius dichotomy at degree `d`: the larger of
    /// the single and Chowla constants.
    pub fn battery(&self, d: usize) -> Option<f64> {
        Some(self.mu_single.get(d)?.max(self.chowla.get(d)?))
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances::parse(DEFAULT_TOLERANCES).expect("bundled tolerances parse")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_file_parses() {
        let t = Tolerances::default();
        assert_eq!(t.prime_single.get(4), Some(0.40));
        assert_eq!(t.morse_scan.factor, 3);
        assert_eq!(t.battery(3), Some(3.8));
        assert!(t.prime_single.get(6).is_none());
    }

    #[test]
    fn unknown_keys_rejected() {
        let mut text = DEFAULT_TOLERANCES.to_string();
        text.push_str("\n[extra]\nx = 1\n");
        assert!(Tolerances::parse(&text).is_err());
    }
}
