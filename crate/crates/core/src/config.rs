//! Work caps and runtime knobs, with a small `key=value` config-file parser.
//!
//! Command-line flags take precedence over config-file values; the loader
//! here only fills in whatever the caller has not already pinned. The
//! process environment is deliberately never consulted.

use crate::error::{Error, Result};

/// Caps on exhaustive work, plus defaults for randomized procedures.
///
/// Every cap is a hard refusal threshold: an operation that would exceed it
/// returns a `WorkCap` error instead of silently degrading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caps {
    /// Largest number of candidate defective sets an exhaustive design
    /// verification or decode sweep may enumerate.
    pub exhaustive_subsets: u64,
    /// Largest number of hidden-set instances an exhaustive adaptive
    /// measurement may replay.
    pub hidden_instances: u64,
    /// Largest number of codewords an exact minimum-distance check may
    /// enumerate.
    pub codewords: u64,
    /// Default attempt budget for the randomized design sampler.
    pub sampler_max_attempts: u32,
    /// Worker threads for sweeps; 0 means one per available core.
    pub workers: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            exhaustive_subsets: 1_000_000,
            hidden_instances: 2_000_000,
            codewords: 1 << 20,
            sampler_max_attempts: 1000,
            workers: 0,
        }
    }
}

impl Caps {
    /// Parse a config file: one `key=value` per line, `#` starts a comment,
    /// blank lines ignored. Unknown keys are rejected so typos surface.
    ///
    /// # Example
    /// ```
    /// use gt_core::config::Caps;
    /// let caps = Caps::from_config_text("exhaustive_subsets=500\n# note\nworkers=2\n").unwrap();
    /// assert_eq!(caps.exhaustive_subsets, 500);
    /// assert_eq!(caps.workers, 2);
    /// ```
    pub fn from_config_text(text: &str) -> Result<Caps> {
        let mut caps = Caps::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lineno = idx + 1;
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(lineno, format!("expected key=value, got {line:?}")))?;
            let key = key.trim();
            let value = value.trim();
            let parse_u64 = || {
                value
                    .parse::<u64>()
                    .map_err(|_| Error::parse(lineno, format!("invalid integer {value:?} for {key}")))
            };
            match key {
                "exhaustive_subsets" => caps.exhaustive_subsets = parse_u64()?,
                "hidden_instances" => caps.hidden_instances = parse_u64()?,
                "codewords" => caps.codewords = parse_u64()?,
                "sampler_max_attempts" => {
                    caps.sampler_max_attempts = parse_u64()?.try_into().map_err(|_| {
                        Error::parse(lineno, format!("value {value} too large for sampler_max_attempts"))
                    })?
                }
                "workers" => caps.workers = parse_u64()? as usize,
                _ => return Err(Error::parse(lineno, format!("unknown config key {key:?}"))),
            }
        }
        Ok(caps)
    }
}
