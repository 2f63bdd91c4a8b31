//! Seeded random instance generation, following the shape of the
//! computational batteries: multiplicities drawn from buckets, generators
//! from a value range, optionally capped on the number of special gaps.

use crate::instance::InstanceSpec;
use kunz::NumericalSemigroup;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A multiplicity bucket `[lo, hi]`, inclusive on both ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bucket {
    pub lo: i64,
    pub hi: i64,
}

impl fmt::Display for Bucket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatteryConfig {
    pub buckets: Vec<Bucket>,
    /// Value range for the non-multiplicity generators.
    pub gen_lo: i64,
    pub gen_hi: i64,
    /// Instances per bucket.
    pub count: usize,
    /// Reject instances with more special gaps than this.
    pub max_special_gaps: Option<usize>,
    pub seed: u64,
    /// Rejection attempts per instance before giving up.
    pub max_attempts: u64,
}

impl BatteryConfig {
    pub fn validate(&self) -> Result<(), BatteryError> {
        for b in &self.buckets {
            if b.lo < 3 {
                return Err(BatteryError::BadConfig(format!(
                    "bucket {b}: multiplicities below 3 decompose trivially"
                )));
            }
            if b.lo > b.hi {
                return Err(BatteryError::BadConfig(format!("bucket {b} is empty")));
            }
            if self.gen_hi <= b.hi {
                return Err(BatteryError::BadConfig(format!(
                    "generator range [{},{}] cannot exceed bucket {b}",
                    self.gen_lo, self.gen_hi
                )));
            }
        }
        if self.buckets.is_empty() {
            return Err(BatteryError::BadConfig("no buckets given".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BatteryError {
    BadConfig(String),
    /// Rejection sampling gave up for a bucket.
    BucketExhausted { bucket: Bucket, attempts: u64 },
}

impl fmt::Display for BatteryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BatteryError::BadConfig(msg) => write!(f, "invalid battery config: {msg}"),
            BatteryError::BucketExhausted { bucket, attempts } => {
                write!(f, "no instance for bucket {bucket} after {attempts} attempts")
            }
        }
    }
}

impl std::error::Error for BatteryError {}

/// One line of an instance file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub label: String,
    pub bucket: Bucket,
    pub seed: u64,
    pub generators: Vec<i64>,
}

impl InstanceRecord {
    pub fn spec(&self) -> InstanceSpec {
        InstanceSpec {
            label: Some(self.label.clone()),
            generators: Some(self.generators.clone()),
            kunz: None,
        }
    }
}

/// Generates the whole battery deterministically from the seed: same
/// config, same bytes.
pub fn generate(config: &BatteryConfig) -> Result<Vec<InstanceRecord>, BatteryError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut out = Vec::with_capacity(config.buckets.len() * config.count);
    for bucket in &config.buckets {
        for index in 0..config.count {
            let gens = sample_instance(&mut rng, bucket, config)?;
            out.push(InstanceRecord {
                label: format!("m{}-{}_i{}", bucket.lo, bucket.hi, index),
                bucket: *bucket,
                seed: config.seed,
                generators: gens,
            });
        }
    }
    Ok(out)
}

fn sample_instance(
    rng: &mut ChaCha8Rng,
    bucket: &Bucket,
    config: &BatteryConfig,
) -> Result<Vec<i64>, BatteryError> {
    for _ in 0..config.max_attempts {
        let m = rng.gen_range(bucket.lo..=bucket.hi);
        let count = rng.gen_range(2..=7);
        let lo = config.gen_lo.max(m + 1);
        if lo > config.gen_hi {
            break;
        }
        let mut gens = vec![m];
        for _ in 0..count {
            gens.push(rng.gen_range(lo..=config.gen_hi));
        }
        // Multiplicity lands in the bucket by construction; gcd may still
        // fail, and the special-gap cap may reject.
        let Ok(s) = NumericalSemigroup::new(&gens) else { continue };
        debug_assert_eq!(s.multiplicity(), m);
        if let Some(cap) = config.max_special_gaps {
            let x = s.kunz_coordinates().expect("multiplicity is at least 3");
            if x.special_gaps_above_m().len() > cap {
                continue;
            }
        }
        return Ok(s.generators().to_vec());
    }
    Err(BatteryError::BucketExhausted { bucket: *bucket, attempts: config.max_attempts })
}

/// Serializes records as JSON lines.
pub fn to_jsonl(records: &[InstanceRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("record serializes"));
        out.push('\n');
    }
    out
}

/// Parses an instance file (one JSON record per line; blank lines and
/// `#` comments allowed).
pub fn from_jsonl(text: &str) -> Result<Vec<InstanceRecord>, String> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(
            serde_json::from_str(line).map_err(|e| format!("line {}: {e}", no + 1))?,
        );
    }
    Ok(out)
}
