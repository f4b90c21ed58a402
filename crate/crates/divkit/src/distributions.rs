//! Validated probability distributions on the open simplex, uniform
//! sampling, and pair loading from CSV/JSON files.
//!
//! A distribution lives on the open simplex: every entry strictly positive,
//! entries summing to 1, length at least 2. Several measures (Ψ, J) diverge
//! at zero entries, so zeros are rejected by default; histograms containing
//! zeros can opt into `Renormalize` with a positive floor.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::numeric::compensated_sum;

/// Loose tolerance on the input sum (accommodates text round-trips).
pub const INPUT_SUM_TOL: f64 = 1e-9;
/// Tight tolerance guaranteed after validation.
pub const UNIT_SUM_TOL: f64 = 1e-12;

/// A point of the open probability simplex: strictly positive entries
/// summing to 1 within [`UNIT_SUM_TOL`], length ≥ 2. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityDistribution {
    values: Vec<f64>,
}

impl ProbabilityDistribution {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length >= 2 by construction
    }
}

impl AsRef<[f64]> for ProbabilityDistribution {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// An ordered pair (P, Q) of equal-length distributions.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionPair {
    p: ProbabilityDistribution,
    q: ProbabilityDistribution,
}

impl DistributionPair {
    pub fn new(p: ProbabilityDistribution, q: ProbabilityDistribution) -> Result<Self> {
        if p.len() != q.len() {
            return Err(Error::RejectedInput(format!(
                "pair members have different lengths: {} vs {}",
                p.len(),
                q.len()
            )));
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> &ProbabilityDistribution {
        &self.p
    }

    pub fn q(&self) -> &ProbabilityDistribution {
        &self.q
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Iterate over the components (p_i, q_i).
    pub fn components(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.p
            .values
            .iter()
            .copied()
            .zip(self.q.values.iter().copied())
    }
}

/// What to do with raw input that is not already on the open simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValidationMode {
    /// Reject any nonpositive entry or a sum off by more than [`INPUT_SUM_TOL`].
    #[default]
    Reject,
    /// Raise entries ≤ `zero_floor` to the floor, then rescale to unit sum.
    Renormalize,
}

/// Validation policy: mode plus the floor used in `Renormalize` mode.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ValidationPolicy {
    pub mode: ValidationMode,
    pub zero_floor: f64,
}

impl ValidationPolicy {
    pub fn reject() -> Self {
        Self::default()
    }

    pub fn renormalize(zero_floor: f64) -> Self {
        Self {
            mode: ValidationMode::Renormalize,
            zero_floor,
        }
    }
}

/// Validate a raw vector into a simplex point.
///
/// In `Reject` mode the input must already be a simplex point up to
/// [`INPUT_SUM_TOL`]; in `Renormalize` mode entries at or below the floor are
/// raised to it and the vector is rescaled. Both modes finish by dividing by
/// the compensated sum, which is what achieves the [`UNIT_SUM_TOL`] invariant.
pub fn validate(raw: &[f64], policy: &ValidationPolicy) -> Result<ProbabilityDistribution> {
    if raw.len() < 2 {
        return Err(Error::RejectedInput(format!(
            "need at least 2 entries, got {}",
            raw.len()
        )));
    }
    if let Some((i, v)) = raw.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(Error::RejectedInput(format!(
            "entry {i} is not finite: {v}"
        )));
    }

    let mut values: Vec<f64> = raw.to_vec();
    match policy.mode {
        ValidationMode::Reject => {
            if let Some((i, v)) = values.iter().enumerate().find(|(_, &v)| v <= 0.0) {
                return Err(Error::RejectedInput(format!(
                    "entry {i} is not strictly positive: {v}"
                )));
            }
            let sum = compensated_sum(values.iter().copied());
            if (sum - 1.0).abs() > INPUT_SUM_TOL {
                return Err(Error::RejectedInput(format!(
                    "entries sum to {sum}, expected 1 within {INPUT_SUM_TOL:e}"
                )));
            }
        }
        ValidationMode::Renormalize => {
            let floor = policy.zero_floor;
            if floor < 0.0 || !floor.is_finite() {
                return Err(Error::RejectedInput(format!(
                    "zero_floor must be finite and >= 0, got {floor}"
                )));
            }
            if floor > 0.0 && floor >= 1.0 / values.len() as f64 {
                return Err(Error::RejectedInput(format!(
                    "zero_floor {floor} must be below 1/n = {}",
                    1.0 / values.len() as f64
                )));
            }
            for v in &mut values {
                if *v <= floor {
                    *v = floor;
                }
            }
            if values.iter().any(|&v| v <= 0.0) {
                return Err(Error::RejectedInput(
                    "nonpositive entries remain after flooring; use a positive zero_floor"
                        .to_string(),
                ));
            }
            let sum = compensated_sum(values.iter().copied());
            if !(sum > 0.0) || !sum.is_finite() {
                return Err(Error::RejectedInput(format!("total mass {sum} not positive")));
            }
        }
    }

    // Final rescale to the tight tolerance. Skipping it when already inside
    // UNIT_SUM_TOL makes validate exactly idempotent.
    let sum = compensated_sum(values.iter().copied());
    if (sum - 1.0).abs() > UNIT_SUM_TOL {
        for v in &mut values {
            *v /= sum;
        }
    }
    Ok(ProbabilityDistribution { values })
}

/// Draw a uniform point of the simplex Γ_n via normalized exponential
/// spacings. Pure function of `(n, seed)`.
pub fn sample_uniform_simplex(n: usize, seed: u64) -> Result<ProbabilityDistribution> {
    if n < 2 {
        return Err(Error::RejectedInput(format!("need n >= 2, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = vec![0.0f64; n];
    for v in &mut values {
        // -ln(1-u) with u in [0,1); redraw the (measure-zero) exact zero so
        // the strict-positivity invariant survives normalization.
        loop {
            let u: f64 = rng.random();
            let e = -(-u).ln_1p();
            if e > 0.0 && e.is_finite() {
                *v = e;
                break;
            }
        }
    }
    let sum = compensated_sum(values.iter().copied());
    for v in &mut values {
        *v /= sum;
    }
    let sum = compensated_sum(values.iter().copied());
    if (sum - 1.0).abs() > UNIT_SUM_TOL {
        for v in &mut values {
            *v /= sum;
        }
    }
    Ok(ProbabilityDistribution { values })
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seeds for the two members of pair `index` in the stream named by `seed`.
/// Per-index streams keep parallel generation deterministic.
pub fn pair_seeds(seed: u64, index: u64) -> (u64, u64) {
    let base = splitmix64(seed ^ splitmix64(index.wrapping_add(1)));
    (base, splitmix64(base))
}

/// Draw `count` independent uniform pairs of dimension `n`.
pub fn sample_pairs(n: usize, count: usize, seed: u64) -> Result<Vec<DistributionPair>> {
    (0..count)
        .map(|i| {
            let (sp, sq) = pair_seeds(seed, i as u64);
            DistributionPair::new(sample_uniform_simplex(n, sp)?, sample_uniform_simplex(n, sq)?)
        })
        .collect()
}

/// On-disk pair formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairFormat {
    /// One distribution per row; rows (2k-1, 2k) form pair k.
    Csv,
    /// `{"pairs": [{"p": [...], "q": [...]}, ...]}`.
    Json,
}

#[derive(Deserialize)]
struct PairsFile {
    pairs: Vec<PairRecord>,
}

#[derive(Deserialize)]
struct PairRecord {
    p: Vec<f64>,
    q: Vec<f64>,
}

/// Load distribution pairs from `path`, validating each member with `policy`.
/// Pairs are returned in file order.
pub fn load_pairs(
    path: &Path,
    format: PairFormat,
    policy: &ValidationPolicy,
) -> Result<Vec<DistributionPair>> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        path: display.clone(),
        record: 0,
        message: e.to_string(),
    })?;
    let raw_pairs: Vec<(Vec<f64>, Vec<f64>)> = match format {
        PairFormat::Csv => parse_csv_pairs(&display, &text)?,
        PairFormat::Json => {
            let file: PairsFile = serde_json::from_str(&text).map_err(|e| Error::Parse {
                path: display.clone(),
                record: 0,
                message: e.to_string(),
            })?;
            file.pairs.into_iter().map(|r| (r.p, r.q)).collect()
        }
    };

    raw_pairs
        .into_iter()
        .enumerate()
        .map(|(k, (p, q))| {
            let reject = |e: Error| Error::RejectedInput(format!("pair {}: {e}", k + 1));
            if p.len() != q.len() {
                return Err(Error::Parse {
                    path: display.clone(),
                    record: k + 1,
                    message: format!("p has {} entries but q has {}", p.len(), q.len()),
                });
            }
            DistributionPair::new(
                validate(&p, policy).map_err(reject)?,
                validate(&q, policy).map_err(reject)?,
            )
            .map_err(reject)
        })
        .collect()
}

fn parse_csv_pairs(path: &str, text: &str) -> Result<Vec<(Vec<f64>, Vec<f64>)>> {
    let mut rows: Vec<(usize, Vec<f64>)> = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for field in trimmed.split(',') {
            let v: f64 = field.trim().parse().map_err(|_| Error::Parse {
                path: path.to_string(),
                record: line_no + 1,
                message: format!("invalid number {:?}", field.trim()),
            })?;
            row.push(v);
        }
        rows.push((line_no + 1, row));
    }
    if rows.len() % 2 != 0 {
        return Err(Error::Parse {
            path: path.to_string(),
            record: rows.last().map(|(l, _)| *l).unwrap_or(0),
            message: "odd number of rows; rows must pair up".to_string(),
        });
    }
    Ok(rows
        .chunks_exact(2)
        .map(|c| (c[0].1.clone(), c[1].1.clone()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn validate_accepts_exact_simplex() {
        let d = validate(&[0.5, 0.5], &ValidationPolicy::reject()).unwrap();
        assert_eq!(d.values(), &[0.5, 0.5]);
    }

    #[test]
    fn validate_rejects_zero_entry() {
        let err = validate(&[0.5, 0.0], &ValidationPolicy::reject()).unwrap_err();
        assert!(matches!(err, Error::RejectedInput(_)));
    }

    #[test]
    fn validate_rejects_short_and_bad_sum() {
        assert!(validate(&[1.0], &ValidationPolicy::reject()).is_err());
        assert!(validate(&[0.6, 0.6], &ValidationPolicy::reject()).is_err());
        assert!(validate(&[0.5, f64::NAN], &ValidationPolicy::reject()).is_err());
    }

    #[test]
    fn renormalize_rescales_by_sum() {
        let d = validate(&[2.0, 2.0], &ValidationPolicy::renormalize(0.0)).unwrap();
        assert_eq!(d.values(), &[0.5, 0.5]);
    }

    #[test]
    fn renormalize_floors_zeros() {
        let d = validate(&[0.0, 1.0, 3.0], &ValidationPolicy::renormalize(1e-6)).unwrap();
        assert!(d.values().iter().all(|&v| v > 0.0));
        assert!((compensated_sum(d.values().iter().copied()) - 1.0).abs() <= UNIT_SUM_TOL);
        // floor of zero cannot repair a zero entry
        assert!(validate(&[0.0, 1.0], &ValidationPolicy::renormalize(0.0)).is_err());
    }

    #[test]
    fn renormalize_rejects_floor_above_uniform() {
        assert!(validate(&[1.0, 1.0], &ValidationPolicy::renormalize(0.6)).is_err());
    }

    #[test]
    fn sampler_is_deterministic_and_valid() {
        let a = sample_uniform_simplex(2, 42).unwrap();
        let b = sample_uniform_simplex(2, 42).unwrap();
        assert_eq!(a, b);

        let d = sample_uniform_simplex(5, 7).unwrap();
        assert_eq!(d.len(), 5);
        assert!(d.values().iter().all(|&v| v > 0.0));
        assert!((compensated_sum(d.values().iter().copied()) - 1.0).abs() <= UNIT_SUM_TOL);
    }

    #[test]
    fn sampler_rejects_n_below_two() {
        assert!(sample_uniform_simplex(1, 0).is_err());
    }

    #[test]
    fn sampler_first_entry_mean_is_half() {
        // Monte-Carlo oracle for uniformity: E[first entry] = 1/2 for n = 2.
        let mut acc = crate::numeric::Accumulator::default();
        for seed in 0..100_000u64 {
            acc.add(sample_uniform_simplex(2, seed).unwrap().values()[0]);
        }
        let mean = acc.total() / 100_000.0;
        assert!((mean - 0.5).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn pair_requires_equal_lengths() {
        let p = sample_uniform_simplex(3, 1).unwrap();
        let q = sample_uniform_simplex(4, 2).unwrap();
        assert!(DistributionPair::new(p, q).is_err());
    }

    #[test]
    fn csv_pairs_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pairs.csv");
        std::fs::write(&path, "0.5,0.5\n0.25,0.75\n").unwrap();
        let pairs = load_pairs(&path, PairFormat::Csv, &ValidationPolicy::reject()).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].p().values(), &[0.5, 0.5]);
        assert_eq!(pairs[0].q().values(), &[0.25, 0.75]);
    }

    #[test]
    fn json_pairs_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pairs.json");
        std::fs::write(&path, r#"{"pairs":[{"p":[0.5,0.5],"q":[0.25,0.75]}]}"#).unwrap();
        let pairs = load_pairs(&path, PairFormat::Json, &ValidationPolicy::reject()).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].q().values(), &[0.25, 0.75]);
    }

    #[test]
    fn csv_unequal_lengths_is_parse_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(&path, "0.5,0.5\n0.2,0.3,0.5\n").unwrap();
        let err = load_pairs(&path, PairFormat::Csv, &ValidationPolicy::reject()).unwrap_err();
        assert!(matches!(err, Error::Parse { record: 1, .. }), "{err:?}");
    }

    #[test]
    fn csv_bad_number_reports_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(&path, "0.5,0.5\n0.25,oops\n").unwrap();
        let err = load_pairs(&path, PairFormat::Csv, &ValidationPolicy::reject()).unwrap_err();
        assert!(matches!(err, Error::Parse { record: 2, .. }), "{err:?}");
    }

    #[test]
    fn rejected_pair_carries_record_index() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("neg.csv");
        std::fs::write(&path, "0.5,0.5\n-0.25,1.25\n").unwrap();
        let err = load_pairs(&path, PairFormat::Csv, &ValidationPolicy::reject()).unwrap_err();
        match err {
            Error::RejectedInput(msg) => assert!(msg.contains("pair 1"), "{msg}"),
            other => panic!("expected RejectedInput, got {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn validate_is_idempotent(raw in proptest::collection::vec(1e-6f64..1.0, 2..12)) {
            let policy = ValidationPolicy::renormalize(0.0);
            let once = validate(&raw, &policy).unwrap();
            let twice = validate(once.values(), &policy).unwrap();
            prop_assert_eq!(once.values(), twice.values());
        }

        #[test]
        fn sampled_distributions_satisfy_invariants(n in 2usize..40, seed in 0u64..1_000_000) {
            let d = sample_uniform_simplex(n, seed).unwrap();
            prop_assert_eq!(d.len(), n);
            prop_assert!(d.values().iter().all(|&v| v > 0.0));
            let total = compensated_sum(d.values().iter().copied());
            prop_assert!((total - 1.0).abs() <= UNIT_SUM_TOL);
        }
    }
}
