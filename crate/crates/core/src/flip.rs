//! Single-round bit flipping on top of CA-SCL.
//!
//! Each pruning step `i` of the first pass yields a confidence
//!
//! ```text
//! E_i(α) = ln Σ_l e^{−PM_l} − α · ln Σ_l e^{−PM_{l+L}}
//! ```
//!
//! from the metrics of the `L` kept and `L` dropped candidates. A low value
//! marks a doubtful decision. The two-vote locator ranks the steps under two
//! weights `α1`, `α2` and returns the indices found in the shortest common
//! prefix of both rankings; the first of them is re-decoded with
//! shift-pruning. The single-vote locator (post-processing baseline) takes
//! the plain argmin under one weight.

use crate::decoder::{self, DecodeOutput, PruneRecord};
use crate::polar::CodeConfig;
use crate::{Bit, Error, Result};

/// `ln Σ e^{−x}` over `metrics`, shifted by the minimum for stability.
fn log_sum_exp_neg(metrics: &[f64]) -> f64 {
    let min = metrics.iter().copied().fold(f64::INFINITY, f64::min);
    let sum: f64 = metrics.iter().map(|&m| (min - m).exp()).sum();
    sum.ln() - min
}

/// Decision confidence `E_i(α)` of one pruning step.
pub fn confidence(record: &PruneRecord, alpha: f64) -> Result<f64> {
    if record.survivor_pms.is_empty() || record.removed_pms.is_empty() {
        return Err(Error::EmptyMetrics);
    }
    if alpha.is_nan() || alpha < 1.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    Ok(log_sum_exp_neg(&record.survivor_pms) - alpha * log_sum_exp_neg(&record.removed_pms))
}

/// Confidences of every pruning step for one weight `α`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfidenceSet {
    pub alpha: f64,
    /// `(1-based info index, E_i(α))`, ascending index.
    pub entries: Vec<(usize, f64)>,
}

impl ConfidenceSet {
    pub fn from_records(records: &[PruneRecord], alpha: f64) -> Result<Self> {
        let mut entries =
            records.iter().map(|r| Ok((r.info_index, confidence(r, alpha)?))).collect::<Result<Vec<_>>>()?;
        entries.sort_by_key(|e| e.0);
        Ok(Self { alpha, entries })
    }

    /// Builds a set from precomputed scores.
    pub fn from_scores(alpha: f64, mut entries: Vec<(usize, f64)>) -> Self {
        entries.sort_by_key(|e| e.0);
        Self { alpha, entries }
    }

    /// Indices sorted by ascending confidence; ties go to the smaller index.
    pub fn ascending(&self) -> Vec<usize> {
        let mut sorted = self.entries.clone();
        sorted.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        sorted.into_iter().map(|e| e.0).collect()
    }

    /// Index with the lowest confidence, smallest index on ties.
    pub fn argmin(&self) -> Option<usize> {
        self.entries.iter().min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0))).map(|e| e.0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Flip set `ℱ` and the prefix length at which it was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipCandidates {
    /// Ordered by rank under the first confidence set.
    pub indices: Vec<usize>,
    pub m_reached: usize,
}

impl FlipCandidates {
    pub fn first(&self) -> Option<usize> {
        self.indices.first().copied()
    }
}

/// Smallest `m` such that the length-`m` prefixes of both ascending orders
/// intersect, together with that intersection.
pub fn gen_flip(conf1: &ConfidenceSet, conf2: &ConfidenceSet) -> Result<FlipCandidates> {
    if conf1.len() != conf2.len() || conf1.entries.iter().zip(&conf2.entries).any(|(a, b)| a.0 != b.0) {
        return Err(Error::DomainMismatch);
    }
    if conf1.is_empty() {
        return Ok(FlipCandidates { indices: Vec::new(), m_reached: 0 });
    }
    let order1 = conf1.ascending();
    let order2 = conf2.ascending();
    let max_index = order1.iter().copied().max().unwrap_or(0);
    let mut rank2 = vec![usize::MAX; max_index + 1];
    for (r, &idx) in order2.iter().enumerate() {
        rank2[idx] = r;
    }
    // an index enters both prefixes at m = 1 + max(rank1, rank2)
    let m_reached = order1.iter().enumerate().map(|(r1, &idx)| r1.max(rank2[idx]) + 1).min().expect("non-empty");
    let indices = order1[..m_reached].iter().copied().filter(|&idx| rank2[idx] < m_reached).collect();
    Ok(FlipCandidates { indices, m_reached })
}

/// How the re-decode position is chosen after a failed first pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Locator {
    /// Two-vote prefix intersection with weights `(α1, α2)`.
    TwoVote { alpha1: f64, alpha2: f64 },
    /// Lowest confidence under a single weight.
    SingleVote { alpha: f64 },
}

impl Locator {
    pub fn validate(&self) -> Result<()> {
        let alphas = match *self {
            Locator::TwoVote { alpha1, alpha2 } => [alpha1, alpha2],
            Locator::SingleVote { alpha } => [alpha, alpha],
        };
        match alphas.iter().find(|&&a| a.is_nan() || a < 1.0) {
            Some(&a) => Err(Error::InvalidAlpha(a)),
            None => Ok(()),
        }
    }

    /// Estimated first error position from the prune records of a failed pass.
    pub fn locate(&self, records: &[PruneRecord]) -> Result<Option<usize>> {
        self.validate()?;
        match *self {
            Locator::TwoVote { alpha1, alpha2 } => {
                let c1 = ConfidenceSet::from_records(records, alpha1)?;
                let c2 = ConfidenceSet::from_records(records, alpha2)?;
                Ok(gen_flip(&c1, &c2)?.first())
            }
            Locator::SingleVote { alpha } => Ok(ConfidenceSet::from_records(records, alpha)?.argmin()),
        }
    }
}

/// Outcome of a flip decode.
#[derive(Debug, Clone, PartialEq)]
pub struct FlipDecodeResult {
    pub message: Option<Vec<Bit>>,
    /// A second, shift-pruned pass was run.
    pub used_flip: bool,
    pub flip_index: Option<usize>,
    /// Number of list-decoding passes, 1 or 2.
    pub attempts: u32,
}

/// Runs the shift-pruned second pass for a failed `first` pass.
///
/// Returns the first-pass result unchanged when it already passed CRC.
pub fn flip_after(
    first: &DecodeOutput,
    llrs: &[f64],
    config: &CodeConfig,
    list_size: usize,
    locator: Locator,
) -> Result<FlipDecodeResult> {
    locator.validate()?;
    if let Some(message) = decoder::ca_scl_select(first, config) {
        return Ok(FlipDecodeResult { message: Some(message), used_flip: false, flip_index: None, attempts: 1 });
    }
    let Some(i1) = locator.locate(&first.prune_records)? else {
        // nothing was pruned, so there is nothing to flip
        return Ok(FlipDecodeResult { message: None, used_flip: false, flip_index: None, attempts: 1 });
    };
    let second = decoder::scl_decode(llrs, config, list_size, Some(i1))?;
    Ok(FlipDecodeResult {
        message: decoder::ca_scl_select(&second, config),
        used_flip: true,
        flip_index: Some(i1),
        attempts: 2,
    })
}

/// CA-SCL followed, on failure, by one shift-pruned re-decode at the
/// position found with `locator`.
pub fn flip_decode(llrs: &[f64], config: &CodeConfig, list_size: usize, locator: Locator) -> Result<FlipDecodeResult> {
    locator.validate()?;
    let first = decoder::scl_decode(llrs, config, list_size, None)?;
    flip_after(&first, llrs, config, list_size, locator)
}

/// Low-latency SCL-Flip: two-vote localization, one re-decode.
pub fn ll_scl_flip_decode(
    llrs: &[f64],
    config: &CodeConfig,
    list_size: usize,
    alpha1: f64,
    alpha2: f64,
) -> Result<FlipDecodeResult> {
    flip_decode(llrs, config, list_size, Locator::TwoVote { alpha1, alpha2 })
}

/// Single-round post-processing: argmin of `E_i(α)`, one re-decode.
pub fn post_process_decode(
    llrs: &[f64],
    config: &CodeConfig,
    list_size: usize,
    alpha: f64,
) -> Result<FlipDecodeResult> {
    flip_decode(llrs, config, list_size, Locator::SingleVote { alpha })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(surv: &[f64], removed: &[f64]) -> PruneRecord {
        PruneRecord { info_index: 1, survivor_pms: surv.to_vec(), removed_pms: removed.to_vec(), shifted: false }
    }

    fn set_from_order(alpha: f64, order: &[usize]) -> ConfidenceSet {
        ConfidenceSet::from_scores(alpha, order.iter().enumerate().map(|(r, &i)| (i, r as f64)).collect())
    }

    #[test]
    fn confidence_examples() {
        let r = record(&[0.5, 2.0, 3.0], &[0.5, 2.0, 3.0]);
        assert!(confidence(&r, 1.0).unwrap().abs() < 1e-15);
        let r = record(&[1.0], &[3.0]);
        assert!((confidence(&r, 1.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((confidence(&r, 2.0).unwrap() - 5.0).abs() < 1e-15);
        let low = confidence(&record(&[0.0, 0.1], &[0.2, 0.3]), 1.0).unwrap();
        let high = confidence(&record(&[0.0, 0.1], &[20.0, 30.0]), 1.0).unwrap();
        assert!(high > 15.0 && high > low);
    }

    #[test]
    fn confidence_errors() {
        assert!(matches!(confidence(&record(&[], &[1.0]), 1.0), Err(Error::EmptyMetrics)));
        assert!(matches!(confidence(&record(&[1.0], &[2.0]), 0.5), Err(Error::InvalidAlpha(_))));
        assert!(confidence(&record(&[1.0], &[2.0]), f64::NAN).is_err());
    }

    #[test]
    fn confidence_is_affine_in_alpha() {
        let r = record(&[0.0, 1.5, 2.0, 4.0], &[4.5, 6.0, 9.0, 12.0]);
        let slope = -log_sum_exp_neg(&r.removed_pms);
        let e1 = confidence(&r, 1.0).unwrap();
        let e3 = confidence(&r, 3.0).unwrap();
        assert!((e3 - e1 - 2.0 * slope).abs() < 1e-12);
    }

    #[test]
    fn gen_flip_traces() {
        let f = gen_flip(&set_from_order(1.0, &[5, 9, 2]), &set_from_order(2.0, &[5, 2, 9])).unwrap();
        assert_eq!(f, FlipCandidates { indices: vec![5], m_reached: 1 });
        let f = gen_flip(&set_from_order(1.0, &[5, 9, 2]), &set_from_order(2.0, &[9, 5, 2])).unwrap();
        assert_eq!(f, FlipCandidates { indices: vec![5, 9], m_reached: 2 });
        let f = gen_flip(&set_from_order(1.0, &[1, 2, 3]), &set_from_order(2.0, &[3, 2, 1])).unwrap();
        assert_eq!(f, FlipCandidates { indices: vec![2], m_reached: 2 });
    }

    #[test]
    fn gen_flip_identical_sets_is_argmin() {
        let c = ConfidenceSet::from_scores(1.0, vec![(3, 0.7), (8, -1.0), (12, 4.0), (20, -1.0)]);
        let f = gen_flip(&c, &c).unwrap();
        // tie between 8 and 20 goes to the smaller index
        assert_eq!(f, FlipCandidates { indices: vec![8], m_reached: 1 });
        assert_eq!(c.argmin(), Some(8));
    }

    #[test]
    fn gen_flip_domain_mismatch() {
        let a = ConfidenceSet::from_scores(1.0, vec![(1, 0.0), (2, 1.0)]);
        let b = ConfidenceSet::from_scores(2.0, vec![(1, 0.0), (3, 1.0)]);
        let c = ConfidenceSet::from_scores(2.0, vec![(1, 0.0)]);
        assert!(matches!(gen_flip(&a, &b), Err(Error::DomainMismatch)));
        assert!(matches!(gen_flip(&a, &c), Err(Error::DomainMismatch)));
    }

    #[test]
    fn locator_rejects_small_alpha() {
        let l = Locator::TwoVote { alpha1: 1.0, alpha2: 0.9 };
        assert!(matches!(l.locate(&[record(&[1.0], &[2.0])]), Err(Error::InvalidAlpha(_))));
    }
}
