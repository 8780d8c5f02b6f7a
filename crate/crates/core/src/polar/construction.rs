//! Reliability ordering of the `N` synthesized bit channels.
//!
//! Bit channel `i` (0-based) is reached from the physical channel by applying,
//! from the most significant bit of `i` down to the least, the check-node
//! transform (bit `0`, the degraded channel) or the variable-node transform
//! (bit `1`, the upgraded channel). This follows from decoding `G_N = F^{⊗n}`
//! in natural order, where the first half of `u` sees `f`-combined LLRs of the
//! two codeword halves.

use std::fs;
use std::path::Path;

use crate::channel::awgn_sigma;
use crate::{Error, Result};

/// How the reliability order of bit channels is obtained.
#[derive(Debug, Clone, PartialEq)]
pub enum Construction {
    /// Gaussian approximation of density evolution for the BPSK/AWGN channel.
    GaussianApprox,
    /// Bhattacharyya parameter recursion seeded with the AWGN Bhattacharyya value.
    Bhattacharyya,
    /// Fixed order, 1-based indices, most reliable first.
    ExplicitSequence(Vec<usize>),
}

impl Construction {
    /// Loads an explicit sequence file: one 1-based index per line, most
    /// reliable first. Blank lines and `#` comments are ignored.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let mut seq = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let idx = line
                .parse::<usize>()
                .map_err(|_| Error::InvalidSequence(format!("line {}: `{}` is not an index", lineno + 1, line)))?;
            seq.push(idx);
        }
        Ok(Construction::ExplicitSequence(seq))
    }
}

/// Writes a reliability sequence in the explicit-sequence file format.
pub fn write_sequence(path: impl AsRef<Path>, order: &[usize]) -> Result<()> {
    let mut text = String::with_capacity(order.len() * 4);
    for idx in order {
        text.push_str(&idx.to_string());
        text.push('\n');
    }
    fs::write(path, text)?;
    Ok(())
}

/// Returns the 1-based bit-channel indices ordered from most to least reliable.
///
/// `design_snr_db` is an Eb/N0 value; together with `rate` it fixes the noise
/// level `σ` of the design channel. It is ignored for explicit sequences.
/// Ties in the reliability metric are broken toward the larger index, which
/// is the more reliable one under partial-order arguments for equal weights.
pub fn construct_reliability(
    n_block: usize,
    design_snr_db: f64,
    rate: f64,
    method: &Construction,
) -> Result<Vec<usize>> {
    if !n_block.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n_block));
    }
    match method {
        Construction::ExplicitSequence(seq) => {
            validate_sequence(seq, n_block)?;
            Ok(seq.clone())
        }
        Construction::GaussianApprox => {
            let sigma = awgn_sigma(rate, design_snr_db)?;
            let means = ga_means(n_block, 2.0 / (sigma * sigma));
            // larger mean LLR = more reliable
            Ok(rank_by(&means, |a, b| b.total_cmp(a)))
        }
        Construction::Bhattacharyya => {
            let sigma = awgn_sigma(rate, design_snr_db)?;
            let ln_z = bhattacharyya_ln(n_block, -1.0 / (2.0 * sigma * sigma));
            // smaller Z = more reliable
            Ok(rank_by(&ln_z, |a, b| a.total_cmp(b)))
        }
    }
}

fn validate_sequence(seq: &[usize], n_block: usize) -> Result<()> {
    if seq.len() != n_block {
        return Err(Error::InvalidSequence(format!("expected {} entries, found {}", n_block, seq.len())));
    }
    let mut seen = vec![false; n_block];
    for &idx in seq {
        if idx == 0 || idx > n_block {
            return Err(Error::InvalidSequence(format!("index {idx} out of range 1..={n_block}")));
        }
        if std::mem::replace(&mut seen[idx - 1], true) {
            return Err(Error::InvalidSequence(format!("duplicate index {idx}")));
        }
    }
    Ok(())
}

fn rank_by(metric: &[f64], better_first: impl Fn(&f64, &f64) -> std::cmp::Ordering) -> Vec<usize> {
    let mut order: Vec<usize> = (0..metric.len()).collect();
    order.sort_by(|&a, &b| better_first(&metric[a], &metric[b]).then(b.cmp(&a)));
    order.into_iter().map(|i| i + 1).collect()
}

/// Mean LLR of every bit channel under the Gaussian approximation.
fn ga_means(n_block: usize, channel_mean: f64) -> Vec<f64> {
    let n = n_block.trailing_zeros();
    (0..n_block)
        .map(|i| {
            (0..n).rev().fold(channel_mean, |m, level| if (i >> level) & 1 == 0 { ga_check_node(m) } else { 2.0 * m })
        })
        .collect()
}

/// `φ⁻¹(1 − (1 − φ(m))²)`, evaluated in the log domain so very reliable
/// channels do not underflow.
fn ga_check_node(m: f64) -> f64 {
    if m <= 0.0 {
        return 0.0;
    }
    let ln_phi = ln_phi(m);
    let phi = ln_phi.exp();
    // ln(2φ − φ²) = ln φ + ln(2 − φ)
    let target = ln_phi + (2.0 - phi).ln();
    inv_ln_phi(target)
}

/// Natural log of `φ(x) = 1 − E[tanh(u/2)]`, `u ~ N(x, 2x)`.
///
/// Chung's two-piece approximation, with its small-`x` end (where it exceeds
/// one) replaced by the series `1 − x/2 + x²/4`; the two meet near `x = 0.25`.
fn ln_phi(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x < 0.25 {
        (1.0 - x / 2.0 + x * x / 4.0).ln()
    } else if x < 10.0 {
        -0.4527 * x.powf(0.86) + 0.0218
    } else {
        0.5 * (std::f64::consts::PI / x).ln() - x / 4.0 + (1.0 - 10.0 / (7.0 * x)).ln()
    }
}

fn inv_ln_phi(target: f64) -> f64 {
    if target >= 0.0 {
        return 0.0;
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    while ln_phi(hi) > target {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ln_phi(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Log-Bhattacharyya parameter of every bit channel.
fn bhattacharyya_ln(n_block: usize, ln_z0: f64) -> Vec<f64> {
    let n = n_block.trailing_zeros();
    (0..n_block)
        .map(|i| {
            (0..n).rev().fold(ln_z0, |ln_z, level| {
                if (i >> level) & 1 == 0 {
                    // ln(2Z − Z²) = ln Z + ln(2 − Z)
                    ln_z + (2.0 - ln_z.exp()).ln()
                } else {
                    2.0 * ln_z
                }
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_channels_polarize() {
        for snr in [-3.0, 0.0, 2.5, 8.0] {
            let order = construct_reliability(2, snr, 0.5, &Construction::Bhattacharyya).unwrap();
            assert_eq!(order, vec![2, 1]);
            let order = construct_reliability(2, snr, 0.5, &Construction::GaussianApprox).unwrap();
            assert_eq!(order, vec![2, 1]);
        }
    }

    #[test]
    fn explicit_sequence_is_verbatim() {
        let seq = vec![3, 1, 4, 2];
        let got = construct_reliability(4, 0.0, 0.5, &Construction::ExplicitSequence(seq.clone())).unwrap();
        assert_eq!(got, seq);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            construct_reliability(6, 0.0, 0.5, &Construction::GaussianApprox),
            Err(Error::NotPowerOfTwo(6))
        ));
        let dup = Construction::ExplicitSequence(vec![1, 1, 2, 3]);
        assert!(matches!(construct_reliability(4, 0.0, 0.5, &dup), Err(Error::InvalidSequence(_))));
        let short = Construction::ExplicitSequence(vec![1, 2, 3]);
        assert!(construct_reliability(4, 0.0, 0.5, &short).is_err());
        let zero = Construction::ExplicitSequence(vec![0, 1, 2, 3]);
        assert!(construct_reliability(4, 0.0, 0.5, &zero).is_err());
    }

    #[test]
    fn ga_check_node_is_degrading_and_continuous() {
        for &m in &[0.01, 0.5, 3.0, 9.99, 10.01, 50.0, 1e3, 1e5] {
            let m2 = ga_check_node(m);
            assert!(m2 > 0.0 && m2 < m, "m={m} -> {m2}");
        }
        // large-mean asymptote: m - m' -> 4 ln 2 as φ is ~exp(-m/4)
        let d = 1e5 - ga_check_node(1e5);
        assert!((d - 4.0 * 2f64.ln()).abs() < 0.05, "{d}");
    }

    #[test]
    fn sequence_file_round_trip() {
        let dir = std::env::temp_dir().join(format!("polarflip-seq-{}", std::process::id()));
        let order = construct_reliability(16, 2.5, 0.5, &Construction::GaussianApprox).unwrap();
        write_sequence(&dir, &order).unwrap();
        let loaded = Construction::from_file(&dir).unwrap();
        std::fs::remove_file(&dir).ok();
        assert_eq!(construct_reliability(16, 0.0, 0.5, &loaded).unwrap(), order);
    }

    #[test]
    fn construction_is_deterministic() {
        let a = construct_reliability(128, 2.5, 0.5, &Construction::GaussianApprox).unwrap();
        let b = construct_reliability(128, 2.5, 0.5, &Construction::GaussianApprox).unwrap();
        assert_eq!(a, b);
        let mut sorted = a.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (1..=128).collect::<Vec<_>>());
    }
}
