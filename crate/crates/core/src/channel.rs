//! BPSK over AWGN: modulation, noise, and channel LLRs.
//!
//! LLRs are natural-log ratios with `LLR > 0` meaning bit `0` is more likely.

use std::ops::Deref;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::{Bit, Error, Result};

/// Channel log-likelihood ratios for one received word.
#[derive(Debug, Clone, PartialEq)]
pub struct LlrFrame(Vec<f64>);

impl LlrFrame {
    /// Wraps raw LLR values; all of them must be finite.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Config(format!("non-finite LLR {v}")));
        }
        Ok(Self(values))
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for LlrFrame {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Maps `0 → +1` and `1 → −1`.
pub fn modulate(bits: &[Bit]) -> Vec<f64> {
    bits.iter().map(|&b| if b == 0 { 1.0 } else { -1.0 }).collect()
}

/// Noise standard deviation `σ = 10^(−snr/20) / √(2R)` for Eb/N0 `snr_db`
/// at code rate `rate`.
pub fn awgn_sigma(rate: f64, snr_db: f64) -> Result<f64> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::InvalidRate(rate));
    }
    Ok(10f64.powf(-snr_db / 20.0) / (2.0 * rate).sqrt())
}

/// Adds i.i.d. `N(0, σ²)` noise drawn from `rng`.
pub fn transmit<R: Rng + ?Sized>(symbols: &[f64], sigma: f64, rng: &mut R) -> Vec<f64> {
    symbols
        .iter()
        .map(|&s| {
            let z: f64 = rng.sample(StandardNormal);
            s + sigma * z
        })
        .collect()
}

/// `LLR_i = 2 y_i / σ²`.
pub fn channel_llr(received: &[f64], sigma: f64) -> Result<LlrFrame> {
    if sigma.is_nan() || sigma <= 0.0 {
        return Err(Error::InvalidSigma(sigma));
    }
    let scale = 2.0 / (sigma * sigma);
    LlrFrame::new(received.iter().map(|&y| scale * y).collect())
}

/// Independent random stream for one frame of a simulation.
///
/// The stream depends only on `(seed, frame)`, so a frame sees the same
/// message and noise no matter which worker runs it.
pub fn frame_rng(seed: u64, frame: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(frame);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bpsk_mapping() {
        assert_eq!(modulate(&[0, 1, 0]), vec![1.0, -1.0, 1.0]);
        assert_eq!(modulate(&[0; 4]), vec![1.0; 4]);
        let bits = [1, 0, 0, 1, 1];
        let back: Vec<Bit> = modulate(&bits).iter().map(|&s| (s < 0.0) as Bit).collect();
        assert_eq!(back, bits);
    }

    #[test]
    fn sigma_formula() {
        assert!((awgn_sigma(0.5, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((awgn_sigma(0.5, 2.0).unwrap() - 0.794_328_234_724_281_5).abs() < 1e-12);
        assert!((awgn_sigma(1.0, 0.0).unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(matches!(awgn_sigma(0.0, 1.0), Err(Error::InvalidRate(_))));
        assert!(awgn_sigma(-0.5, 1.0).is_err());
        assert!(awgn_sigma(1.5, 1.0).is_err());
    }

    #[test]
    fn tiny_noise_is_negligible() {
        let s = modulate(&[0, 1, 1, 0, 1]);
        let y = transmit(&s, 1e-12, &mut frame_rng(7, 0));
        for (a, b) in s.iter().zip(&y) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn noise_moments() {
        let sigma = 0.7;
        let n = 1_000_000;
        let y = transmit(&vec![0.0; n], sigma, &mut frame_rng(11, 3));
        let mean = y.iter().sum::<f64>() / n as f64;
        let var = y.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        assert!(mean.abs() < 3.0 * sigma / 1000.0, "mean {mean}");
        assert!((var / (sigma * sigma) - 1.0).abs() < 0.01, "var {var}");
    }

    #[test]
    fn llr_examples() {
        assert_eq!(&*channel_llr(&[1.0], 1.0).unwrap(), &[2.0]);
        assert_eq!(&*channel_llr(&[0.0], 0.3).unwrap(), &[0.0]);
        assert_eq!(&*channel_llr(&[-0.5], 0.5).unwrap(), &[-4.0]);
        assert!(matches!(channel_llr(&[1.0], 0.0), Err(Error::InvalidSigma(_))));
        assert!(channel_llr(&[1.0], -1.0).is_err());
    }

    #[test]
    fn llr_sign_and_scaling() {
        let bits = [0, 1, 1, 0];
        let llr = channel_llr(&modulate(&bits), 0.9).unwrap();
        for (&b, &l) in bits.iter().zip(llr.iter()) {
            assert_eq!(l > 0.0, b == 0);
        }
        let a = channel_llr(&[0.3, -1.2], 1.0).unwrap();
        let b = channel_llr(&[0.3, -1.2], 2.0).unwrap();
        for (x, y) in a.iter().zip(b.iter()) {
            assert!((x / 4.0 - y).abs() < 1e-15);
        }
    }

    #[test]
    fn frame_streams_are_reproducible_and_distinct() {
        let a: u64 = frame_rng(1, 5).random();
        let b: u64 = frame_rng(1, 5).random();
        let c: u64 = frame_rng(1, 6).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
