//! Code construction, information-set selection, polar encoding and CRC.
//!
//! Indices in this API are 1-based: bit channel `1` is `u_1`. Storage is
//! 0-based internally.

mod construction;
mod crc;
mod encode;

pub use construction::{construct_reliability, write_sequence, Construction};
pub use crc::{crc_attach, crc_check, Crc, DEFAULT_CRC8};
pub use encode::encode;

use crate::{Bit, Error, Result};

/// Design Eb/N0 used when none is given.
pub const DEFAULT_DESIGN_SNR_DB: f64 = 2.5;

/// Splits a reliability order into the `count` most reliable positions and
/// the rest. Both sets are returned ascending and 1-based.
pub fn select_info_set(reliability: &[usize], count: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = reliability.len();
    if count > n {
        return Err(Error::TooManyInfoBits { count, n });
    }
    let mut info = reliability[..count].to_vec();
    let mut frozen = reliability[count..].to_vec();
    info.sort_unstable();
    frozen.sort_unstable();
    Ok((info, frozen))
}

/// A `(N, K + r)` polar code with its CRC and information set.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeConfig {
    n_block: usize,
    k_msg: usize,
    crc: Crc,
    info_set: Vec<usize>,
    frozen_set: Vec<usize>,
    frozen_mask: Vec<bool>,
    design_snr_db: f64,
    construction: Construction,
}

impl CodeConfig {
    /// Builds the code by ranking bit channels with `construction` at
    /// `design_snr_db` (Eb/N0 at rate `K/N`) and placing the `K + r` message
    /// and CRC bits on the most reliable positions.
    pub fn new(n_block: usize, k_msg: usize, crc: Crc, construction: Construction, design_snr_db: f64) -> Result<Self> {
        if !n_block.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(n_block));
        }
        if k_msg == 0 {
            return Err(Error::Config("message length must be positive".into()));
        }
        let info_len = k_msg + crc.len();
        if info_len > n_block {
            return Err(Error::TooManyInfoBits { count: info_len, n: n_block });
        }
        let rate = k_msg as f64 / n_block as f64;
        let reliability = construct_reliability(n_block, design_snr_db, rate, &construction)?;
        let (info_set, frozen_set) = select_info_set(&reliability, info_len)?;
        let mut frozen_mask = vec![true; n_block];
        for &i in &info_set {
            frozen_mask[i - 1] = false;
        }
        Ok(Self { n_block, k_msg, crc, info_set, frozen_set, frozen_mask, design_snr_db, construction })
    }

    /// 8-bit CRC `0x1FC`, Gaussian-approximation construction at 2.5 dB.
    pub fn with_defaults(n_block: usize, k_msg: usize) -> Result<Self> {
        Self::new(n_block, k_msg, Crc::default_crc8(), Construction::GaussianApprox, DEFAULT_DESIGN_SNR_DB)
    }

    pub fn n_block(&self) -> usize {
        self.n_block
    }

    pub fn k_msg(&self) -> usize {
        self.k_msg
    }

    pub fn crc_len(&self) -> usize {
        self.crc.len()
    }

    pub fn crc(&self) -> &Crc {
        &self.crc
    }

    /// Information set `𝒜`, 1-based and ascending, `|𝒜| = K + r`.
    pub fn info_set(&self) -> &[usize] {
        &self.info_set
    }

    pub fn frozen_set(&self) -> &[usize] {
        &self.frozen_set
    }

    /// `true` at 0-based position `i` when `u_{i+1}` is frozen.
    pub fn frozen_mask(&self) -> &[bool] {
        &self.frozen_mask
    }

    pub fn is_frozen(&self, index: usize) -> bool {
        self.frozen_mask[index - 1]
    }

    pub fn design_snr_db(&self) -> f64 {
        self.design_snr_db
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    /// Code rate `K / N`; CRC bits are not counted.
    pub fn rate(&self) -> f64 {
        self.k_msg as f64 / self.n_block as f64
    }

    /// Places `K + r` information bits on `𝒜` and zeros on the frozen set.
    pub fn embed(&self, info_bits: &[Bit]) -> Result<Vec<Bit>> {
        if info_bits.len() != self.info_set.len() {
            return Err(Error::WrongLength { expected: self.info_set.len(), actual: info_bits.len() });
        }
        let mut u = vec![0; self.n_block];
        for (&i, &b) in self.info_set.iter().zip(info_bits) {
            u[i - 1] = b;
        }
        Ok(u)
    }

    /// Reads the bits on `𝒜` out of a full input vector.
    pub fn extract(&self, u_full: &[Bit]) -> Vec<Bit> {
        self.info_set.iter().map(|&i| u_full[i - 1]).collect()
    }

    /// CRC-attach, embed and encode a `K`-bit message.
    pub fn encode_message(&self, msg: &[Bit]) -> Result<Vec<Bit>> {
        if msg.len() != self.k_msg {
            return Err(Error::WrongLength { expected: self.k_msg, actual: msg.len() });
        }
        let u = self.embed(&self.crc.attach(msg))?;
        encode(&u, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn select_examples() {
        assert_eq!(select_info_set(&[2, 1], 1).unwrap(), (vec![2], vec![1]));
        assert_eq!(select_info_set(&[4, 3, 2, 1], 2).unwrap(), (vec![3, 4], vec![1, 2]));
        assert_eq!(select_info_set(&[4, 3, 2, 1], 4).unwrap(), (vec![1, 2, 3, 4], vec![]));
        assert!(matches!(select_info_set(&[2, 1], 3), Err(Error::TooManyInfoBits { count: 3, n: 2 })));
    }

    #[test]
    fn config_invariants() {
        let code = CodeConfig::with_defaults(128, 64).unwrap();
        assert_eq!(code.info_set().len(), 72);
        assert_eq!(code.info_set().len() + code.frozen_set().len(), 128);
        assert!(code.info_set().windows(2).all(|w| w[0] < w[1]));
        assert!(code.info_set().iter().all(|i| !code.frozen_set().contains(i)));
        assert_eq!(code.rate(), 0.5);
        assert!(code.is_frozen(1));
        assert!(!code.is_frozen(128));
    }

    #[test]
    fn config_rejects_oversized_message() {
        assert!(CodeConfig::with_defaults(8, 4).is_err());
        assert!(CodeConfig::with_defaults(100, 4).is_err());
    }

    #[test]
    fn embed_extract_round_trip() {
        let code = CodeConfig::with_defaults(32, 8).unwrap();
        let info: Vec<Bit> = (0..16).map(|i| (i % 3 == 0) as Bit).collect();
        let u = code.embed(&info).unwrap();
        assert_eq!(code.extract(&u), info);
        for &f in code.frozen_set() {
            assert_eq!(u[f - 1], 0);
        }
    }
}
