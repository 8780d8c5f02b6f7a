//! Cyclic redundancy check over GF(2).
//!
//! The generator is held as coefficient bits, most significant first and
//! including the leading term. Division is MSB-first with a zero initial
//! register, no reflection and no final XOR; the `r` check bits are appended
//! after the message.

use crate::{Bit, Error, Result};

/// Generator `x^8 + x^7 + x^6 + x^5 + x^4 + x^3 + x^2`.
pub const DEFAULT_CRC8: u64 = 0x1FC;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crc {
    /// Coefficient bits, leading term first.
    poly: Vec<Bit>,
    /// Generator without its leading term, as a register mask.
    low: u64,
}

impl Crc {
    /// Builds a CRC from coefficient bits (leading term first). Leading zero
    /// coefficients are stripped.
    pub fn new(poly: &[Bit]) -> Result<Self> {
        let first = poly.iter().position(|&b| b == 1).ok_or(Error::EmptyPolynomial)?;
        let poly: Vec<Bit> = poly[first..].to_vec();
        if poly.len() > 64 {
            return Err(Error::Config(format!("CRC degree {} exceeds 63", poly.len() - 1)));
        }
        let low = poly[1..].iter().fold(0u64, |acc, &b| (acc << 1) | u64::from(b));
        Ok(Self { poly, low })
    }

    /// Builds a CRC from a hex-style integer whose set bits are the generator
    /// coefficients, e.g. `0x1FC`.
    pub fn from_u64(poly: u64) -> Result<Self> {
        if poly == 0 {
            return Err(Error::EmptyPolynomial);
        }
        let degree = 63 - poly.leading_zeros() as usize;
        let bits: Vec<Bit> = (0..=degree).rev().map(|k| ((poly >> k) & 1) as Bit).collect();
        Self::new(&bits)
    }

    /// `x^8 + x^7 + … + x^2`, the default 8-bit CRC.
    pub fn default_crc8() -> Self {
        Self::from_u64(DEFAULT_CRC8).expect("constant polynomial")
    }

    /// Number of check bits `r` (the generator degree).
    pub fn len(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn poly(&self) -> &[Bit] {
        &self.poly
    }

    /// Remainder of `bits(x)` modulo the generator, returned as an `r`-bit register.
    pub fn remainder(&self, bits: &[Bit]) -> u64 {
        let r = self.len();
        if r == 0 {
            return 0;
        }
        let mask = if r == 64 { u64::MAX } else { (1u64 << r) - 1 };
        let mut reg = 0u64;
        for &b in bits {
            let top = (reg >> (r - 1)) & 1;
            reg = ((reg << 1) | u64::from(b)) & mask;
            if top == 1 {
                reg ^= self.low;
            }
        }
        reg
    }

    /// Appends the `r` check bits of `msg · x^r mod g(x)` to `msg`.
    pub fn attach(&self, msg: &[Bit]) -> Vec<Bit> {
        let r = self.len();
        let mut out = Vec::with_capacity(msg.len() + r);
        out.extend_from_slice(msg);
        out.resize(msg.len() + r, 0);
        let rem = self.remainder(&out);
        for k in 0..r {
            out[msg.len() + k] = ((rem >> (r - 1 - k)) & 1) as Bit;
        }
        out
    }

    /// `true` iff the word (message followed by check bits) is a multiple of
    /// the generator.
    pub fn check(&self, word: &[Bit]) -> bool {
        self.remainder(word) == 0
    }
}

/// Appends CRC bits computed with the generator `poly` (leading term first).
pub fn crc_attach(msg: &[Bit], poly: &[Bit]) -> Result<Vec<Bit>> {
    Ok(Crc::new(poly)?.attach(msg))
}

/// Checks a `K + r` word; `expected_len` guards against truncated input.
pub fn crc_check(word: &[Bit], poly: &[Bit], expected_len: usize) -> Result<bool> {
    if word.len() != expected_len {
        return Err(Error::WrongLength { expected: expected_len, actual: word.len() });
    }
    Ok(Crc::new(poly)?.check(word))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Textbook long division on coefficient vectors.
    fn long_division_remainder(dividend: &[Bit], poly: &[Bit]) -> Vec<Bit> {
        let mut work = dividend.to_vec();
        for i in 0..=work.len().saturating_sub(poly.len()) {
            if work[i] == 1 {
                for (j, &p) in poly.iter().enumerate() {
                    work[i + j] ^= p;
                }
            }
        }
        work[work.len() - (poly.len() - 1)..].to_vec()
    }

    #[test]
    fn default_polynomial_bits() {
        let crc = Crc::default_crc8();
        assert_eq!(crc.len(), 8);
        assert_eq!(crc.poly(), &[1, 1, 1, 1, 1, 1, 1, 0, 0]);
    }

    #[test]
    fn zero_message_has_zero_crc() {
        let crc = Crc::default_crc8();
        assert_eq!(crc.attach(&[0; 64]), vec![0; 72]);
    }

    #[test]
    fn single_one_matches_long_division() {
        let crc = Crc::default_crc8();
        for k in [1usize, 5, 64] {
            let mut msg = vec![0; k];
            msg[0] = 1;
            let mut padded = msg.clone();
            padded.extend_from_slice(&[0; 8]);
            let expected = long_division_remainder(&padded, crc.poly());
            assert_eq!(&crc.attach(&msg)[k..], &expected[..], "k={k}");
        }
        // x^63 · x^8 mod g, computed separately with integer polynomial arithmetic
        let mut msg = vec![0; 64];
        msg[0] = 1;
        assert_eq!(crc.attach(&msg)[64..], [1, 1, 1, 1, 1, 1, 0, 0]);
    }

    #[test]
    fn attached_word_checks_and_single_flip_fails() {
        let crc = Crc::default_crc8();
        let msg: Vec<Bit> = (0..64).map(|i| ((i * 7 + 3) % 5 % 2) as Bit).collect();
        let word = crc.attach(&msg);
        assert!(crc.check(&word));
        for i in 0..word.len() {
            let mut bad = word.clone();
            bad[i] ^= 1;
            assert!(!crc.check(&bad), "flip at {i} undetected");
        }
    }

    #[test]
    fn free_functions_validate() {
        assert!(matches!(crc_attach(&[1, 0], &[]), Err(Error::EmptyPolynomial)));
        assert!(matches!(crc_attach(&[1, 0], &[0, 0]), Err(Error::EmptyPolynomial)));
        let poly = [1, 1, 1];
        let word = crc_attach(&[1, 0, 1, 1], &poly).unwrap();
        assert!(crc_check(&word, &poly, 6).unwrap());
        assert!(matches!(crc_check(&word, &poly, 7), Err(Error::WrongLength { expected: 7, actual: 6 })));
    }

    #[test]
    fn from_u64_matches_bits() {
        assert_eq!(Crc::from_u64(0b111).unwrap(), Crc::new(&[1, 1, 1]).unwrap());
        assert!(Crc::from_u64(0).is_err());
        assert_eq!(Crc::from_u64(1).unwrap().len(), 0);
    }
}
