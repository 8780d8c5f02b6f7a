//! Oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use polarflip::polar::{encode, CodeConfig, Construction, Crc};
use polarflip::sim::{draw_frame, Frame};
use polarflip::Bit;

/// `(16, 6 + 2)` code with CRC `x^2 + x + 1`.
pub fn small_code() -> CodeConfig {
    CodeConfig::new(16, 6, Crc::from_u64(0b111).unwrap(), Construction::GaussianApprox, 2.5).unwrap()
}

/// `(128, 64 + 8)` with the default CRC and construction.
pub fn default_code() -> CodeConfig {
    CodeConfig::with_defaults(128, 64).unwrap()
}

pub fn frame(code: &CodeConfig, seed: u64, index: u64, snr_db: f64) -> Frame {
    let sigma = polarflip::channel::awgn_sigma(code.rate(), snr_db).unwrap();
    draw_frame(code, seed, index, sigma).unwrap()
}

/// Maximum-likelihood input vector by exhaustive search over every
/// assignment of the information positions (CRC ignored).
pub fn brute_force_ml(llrs: &[f64], code: &CodeConfig) -> Vec<Bit> {
    let k = code.info_set().len();
    assert!(k <= 16);
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for v in 0..1u32 << k {
        let info: Vec<Bit> = (0..k).map(|j| ((v >> j) & 1) as Bit).collect();
        let u = code.embed(&info).unwrap();
        let x = encode(&u, code).unwrap();
        // log-likelihood up to a constant: Σ (1 − 2x_j) · llr_j / 2
        let score: f64 = x.iter().zip(llrs).map(|(&b, &l)| if b == 0 { l } else { -l }).sum();
        if score > best.0 {
            best = (score, u);
        }
    }
    best.1
}

/// Prefix-intersection search over two score lists by plain set
/// intersection, one prefix length at a time.
pub fn gen_flip_oracle(e1: &[(usize, f64)], e2: &[(usize, f64)]) -> (Vec<usize>, usize) {
    let order = |e: &[(usize, f64)]| {
        let mut v = e.to_vec();
        v.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then(a.0.cmp(&b.0)));
        v.into_iter().map(|x| x.0).collect::<Vec<_>>()
    };
    let (o1, o2) = (order(e1), order(e2));
    for m in 1..=o1.len() {
        let p2: HashSet<usize> = o2[..m].iter().copied().collect();
        let common: Vec<usize> = o1[..m].iter().copied().filter(|i| p2.contains(i)).collect();
        if !common.is_empty() {
            return (common, m);
        }
    }
    (Vec::new(), 0)
}
