//! Reliability ordering with Gaussian approximation and Bhattacharyya
//! bounds, information-set selection and pinning an order to a file.
//!
//! ```text
//! cargo run --release --example construction -- 64 2.5
//! ```

use polarflip::polar::{construct_reliability, select_info_set, write_sequence, CodeConfig, Construction, Crc};

fn main() -> polarflip::Result<()> {
    let mut args = std::env::args().skip(1);
    // at least 16 so that a quarter-rate message plus the 8-bit CRC fits
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(32).max(16);
    let snr: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2.5);

    let ga = construct_reliability(n, snr, 0.5, &Construction::GaussianApprox)?;
    let bh = construct_reliability(n, snr, 0.5, &Construction::Bhattacharyya)?;
    println!("N = {n}, design Eb/N0 = {snr} dB, rate 1/2");
    println!("GA order (most reliable first):   {ga:?}");
    println!("Bhattacharyya order:              {bh:?}");

    let k = n / 2;
    let (info_ga, frozen) = select_info_set(&ga, k)?;
    let (info_bh, _) = select_info_set(&bh, k)?;
    println!("information set ({k} bits):       {info_ga:?}");
    println!("frozen set:                       {frozen:?}");
    println!("Bhattacharyya picks the same set: {}", info_ga == info_bh);

    let path = std::env::temp_dir().join(format!("polar_order_{n}.txt"));
    write_sequence(&path, &ga)?;
    let pinned = CodeConfig::new(n, n / 4, Crc::default_crc8(), Construction::from_file(&path)?, 0.0)?;
    println!("pinned order written to {}", path.display());
    println!("code from the file uses {:?}", pinned.info_set());
    Ok(())
}
