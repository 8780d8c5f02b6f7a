//! Encode one message, send it over BPSK/AWGN and decode it with SC and
//! CA-SCL.
//!
//! ```text
//! cargo run --release --example encode_decode -- 1.5
//! ```

use polarflip::channel::{awgn_sigma, channel_llr, frame_rng, modulate, transmit};
use polarflip::decoder::{ca_scl_select, sc_decode, scl_decode};
use polarflip::polar::CodeConfig;
use polarflip::Bit;
use rand::Rng;

fn show(bits: &[Bit]) -> String {
    bits.iter().map(|b| char::from(b'0' + b)).collect()
}

fn main() -> polarflip::Result<()> {
    let snr_db: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2.0);
    let code = CodeConfig::with_defaults(128, 64)?;
    let mut rng = frame_rng(2024, 0);
    let message: Vec<Bit> = (0..code.k_msg()).map(|_| rng.random::<bool>() as Bit).collect();
    let codeword = code.encode_message(&message)?;

    let sigma = awgn_sigma(code.rate(), snr_db)?;
    let received = transmit(&modulate(&codeword), sigma, &mut rng);
    let llrs = channel_llr(&received, sigma)?;
    let hard_errors = llrs.iter().zip(&codeword).filter(|(l, &c)| (**l < 0.0) != (c == 1)).count();

    println!("(128, 64+8) at Eb/N0 = {snr_db} dB, sigma = {sigma:.4}");
    println!("message  {}", show(&message));
    println!("channel hard-decision errors: {hard_errors}/128");

    let sc = code.extract(&sc_decode(&llrs, &code)?);
    let sc_ok = sc[..code.k_msg()] == message[..];
    println!("SC       {} crc {} correct {sc_ok}", show(&sc[..code.k_msg()]), code.crc().check(&sc));

    let out = scl_decode(&llrs, &code, 8, None)?;
    match ca_scl_select(&out, &code) {
        Some(m) => {
            println!("CA-SCL   {} from path {} of 8, correct {}", show(&m), out.selected.unwrap() + 1, m == message)
        }
        None => println!("CA-SCL   no path passes the CRC"),
    }
    Ok(())
}
