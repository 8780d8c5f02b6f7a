//! BLER and average list size of CA-SCL, single-vote post-processing and
//! LL-SCL-Flip over an Eb/N0 sweep, sharing the first pass between them.
//!
//! ```text
//! cargo run --release --example bler_sweep -- 20000 > sweep.csv
//! ```

use polarflip::sim::{run_comparison, snr_range, SimConfig};

fn main() -> polarflip::Result<()> {
    let frames: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5_000);
    let sim = SimConfig { max_frames: frames, max_errors: u64::MAX, ..SimConfig::default() };
    println!("snr_db,frames,bler_ca_scl,bler_post,bler_llflip,avg_list_post,avg_list_llflip");
    for snr in snr_range(1.0, 3.0, 0.5)? {
        let c = run_comparison(&sim, snr, 2.0)?;
        println!(
            "{snr:.2},{},{:.5e},{:.5e},{:.5e},{:.4},{:.4}",
            c.ca_scl.frames,
            c.ca_scl.bler(),
            c.post.bler(),
            c.llflip.bler(),
            c.post.avg_list_size(),
            c.llflip.avg_list_size()
        );
    }
    Ok(())
}
