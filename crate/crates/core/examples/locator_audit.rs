//! Scores the two-vote and single-vote first-error locators against the
//! genie on the same failed frames.
//!
//! ```text
//! cargo run --release --example locator_audit -- 2.0 500
//! ```

use polarflip::sim::{genie_locator_audit, SimConfig};

fn main() -> polarflip::Result<()> {
    let mut args = std::env::args().skip(1);
    let snr: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2.0);
    let failures: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(300);
    let sim = SimConfig { max_errors: failures, ..SimConfig::default() };
    let report = genie_locator_audit(&sim, snr)?;

    let (b, c) = report.discordant();
    println!("{} failed first passes in {} frames at {snr} dB", report.failures(), report.frames);
    println!("two-vote hits    {:>5} ({:.3})", report.two_vote_hits(), report.two_vote_accuracy());
    println!("single-vote hits {:>5} ({:.3})", report.single_vote_hits(), report.single_vote_accuracy());
    println!("only two-vote right {b}, only single-vote right {c}, McNemar z {:.2}", report.mcnemar_z());

    let mut by_m = std::collections::BTreeMap::<usize, (usize, usize)>::new();
    for r in &report.records {
        let e = by_m.entry(r.m_reached).or_default();
        e.0 += 1;
        e.1 += usize::from(r.two_vote_hit());
    }
    println!("prefix length m: frames, two-vote hits");
    for (m, (n, hits)) in by_m {
        println!("  {m:>3}: {n:>5} {hits:>5}");
    }
    Ok(())
}
