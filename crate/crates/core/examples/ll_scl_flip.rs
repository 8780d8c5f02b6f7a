//! Locating the first error with two votes and re-decoding once.
//!
//! Runs frames at the given Eb/N0 until CA-SCL fails, then shows the two
//! confidence rankings, the flip set and the outcome of the re-decode next
//! to the single-vote baseline.
//!
//! ```text
//! cargo run --release --example ll_scl_flip -- 2.0
//! ```

use polarflip::channel::awgn_sigma;
use polarflip::decoder::{decode_with, DecodeOptions};
use polarflip::flip::{flip_after, gen_flip, ConfidenceSet, Locator};
use polarflip::polar::CodeConfig;
use polarflip::sim::draw_frame;

fn main() -> polarflip::Result<()> {
    let snr: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2.0);
    let code = CodeConfig::with_defaults(128, 64)?;
    let (list, alpha1, alpha2) = (8, 1.0, 2.0);
    let sigma = awgn_sigma(code.rate(), snr)?;

    let mut shown = 0;
    for f in 0.. {
        let frame = draw_frame(&code, 3, f, sigma)?;
        let first = decode_with(&frame.llrs, &code, &DecodeOptions::new(list).reference(&frame.u_full))?;
        if first.selected.is_some() {
            continue;
        }
        let c1 = ConfidenceSet::from_records(&first.prune_records, alpha1)?;
        let c2 = ConfidenceSet::from_records(&first.prune_records, alpha2)?;
        let flips = gen_flip(&c1, &c2)?;
        let m = flips.m_reached;
        println!("frame {f}: CA-SCL failed, transmitted path lost at {:?}", first.reference_lost_at);
        println!("  lowest E(α={alpha1}): {:?}", &c1.ascending()[..m.max(5)]);
        println!("  lowest E(α={alpha2}): {:?}", &c2.ascending()[..m.max(5)]);
        println!("  flip set {:?} found at prefix length {m}", flips.indices);

        for (name, loc) in
            [("two-vote", Locator::TwoVote { alpha1, alpha2 }), ("single-vote α=2", Locator::SingleVote { alpha: 2.0 })]
        {
            let r = flip_after(&first, &frame.llrs, &code, list, loc)?;
            let ok = r.message.as_ref() == Some(&frame.message);
            println!("  {name:<16} flips u_{:<4} recovered {ok}", r.flip_index.unwrap_or(0));
        }
        shown += 1;
        if shown == 3 {
            break;
        }
    }
    Ok(())
}
