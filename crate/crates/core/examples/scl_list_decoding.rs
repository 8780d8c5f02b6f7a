//! Inside one list decode: final list, prune records and what
//! shift-pruning does at a chosen index.
//!
//! ```text
//! cargo run --release --example scl_list_decoding
//! ```

use polarflip::channel::awgn_sigma;
use polarflip::decoder::{decode_with, prunable_indices, scl_decode, DecodeOptions};
use polarflip::polar::CodeConfig;
use polarflip::sim::draw_frame;

fn main() -> polarflip::Result<()> {
    let code = CodeConfig::with_defaults(128, 64)?;
    let list = 8;
    let sigma = awgn_sigma(code.rate(), 1.5)?;

    // the first frame at 1.5 dB on which the transmitted path is pruned
    let (frame, out) = (0..)
        .map(|f| {
            let fr = draw_frame(&code, 1, f, sigma).unwrap();
            let out = decode_with(&fr.llrs, &code, &DecodeOptions::new(list).reference(&fr.u_full)).unwrap();
            (fr, out)
        })
        .find(|(_, out)| out.reference_lost_at.is_some())
        .unwrap();
    let lost = out.reference_lost_at.unwrap();

    println!("final list (ascending path metric):");
    for (rank, p) in out.paths.iter().enumerate() {
        let crc = code.crc().check(&code.extract(&p.decisions));
        let tx = p.decisions == frame.u_full;
        println!("  {:>2}  PM {:>8.3}  crc {crc:<5}  transmitted {tx}", rank + 1, p.path_metric);
    }
    println!("{} prune records, first index {:?}", out.prune_records.len(), prunable_indices(&code, list).first());
    println!("transmitted path pruned at u_{lost}");

    let at =
        |o: &polarflip::decoder::DecodeOutput| o.prune_records.iter().find(|r| r.info_index == lost).cloned().unwrap();
    let base = at(&out);
    println!("  kept    {:?}", base.survivor_pms.iter().map(|m| format!("{m:.2}")).collect::<Vec<_>>());
    println!("  dropped {:?}", base.removed_pms.iter().map(|m| format!("{m:.2}")).collect::<Vec<_>>());

    let shifted = scl_decode(&frame.llrs, &code, list, Some(lost))?;
    let rec = at(&shifted);
    println!("re-decode keeping the dropped half at u_{lost}:");
    println!("  kept    {:?}", rec.survivor_pms.iter().map(|m| format!("{m:.2}")).collect::<Vec<_>>());
    println!("  transmitted path in the final list: {}", shifted.contains(&frame.u_full));
    Ok(())
}
