//! Accuracy of first-error localization against a genie.
//!
//! The genie index of a failed first pass is the earliest pruning step at
//! which every path still consistent with the transmitted input was dropped.
//! Both locators are scored on the same failed frames.

use std::io::Write;

use serde::Serialize;

use super::{draw_frame, for_each_frame, SimConfig};
use crate::channel::awgn_sigma;
use crate::decoder::{self, DecodeOptions};
use crate::flip::{gen_flip, ConfidenceSet};
use crate::Result;

/// Diagnostic line for one failed first pass.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditRecord {
    pub frame: u64,
    pub genie_index: Option<usize>,
    /// Two-vote choice `i1`.
    pub two_vote: Option<usize>,
    /// Argmin of `E_i(α1)`.
    pub single_vote: Option<usize>,
    pub m_reached: usize,
    /// First `m_reached` indices of the ascending order under `α1`.
    pub order1_prefix: Vec<usize>,
    pub order2_prefix: Vec<usize>,
    pub e_alpha1: Vec<(usize, f64)>,
    pub e_alpha2: Vec<(usize, f64)>,
}

impl AuditRecord {
    pub fn two_vote_hit(&self) -> bool {
        self.genie_index.is_some() && self.two_vote == self.genie_index
    }

    pub fn single_vote_hit(&self) -> bool {
        self.genie_index.is_some() && self.single_vote == self.genie_index
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct AuditReport {
    pub frames: u64,
    pub records: Vec<AuditRecord>,
}

impl AuditReport {
    pub fn failures(&self) -> usize {
        self.records.len()
    }

    pub fn two_vote_hits(&self) -> usize {
        self.records.iter().filter(|r| r.two_vote_hit()).count()
    }

    pub fn single_vote_hits(&self) -> usize {
        self.records.iter().filter(|r| r.single_vote_hit()).count()
    }

    pub fn two_vote_accuracy(&self) -> f64 {
        ratio(self.two_vote_hits(), self.failures())
    }

    pub fn single_vote_accuracy(&self) -> f64 {
        ratio(self.single_vote_hits(), self.failures())
    }

    /// Discordant pairs: (two-vote only right, single-vote only right).
    pub fn discordant(&self) -> (usize, usize) {
        let two_only = self.records.iter().filter(|r| r.two_vote_hit() && !r.single_vote_hit()).count();
        let single_only = self.records.iter().filter(|r| r.single_vote_hit() && !r.two_vote_hit()).count();
        (two_only, single_only)
    }

    /// McNemar statistic `(b − c) / √(b + c)`; positive favours the two-vote locator.
    pub fn mcnemar_z(&self) -> f64 {
        let (b, c) = self.discordant();
        if b + c == 0 {
            0.0
        } else {
            (b as f64 - c as f64) / ((b + c) as f64).sqrt()
        }
    }

    /// Writes one JSON object per failed frame.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut w, r).map_err(std::io::Error::from)?;
            writeln!(w)?;
        }
        Ok(())
    }
}

fn ratio(a: usize, b: usize) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

/// Runs CA-SCL on up to `max_frames` frames and scores both locators on
/// every frame where no path passes CRC. Stops after `max_errors` failures.
pub fn genie_locator_audit(sim: &SimConfig, snr_db: f64) -> Result<AuditReport> {
    sim.validate()?;
    let code = sim.code()?;
    let sigma = awgn_sigma(code.rate(), snr_db)?;
    let list = sim.list_size;
    let mut report = AuditReport::default();
    for_each_frame(
        sim,
        |f| -> Result<Option<AuditRecord>> {
            let frame = draw_frame(&code, sim.seed, f, sigma)?;
            let opts = DecodeOptions::new(list).reference(&frame.u_full);
            let out = decoder::decode_with(&frame.llrs, &code, &opts)?;
            if out.selected.is_some() {
                return Ok(None);
            }
            let c1 = ConfidenceSet::from_records(&out.prune_records, sim.alpha1)?;
            let c2 = ConfidenceSet::from_records(&out.prune_records, sim.alpha2)?;
            let cands = gen_flip(&c1, &c2)?;
            let m = cands.m_reached;
            Ok(Some(AuditRecord {
                frame: f,
                genie_index: out.reference_lost_at,
                two_vote: cands.first(),
                single_vote: c1.argmin(),
                m_reached: m,
                order1_prefix: c1.ascending()[..m].to_vec(),
                order2_prefix: c2.ascending()[..m].to_vec(),
                e_alpha1: c1.entries,
                e_alpha2: c2.entries,
            }))
        },
        |rec| {
            report.frames += 1;
            if let Some(r) = rec {
                report.records.push(r);
            }
            (report.records.len() as u64) < sim.max_errors
        },
    )?;
    Ok(report)
}
