//! Monte-Carlo BLER and complexity experiments over BPSK/AWGN.
//!
//! Frame `f` draws its message and noise from the random stream
//! `(seed, f)`, and frames are evaluated in fixed-size batches whose results
//! are folded in frame order. The statistics of a point therefore do not
//! depend on the number of worker threads, and every decoder and SNR point
//! sees the same messages and the same standard-normal noise draws.

mod audit;

use std::io::Write;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use audit::{genie_locator_audit, AuditRecord, AuditReport};

use crate::channel::{awgn_sigma, channel_llr, frame_rng, modulate, transmit};
use crate::decoder::{self, DecodeOptions};
use crate::flip::{self, Locator};
use crate::polar::{CodeConfig, Construction, Crc, DEFAULT_CRC8, DEFAULT_DESIGN_SNR_DB};
use crate::{Bit, Error, Result};

/// Frames evaluated per parallel batch.
const BATCH: u64 = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecoderKind {
    Sc,
    CaScl,
    /// Single-vote re-decode at `argmin E_i(α1)`.
    PostProcess,
    /// Two-vote re-decode with `(α1, α2)`.
    LlSclFlip,
}

impl DecoderKind {
    pub fn name(&self) -> &'static str {
        match self {
            DecoderKind::Sc => "sc",
            DecoderKind::CaScl => "ca-scl",
            DecoderKind::PostProcess => "post",
            DecoderKind::LlSclFlip => "llflip",
        }
    }
}

/// Parameters of a simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub n_block: usize,
    pub k_msg: usize,
    /// Generator coefficients as set bits, e.g. `0x1FC`.
    pub crc_poly: u64,
    pub construction: Construction,
    pub design_snr_db: f64,
    pub decoder: DecoderKind,
    pub list_size: usize,
    pub alpha1: f64,
    pub alpha2: f64,
    /// Eb/N0 points in dB.
    pub snr_points: Vec<f64>,
    pub max_frames: u64,
    pub max_errors: u64,
    pub seed: u64,
    /// Worker threads; `0` uses all cores.
    pub workers: usize,
}

impl Default for SimConfig {
    /// `(128, 64 + 8)`, `L = 8`, LL-SCL-Flip with `(α1, α2) = (1, 2)`.
    fn default() -> Self {
        Self {
            n_block: 128,
            k_msg: 64,
            crc_poly: DEFAULT_CRC8,
            construction: Construction::GaussianApprox,
            design_snr_db: DEFAULT_DESIGN_SNR_DB,
            decoder: DecoderKind::LlSclFlip,
            list_size: 8,
            alpha1: 1.0,
            alpha2: 2.0,
            snr_points: vec![2.0],
            max_frames: 1_000_000,
            max_errors: 200,
            seed: 0,
            workers: 0,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_frames == 0 {
            return Err(Error::Config("max_frames must be positive".into()));
        }
        if self.max_errors == 0 {
            return Err(Error::Config("max_errors must be positive".into()));
        }
        if self.snr_points.is_empty() {
            return Err(Error::Config("no SNR points".into()));
        }
        if let Some(s) = self.snr_points.iter().find(|s| !s.is_finite()) {
            return Err(Error::Config(format!("SNR point {s} is not finite")));
        }
        if self.decoder != DecoderKind::Sc && !self.list_size.is_power_of_two() {
            return Err(Error::ListSizeNotPowerOfTwo(self.list_size));
        }
        match self.decoder {
            DecoderKind::PostProcess if self.alpha1.is_nan() || self.alpha1 < 1.0 => {
                Err(Error::InvalidAlpha(self.alpha1))
            }
            DecoderKind::LlSclFlip => [self.alpha1, self.alpha2]
                .into_iter()
                .find(|a| a.is_nan() || *a < 1.0)
                .map_or(Ok(()), |a| Err(Error::InvalidAlpha(a))),
            _ => Ok(()),
        }
    }

    /// The code described by this configuration.
    pub fn code(&self) -> Result<CodeConfig> {
        CodeConfig::new(
            self.n_block,
            self.k_msg,
            Crc::from_u64(self.crc_poly)?,
            self.construction.clone(),
            self.design_snr_db,
        )
    }

    /// List size used by the complexity metric (`1` for SC).
    pub fn effective_list(&self) -> usize {
        match self.decoder {
            DecoderKind::Sc => 1,
            _ => self.list_size,
        }
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))
    }
}

/// Counters of one SNR point.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SimStats {
    /// Frames run, `F`.
    pub frames: u64,
    pub frame_errors: u64,
    /// First passes plus re-decode passes, `T + t`.
    pub scl_passes: u64,
    pub flip_attempts: u64,
    /// Re-decodes that produced the transmitted message.
    pub flip_successes: u64,
    pub list_size: usize,
}

impl SimStats {
    pub fn bler(&self) -> f64 {
        if self.frames == 0 {
            0.0
        } else {
            self.frame_errors as f64 / self.frames as f64
        }
    }

    /// Average list size `(T + t) · L / F`.
    pub fn avg_list_size(&self) -> f64 {
        if self.frames == 0 {
            0.0
        } else {
            (self.scl_passes as f64 * self.list_size as f64) / self.frames as f64
        }
    }

    fn add(&mut self, o: &FrameOutcome) {
        self.frames += 1;
        self.frame_errors += u64::from(o.error);
        self.scl_passes += u64::from(o.passes);
        self.flip_attempts += u64::from(o.flipped);
        self.flip_successes += u64::from(o.flipped && !o.error);
    }
}

/// Per-frame outcome, as seen by the statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameOutcome {
    pub error: bool,
    pub passes: u32,
    pub flipped: bool,
}

/// One transmitted frame: message, full input vector and channel LLRs.
#[derive(Debug, Clone)]
pub struct Frame {
    pub message: Vec<Bit>,
    pub u_full: Vec<Bit>,
    pub llrs: Vec<f64>,
}

/// Draws frame `index` of stream `seed` at noise level `sigma`.
pub fn draw_frame(code: &CodeConfig, seed: u64, index: u64, sigma: f64) -> Result<Frame> {
    let mut rng = frame_rng(seed, index);
    let message: Vec<Bit> = (0..code.k_msg()).map(|_| rng.random::<bool>() as Bit).collect();
    let u_full = code.embed(&code.crc().attach(&message))?;
    let x = crate::polar::encode(&u_full, code)?;
    let y = transmit(&modulate(&x), sigma, &mut rng);
    let llrs = channel_llr(&y, sigma)?.into_inner();
    Ok(Frame { message, u_full, llrs })
}

/// Decodes one frame with the configured decoder.
pub fn decode_frame(sim: &SimConfig, code: &CodeConfig, frame: &Frame) -> Result<FrameOutcome> {
    let (message, passes, flipped) = match sim.decoder {
        DecoderKind::Sc => {
            let u = decoder::sc_decode(&frame.llrs, code)?;
            (Some(code.extract(&u)[..code.k_msg()].to_vec()), 1, false)
        }
        DecoderKind::CaScl => {
            let out = decoder::decode_with(&frame.llrs, code, &DecodeOptions::new(sim.list_size))?;
            (decoder::ca_scl_select(&out, code), 1, false)
        }
        DecoderKind::PostProcess | DecoderKind::LlSclFlip => {
            let locator = match sim.decoder {
                DecoderKind::PostProcess => Locator::SingleVote { alpha: sim.alpha1 },
                _ => Locator::TwoVote { alpha1: sim.alpha1, alpha2: sim.alpha2 },
            };
            let r = flip::flip_decode(&frame.llrs, code, sim.list_size, locator)?;
            (r.message, r.attempts, r.used_flip)
        }
    };
    let error = message.as_deref() != Some(&frame.message[..]);
    Ok(FrameOutcome { error, passes, flipped })
}

/// Runs frames in batches and folds their outcomes in frame order until
/// `fold` returns `false` or `max_frames` is reached.
fn for_each_frame<T, M, F>(sim: &SimConfig, map: M, mut fold: F) -> Result<()>
where
    T: Send,
    M: Fn(u64) -> Result<T> + Sync,
    F: FnMut(T) -> bool,
{
    let pool = sim.pool()?;
    let mut next = 0u64;
    while next < sim.max_frames {
        let end = (next + BATCH).min(sim.max_frames);
        let batch: Vec<T> = pool.install(|| (next..end).into_par_iter().map(&map).collect::<Result<_>>())?;
        for item in batch {
            if !fold(item) {
                return Ok(());
            }
        }
        next = end;
    }
    Ok(())
}

/// Simulates one Eb/N0 point.
pub fn run_point(sim: &SimConfig, snr_db: f64) -> Result<SimStats> {
    sim.validate()?;
    let code = sim.code()?;
    run_point_with(sim, &code, snr_db)
}

/// Like [`run_point`] but with a prebuilt code.
pub fn run_point_with(sim: &SimConfig, code: &CodeConfig, snr_db: f64) -> Result<SimStats> {
    let sigma = awgn_sigma(code.rate(), snr_db)?;
    let mut stats = SimStats { list_size: sim.effective_list(), ..SimStats::default() };
    for_each_frame(
        sim,
        |f| decode_frame(sim, code, &draw_frame(code, sim.seed, f, sigma)?),
        |o| {
            stats.add(&o);
            stats.frame_errors < sim.max_errors
        },
    )?;
    Ok(stats)
}

/// Simulates every SNR point in order.
pub fn run_sweep(sim: &SimConfig) -> Result<Vec<(f64, SimStats)>> {
    sim.validate()?;
    let code = sim.code()?;
    sim.snr_points.iter().map(|&snr| Ok((snr, run_point_with(sim, &code, snr)?))).collect()
}

/// CA-SCL, single-vote and two-vote statistics of one point, from shared
/// first passes.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Comparison {
    pub ca_scl: SimStats,
    pub post: SimStats,
    pub llflip: SimStats,
    /// Frames the two-vote decoder got wrong while CA-SCL got them right.
    pub llflip_hurt: u64,
    /// Same for the single-vote decoder.
    pub post_hurt: u64,
}

/// Runs CA-SCL once per frame and feeds the same first pass to the
/// single-vote locator (weight `post_alpha`) and to the two-vote locator
/// `(sim.alpha1, sim.alpha2)`. Each decoder's statistics equal those of a
/// separate [`run_point`] over the same frames. Stops at `max_frames`, or
/// once every decoder has `max_errors` errors.
pub fn run_comparison(sim: &SimConfig, snr_db: f64, post_alpha: f64) -> Result<Comparison> {
    let sim = SimConfig { decoder: DecoderKind::LlSclFlip, ..sim.clone() };
    sim.validate()?;
    let single = Locator::SingleVote { alpha: post_alpha };
    single.validate()?;
    let double = Locator::TwoVote { alpha1: sim.alpha1, alpha2: sim.alpha2 };
    let code = sim.code()?;
    let sigma = awgn_sigma(code.rate(), snr_db)?;
    let list = sim.list_size;
    let mut cmp = Comparison::default();
    for s in [&mut cmp.ca_scl, &mut cmp.post, &mut cmp.llflip] {
        s.list_size = list;
    }
    for_each_frame(
        &sim,
        |f| -> Result<[FrameOutcome; 3]> {
            let frame = draw_frame(&code, sim.seed, f, sigma)?;
            let first = decoder::decode_with(&frame.llrs, &code, &DecodeOptions::new(list))?;
            let wrong = |m: Option<&[Bit]>| m != Some(&frame.message[..]);
            let ca = FrameOutcome {
                error: wrong(decoder::ca_scl_select(&first, &code).as_deref()),
                passes: 1,
                flipped: false,
            };
            let outcome = |loc| -> Result<FrameOutcome> {
                let r = flip::flip_after(&first, &frame.llrs, &code, list, loc)?;
                Ok(FrameOutcome { error: wrong(r.message.as_deref()), passes: r.attempts, flipped: r.used_flip })
            };
            Ok([ca, outcome(single)?, outcome(double)?])
        },
        |[ca, post, ll]| {
            cmp.ca_scl.add(&ca);
            cmp.post.add(&post);
            cmp.llflip.add(&ll);
            cmp.llflip_hurt += u64::from(ll.error && !ca.error);
            cmp.post_hurt += u64::from(post.error && !ca.error);
            [cmp.ca_scl, cmp.post, cmp.llflip].iter().any(|s| s.frame_errors < sim.max_errors)
        },
    )?;
    Ok(cmp)
}

pub const CSV_HEADER: &str = "snr_db,frames,frame_errors,bler,scl_passes,flip_attempts,flip_successes,avg_list_size";

/// One CSV data row.
pub fn csv_row(snr_db: f64, s: &SimStats) -> String {
    format!(
        "{:.2},{},{},{:.5e},{},{},{},{:.6}",
        snr_db,
        s.frames,
        s.frame_errors,
        s.bler(),
        s.scl_passes,
        s.flip_attempts,
        s.flip_successes,
        s.avg_list_size()
    )
}

pub fn write_csv<W: Write>(mut w: W, rows: &[(f64, SimStats)]) -> Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for (snr, s) in rows {
        writeln!(w, "{}", csv_row(*snr, s))?;
    }
    Ok(())
}

/// `start, start + step, …` up to and including `stop` (within half a step).
pub fn snr_range(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if step.is_nan() || step <= 0.0 || stop < start {
        return Err(Error::Config(format!("bad SNR range {start}:{step}:{stop}")));
    }
    let count = ((stop - start) / step + 0.5).floor() as usize + 1;
    Ok((0..count).map(|k| start + k as f64 * step).collect())
}
