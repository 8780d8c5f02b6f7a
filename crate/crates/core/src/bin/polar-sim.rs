//! Monte-Carlo BLER / complexity sweeps from the command line.
//!
//! ```text
//! polar-sim --n 128 --k 64 --decoder llflip --list 8 \
//!     --snr-start 1.0 --snr-stop 3.0 --snr-step 0.25 --out llflip.csv
//! ```

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use polarflip::polar::{Construction, Crc};
use polarflip::sim::{self, DecoderKind, SimConfig};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DecoderArg {
    Sc,
    CaScl,
    Post,
    Llflip,
}

impl From<DecoderArg> for DecoderKind {
    fn from(d: DecoderArg) -> Self {
        match d {
            DecoderArg::Sc => DecoderKind::Sc,
            DecoderArg::CaScl => DecoderKind::CaScl,
            DecoderArg::Post => DecoderKind::PostProcess,
            DecoderArg::Llflip => DecoderKind::LlSclFlip,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "polar-sim", about = "Polar code BLER and complexity simulation over BPSK/AWGN")]
struct Args {
    /// Block length N
    #[arg(long, default_value_t = 128)]
    n: usize,
    /// Message length K
    #[arg(long, default_value_t = 64)]
    k: usize,
    /// CRC length r; must equal the degree of --crc-poly
    #[arg(long, default_value_t = 8)]
    crc_bits: usize,
    /// CRC generator as hex coefficient bits, leading term included
    #[arg(long, default_value = "0x1FC", value_parser = parse_hex)]
    crc_poly: u64,
    /// ga | bhatta | file:PATH
    #[arg(long, default_value = "ga", value_parser = parse_construction)]
    construction: Construction,
    /// Design Eb/N0 (dB) for ga/bhatta
    #[arg(long, default_value_t = 2.5)]
    design_snr: f64,
    #[arg(long, value_enum, default_value = "llflip")]
    decoder: DecoderArg,
    /// List size L
    #[arg(long, default_value_t = 8)]
    list: usize,
    /// Weight of the first vote (also the single-vote weight of `post`)
    #[arg(long, default_value_t = 1.0)]
    alpha1: f64,
    #[arg(long, default_value_t = 2.0)]
    alpha2: f64,
    /// First Eb/N0 point (dB)
    #[arg(long, default_value_t = 1.0)]
    snr_start: f64,
    #[arg(long, default_value_t = 3.0)]
    snr_stop: f64,
    #[arg(long, default_value_t = 0.25)]
    snr_step: f64,
    #[arg(long, default_value_t = 1_000_000)]
    max_frames: u64,
    /// Stop a point after this many frame errors (audit: failed first passes)
    #[arg(long, default_value_t = 200)]
    max_errors: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Output file (CSV, or JSON lines with --audit); stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Score the two-vote and single-vote first-error locators against a
    /// genie instead of running a BLER sweep
    #[arg(long)]
    audit: bool,
}

fn parse_hex(s: &str) -> Result<u64, String> {
    let digits = s.trim_start_matches("0x").trim_start_matches("0X");
    u64::from_str_radix(digits, 16).map_err(|e| format!("`{s}`: {e}"))
}

fn parse_construction(s: &str) -> Result<Construction, String> {
    match s {
        "ga" => Ok(Construction::GaussianApprox),
        "bhatta" => Ok(Construction::Bhattacharyya),
        _ => match s.strip_prefix("file:") {
            Some(path) => Construction::from_file(path).map_err(|e| e.to_string()),
            None => Err(format!("unknown construction `{s}` (ga, bhatta, file:PATH)")),
        },
    }
}

fn run(args: Args) -> polarflip::Result<()> {
    let crc = Crc::from_u64(args.crc_poly)?;
    if crc.len() != args.crc_bits {
        return Err(polarflip::Error::PolynomialDegree { degree: crc.len(), len: args.crc_bits });
    }
    let cfg = SimConfig {
        n_block: args.n,
        k_msg: args.k,
        crc_poly: args.crc_poly,
        construction: args.construction,
        design_snr_db: args.design_snr,
        decoder: args.decoder.into(),
        list_size: args.list,
        alpha1: args.alpha1,
        alpha2: args.alpha2,
        snr_points: sim::snr_range(args.snr_start, args.snr_stop, args.snr_step)?,
        max_frames: args.max_frames,
        max_errors: args.max_errors,
        seed: args.seed,
        workers: args.workers,
    };
    cfg.validate()?;
    let mut out: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };

    if args.audit {
        for &snr in &cfg.snr_points {
            let report = sim::genie_locator_audit(&cfg, snr)?;
            eprintln!(
                "{snr:.2} dB: {} frames, {} failures, two-vote {:.4}, single-vote {:.4}, mcnemar z {:.2}",
                report.frames,
                report.failures(),
                report.two_vote_accuracy(),
                report.single_vote_accuracy(),
                report.mcnemar_z()
            );
            report.write_jsonl(&mut out)?;
        }
    } else {
        writeln!(out, "{}", sim::CSV_HEADER)?;
        for &snr in &cfg.snr_points {
            let stats = sim::run_point(&cfg, snr)?;
            writeln!(out, "{}", sim::csv_row(snr, &stats))?;
            out.flush()?;
            eprintln!("{}: {}", cfg.decoder.name(), sim::csv_row(snr, &stats));
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("polar-sim: {e}");
            ExitCode::FAILURE
        }
    }
}
