//! # Polar codes with low-latency SCL bit-flipping
//!
//! This crate builds `(N, K + r)` polar codes, encodes them with the Kronecker
//! transform `G_N = F^{⊗n}`, and decodes them with successive cancellation (SC),
//! successive cancellation list (SCL) and CRC-aided SCL decoders. On top of the
//! list decoder sits a single-round bit-flipping stage: when every path fails
//! CRC, the decoder ranks the pruning decisions by their confidence under two
//! weighting factors, intersects the two rankings to estimate the first error
//! position, and re-decodes once, keeping the discarded half of the list at
//! that position (shift-pruning).
//!
//! The [`sim`] module drives Monte-Carlo BLER and complexity experiments over a
//! BPSK/AWGN channel with reproducible per-frame random streams.
//!
//! ```
//! use polarflip::{channel, decoder, polar::CodeConfig};
//!
//! let code = CodeConfig::with_defaults(128, 64).unwrap();
//! let msg = vec![1u8; 64];
//! let x = code.encode_message(&msg).unwrap();
//! let y: Vec<f64> = channel::modulate(&x);
//! let llrs = channel::channel_llr(&y, 0.8).unwrap();
//! let out = decoder::scl_decode(&llrs, &code, 8, None).unwrap();
//! assert_eq!(decoder::ca_scl_select(&out, &code).unwrap(), msg);
//! ```

pub mod channel;
pub mod decoder;
mod error;
pub mod flip;
pub mod polar;
pub mod sim;

pub use error::{Error, Result};

/// A hard bit, stored as `0` or `1`.
pub type Bit = u8;
