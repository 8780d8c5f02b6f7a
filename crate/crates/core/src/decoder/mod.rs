//! SC, SCL and CRC-aided SCL decoding.

mod kernels;
mod list;
mod sc;

pub use kernels::{hard_decision, llr_f, llr_g, pm_update, MetricMode};
pub use list::{
    ca_scl_select, decode_with, prunable_indices, scl_decode, unpruned_prefix, DecodeOptions, DecodeOutput, DecodePath,
    PruneRecord,
};
pub use sc::sc_decode;
