//! Scalar LLR-domain updates shared by the SC and list decoders.

use crate::Bit;

/// Arithmetic used for the check-node update and the path metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MetricMode {
    /// Min-sum check node and the hard-decision path metric penalty `|L|`.
    #[default]
    MinSum,
    /// Exact box-plus check node and `ln(1 + e^{−(1−2u)L})` path metric.
    Exact,
}

/// Check-node (`f`) update.
#[inline]
pub fn llr_f(a: f64, b: f64, mode: MetricMode) -> f64 {
    match mode {
        MetricMode::MinSum => f_min_sum(a, b),
        // 2·atanh(tanh(a/2)·tanh(b/2)) in its overflow-free form
        MetricMode::Exact => {
            if a == 0.0 || b == 0.0 {
                return 0.0;
            }
            f_min_sum(a, b) + (-(a + b).abs()).exp().ln_1p() - (-(a - b).abs()).exp().ln_1p()
        }
    }
}

/// `sign(a)·sign(b)·min(|a|, |b|)`; a zero input gives a (signed) zero.
#[inline(always)]
pub(crate) fn f_min_sum(a: f64, b: f64) -> f64 {
    let sign = (a.to_bits() ^ b.to_bits()) & (1 << 63);
    f64::from_bits(a.abs().min(b.abs()).to_bits() | sign)
}

/// Variable-node (`g`) update given the partial sum `u` of the left branch.
#[inline]
pub fn llr_g(a: f64, b: f64, u: Bit) -> f64 {
    b + f64::from_bits(a.to_bits() ^ (u64::from(u & 1) << 63))
}

/// `0` for `llr ≥ 0`, `1` otherwise.
#[inline]
pub fn hard_decision(llr: f64) -> Bit {
    if llr >= 0.0 {
        0
    } else {
        1
    }
}

/// Path metric after deciding `bit` at a node with LLR `llr`.
#[inline]
pub fn pm_update(pm: f64, llr: f64, bit: Bit, mode: MetricMode) -> f64 {
    match mode {
        MetricMode::MinSum => {
            if bit == hard_decision(llr) {
                pm
            } else {
                pm + llr.abs()
            }
        }
        MetricMode::Exact => {
            let x = if bit == 0 { -llr } else { llr };
            pm + x.max(0.0) + (-x.abs()).exp().ln_1p()
        }
    }
}
