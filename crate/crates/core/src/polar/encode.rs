use super::CodeConfig;
use crate::{Bit, Error, Result};

/// Computes `x = u · G_N` over GF(2) with the in-place butterfly.
///
/// `u_full` is the complete length-`N` input vector with frozen positions
/// already zero.
pub fn encode(u_full: &[Bit], config: &CodeConfig) -> Result<Vec<Bit>> {
    if u_full.len() != config.n_block() {
        return Err(Error::WrongLength { expected: config.n_block(), actual: u_full.len() });
    }
    let mut x = u_full.to_vec();
    polar_transform(&mut x);
    Ok(x)
}

/// In-place `x ← x · F^{⊗n}`, `F = [[1, 0], [1, 1]]`. The transform is its own inverse.
pub(crate) fn polar_transform(x: &mut [Bit]) {
    let n = x.len();
    debug_assert!(n.is_power_of_two());
    let mut half = 1;
    while half < n {
        for block in x.chunks_exact_mut(2 * half) {
            let (a, b) = block.split_at_mut(half);
            for (ai, bi) in a.iter_mut().zip(b.iter()) {
                *ai ^= *bi;
            }
        }
        half *= 2;
    }
}
