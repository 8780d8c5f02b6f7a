use super::kernels::{hard_decision, llr_f, llr_g, MetricMode};
use crate::polar::CodeConfig;
use crate::{Bit, Error, Result};

/// Successive-cancellation decoding with min-sum updates.
///
/// Returns the full decided input vector `û_1^N`.
pub fn sc_decode(llrs: &[f64], config: &CodeConfig) -> Result<Vec<Bit>> {
    if llrs.len() != config.n_block() {
        return Err(Error::WrongLength { expected: config.n_block(), actual: llrs.len() });
    }
    let mut u = vec![0; llrs.len()];
    decode_node(llrs, config.frozen_mask(), &mut u);
    Ok(u)
}

/// Decodes the subtree fed by `llr` and returns its re-encoded partial sums.
fn decode_node(llr: &[f64], frozen: &[bool], u: &mut [Bit]) -> Vec<Bit> {
    if llr.len() == 1 {
        let bit = if frozen[0] { 0 } else { hard_decision(llr[0]) };
        u[0] = bit;
        return vec![bit];
    }
    let h = llr.len() / 2;
    let (a, b) = llr.split_at(h);
    let left: Vec<f64> = a.iter().zip(b).map(|(&x, &y)| llr_f(x, y, MetricMode::MinSum)).collect();
    let (u_left, u_right) = u.split_at_mut(h);
    let x_left = decode_node(&left, &frozen[..h], u_left);
    let right: Vec<f64> = a.iter().zip(b).zip(&x_left).map(|((&x, &y), &s)| llr_g(x, y, s)).collect();
    let x_right = decode_node(&right, &frozen[h..], u_right);
    let mut out: Vec<Bit> = x_left.iter().zip(&x_right).map(|(l, r)| l ^ r).collect();
    out.extend_from_slice(&x_right);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{channel_llr, modulate};

    #[test]
    fn noiseless_recovers_input() {
        let code = CodeConfig::with_defaults(64, 24).unwrap();
        let msg: Vec<Bit> = (0..24).map(|i| (i % 5 < 2) as Bit).collect();
        let info = code.crc().attach(&msg);
        let u = code.embed(&info).unwrap();
        let x = crate::polar::encode(&u, &code).unwrap();
        let llr = channel_llr(&modulate(&x), 0.5).unwrap();
        assert_eq!(sc_decode(&llr, &code).unwrap(), u);
    }
}
