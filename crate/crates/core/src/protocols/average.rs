//! Single-blind ε-averaging.
//!
//! Player `i` knows the multiplicity `N_j` of each of its positions, so it can
//! compute its share `c_i = (1/N)·Σ_{j∈S_i} x_j / N_j`. The shares lie in
//! `[0, 1]` and sum to the mean exactly. Each share is quantised to
//! `b = ⌈log2 (k/ε)⌉` bits by flooring and decoded at the bucket midpoint,
//! so every decoded term is within `2^-b ≤ ε/k` of its share.

use super::{finish, read};
use crate::bits::BitString;
use crate::engine::{Blackboard, Output, PlayerView};
use crate::model::{AllotmentStructure, TargetFunction};
use crate::{Error, Result};

/// `⌈log2 (k/ε)⌉`, computed as the least `b` with `2^b ≥ k/ε`.
pub fn quantizer_width(k: usize, epsilon: f64) -> Result<u32> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::InvalidParameter(alloc::format!(
            "epsilon must lie in (0, 1], got {epsilon}"
        )));
    }
    let target = k as f64 / epsilon;
    let mut b = 0u32;
    let mut scale = 1.0f64;
    while scale < target {
        b += 1;
        scale *= 2.0;
        if b > 62 {
            return Err(Error::InvalidParameter(alloc::format!(
                "k/epsilon = {target} needs more than 62 bits"
            )));
        }
    }
    Ok(b)
}

/// The unquantised share of `player` given its own values.
pub fn contribution(structure: &AllotmentStructure, player: usize, values: &[f64]) -> f64 {
    let n = structure.n() as f64;
    structure
        .set(player)
        .iter()
        .zip(values)
        .map(|(&j, &x)| x / structure.multiplicity(j) as f64)
        .sum::<f64>()
        / n
}

pub fn quantize(share: f64, width: u32) -> u64 {
    let levels = 1u64 << width;
    let scaled = share * levels as f64;
    // shares are non-negative, so truncation is floor
    let q = if scaled <= 0.0 { 0 } else { scaled as u64 };
    q.min(levels - 1)
}

/// Midpoint of bucket `q`.
pub fn dequantize(q: u64, width: u32) -> f64 {
    (q as f64 + 0.5) / (1u64 << width) as f64
}

fn width_of(view: &PlayerView<'_>) -> Result<u32> {
    match view.function() {
        TargetFunction::Average { epsilon } => quantizer_width(view.k(), *epsilon),
        _ => Err(view.decode_error("averaging protocol on another function")),
    }
}

pub fn encode(view: &PlayerView<'_>) -> Result<BitString> {
    let structure = view.require_structure()?;
    let width = width_of(view)?;
    let share = contribution(structure, view.player(), view.reals()?);
    crate::bits::encode_uint(quantize(share, width), width)
}

pub fn decode(board: &Blackboard, view: &PlayerView<'_>) -> Result<Output> {
    view.require_structure()?;
    let width = width_of(view)?;
    let mut total = 0.0;
    for player in 0..board.entries().len() {
        let mut reader = board.message(player).reader();
        total += dequantize(read(&mut reader, width, view, player)?, width);
        finish(&reader, view, player)?;
    }
    Ok(Output::Real(total))
}
