//! Constancy protocols.
//!
//! Single-blind: every player writes one bit saying whether its own portion
//! is constant; the smallest player of each intersection-graph component
//! also writes the value at its smallest own index in `⌈log2 D⌉` bits. Within
//! a component, locally constant portions that pairwise overlap force a single
//! value, so one representative per component is enough.
//!
//! Double-blind: every player writes one of `D + 1` codes in
//! `⌈log2 (D+1)⌉` bits: its constant value, or `D` for "not constant".

use super::{finish, read};
use crate::bits::{ceil_log2, BitString};
use crate::engine::{Blackboard, Output, PlayerView};
use crate::model::TargetFunction;
use crate::Result;

fn alphabet(view: &PlayerView<'_>) -> Result<u32> {
    match view.function() {
        TargetFunction::Constancy { d } => Ok(*d),
        _ => Err(view.decode_error("constancy protocol on another function")),
    }
}

/// `Some(v)` if every own value equals `v`.
fn constant_value(values: &[u32]) -> Option<u32> {
    let (&first, rest) = values.split_first()?;
    rest.iter().all(|&v| v == first).then_some(first)
}

pub fn sb_encode(view: &PlayerView<'_>) -> Result<BitString> {
    let structure = view.require_structure()?;
    let d = alphabet(view)?;
    let values = view.discrete()?;
    let mut out = BitString::new();
    out.push_bit(constant_value(values).is_some());
    if structure.intersection_graph().is_leader(view.player()) {
        let first = *values
            .first()
            .ok_or_else(|| view.decode_error("empty allotment set"))?;
        out.push_uint(u64::from(first), ceil_log2(u64::from(d)))?;
    }
    Ok(out)
}

pub fn sb_decode(board: &Blackboard, view: &PlayerView<'_>) -> Result<Output> {
    let structure = view.require_structure()?;
    let graph = structure.intersection_graph();
    let width = ceil_log2(u64::from(alphabet(view)?));
    let mut all_constant = true;
    let mut reported: Option<u64> = None;
    let mut agree = true;
    for player in 0..structure.k() {
        let mut reader = board.message(player).reader();
        all_constant &= read(&mut reader, 1, view, player)? == 1;
        if graph.is_leader(player) {
            let v = read(&mut reader, width, view, player)?;
            agree &= *reported.get_or_insert(v) == v;
        }
        finish(&reader, view, player)?;
    }
    Ok(Output::Bit(u8::from(all_constant && agree)))
}

pub fn db_encode(view: &PlayerView<'_>) -> Result<BitString> {
    let d = alphabet(view)?;
    let values = view.discrete()?;
    if values.is_empty() {
        return Err(view.decode_error("empty allotment set"));
    }
    let code = constant_value(values).unwrap_or(d);
    crate::bits::encode_uint(u64::from(code), ceil_log2(u64::from(d) + 1))
}

pub fn db_decode(board: &Blackboard, view: &PlayerView<'_>) -> Result<Output> {
    let d = u64::from(alphabet(view)?);
    let width = ceil_log2(d + 1);
    let mut common: Option<u64> = None;
    let mut accept = true;
    for player in 0..board.entries().len() {
        let mut reader = board.message(player).reader();
        let code = read(&mut reader, width, view, player)?;
        finish(&reader, view, player)?;
        if code > d {
            return Err(view.decode_error("constancy code out of range"));
        }
        accept &= code < d && *common.get_or_insert(code) == code;
    }
    Ok(Output::Bit(u8::from(accept)))
}
