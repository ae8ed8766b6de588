//! Protocols that reconstruct the whole input and evaluate the function
//! locally. They work for any Boolean target.
//!
//! Single-blind: each position is announced once, by its responsible player
//! (the lowest-numbered player holding it). Double-blind: each player writes
//! the characteristic vector of its own set followed by its own values.

use alloc::vec;
use alloc::vec::Vec;

use super::{finish, read, value_width};
use crate::bits::BitString;
use crate::engine::{Blackboard, Output, PlayerView};
use crate::Result;

pub fn sb_encode(view: &PlayerView<'_>) -> Result<BitString> {
    let structure = view.require_structure()?;
    let w = value_width(view.function())? as u32;
    let values = view.discrete()?;
    let mut out = BitString::new();
    for (&index, &value) in view.own_indices().iter().zip(values) {
        if structure.responsible_player(index)? == view.player() {
            out.push_uint(u64::from(value), w)?;
        }
    }
    Ok(out)
}

pub fn sb_decode(board: &Blackboard, view: &PlayerView<'_>) -> Result<Output> {
    let structure = view.require_structure()?;
    let w = value_width(view.function())? as u32;
    let mut x = vec![0u32; view.n()];
    for (player, indices) in structure.responsibilities()?.iter().enumerate() {
        let mut reader = board.message(player).reader();
        for &index in indices {
            x[index] = read(&mut reader, w, view, player)? as u32;
        }
        finish(&reader, view, player)?;
    }
    view.function().eval_discrete(&x).map(Output::Bit)
}

pub fn db_encode(view: &PlayerView<'_>) -> Result<BitString> {
    let w = value_width(view.function())? as u32;
    let own = view.own_indices();
    let mut out = BitString::new();
    let mut cursor = own.iter().peekable();
    for index in 0..view.n() {
        let held = cursor.next_if_eq(&&index).is_some();
        out.push_bit(held);
    }
    for &value in view.discrete()? {
        out.push_uint(u64::from(value), w)?;
    }
    Ok(out)
}

pub fn db_decode(board: &Blackboard, view: &PlayerView<'_>) -> Result<Output> {
    let w = value_width(view.function())? as u32;
    let n = view.n();
    let mut x: Vec<Option<u32>> = vec![None; n];
    for player in 0..board.entries().len() {
        let mut reader = board.message(player).reader();
        let mut held = Vec::new();
        for index in 0..n {
            if read(&mut reader, 1, view, player)? == 1 {
                held.push(index);
            }
        }
        for index in held {
            let value = read(&mut reader, w, view, player)? as u32;
            match x[index] {
                Some(prev) if prev != value => {
                    return Err(view.decode_error(&alloc::format!(
                        "conflicting reports for position {}",
                        index + 1
                    )))
                }
                _ => x[index] = Some(value),
            }
        }
        finish(&reader, view, player)?;
    }
    let x = x
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| {
                view.decode_error(&alloc::format!("nobody reported position {}", i + 1))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    view.function().eval_discrete(&x).map(Output::Bit)
}

#[cfg(test)]
mod tests {
    use super::super::testutil::*;
    use super::super::ProtocolKind;
    use crate::engine::Output;
    use crate::model::{Blindness, InputVector, TargetFunction};

    fn bin(s: &str) -> InputVector {
        InputVector::binary_str(s).unwrap()
    }

    #[test]
    fn sb_generic_parity_overlapping() {
        let s = spec(
            TargetFunction::Parity,
            Blindness::SingleBlind,
            3,
            &[&[1, 2], &[2, 3]],
        );
        let r = run(ProtocolKind::SbGeneric, &s, &bin("011"));
        assert_eq!(messages(&r), ["01", "1"]);
        assert!(r.outputs.iter().all(|o| *o == Output::Bit(0)));
        assert_eq!(r.cost_bits, 3);
        assert!(r.correct);
    }

    #[test]
    fn sb_generic_parity_singletons() {
        let s = spec(
            TargetFunction::Parity,
            Blindness::SingleBlind,
            3,
            &[&[1], &[2], &[3]],
        );
        let r = run(ProtocolKind::SbGeneric, &s, &bin("100"));
        assert_eq!(r.cost_bits, 3);
        assert!(r.outputs.iter().all(|o| *o == Output::Bit(1)));

        let r = run(ProtocolKind::SbGeneric, &s, &bin("101"));
        assert!(r.outputs.iter().all(|o| *o == Output::Bit(0)));
        assert_eq!(r.cost_bits, 3);
    }

    #[test]
    fn sb_generic_idle_player() {
        let s = spec(
            TargetFunction::Bsf,
            Blindness::SingleBlind,
            3,
            &[&[1, 2, 3], &[3]],
        );
        let r = run(ProtocolKind::SbGeneric, &s, &bin("001"));
        assert_eq!(messages(&r), ["001", ""]);
        assert_eq!(r.cost_bits, 3);
        assert!(r.outputs.iter().all(|o| *o == Output::Bit(1)));
    }

    #[test]
    fn db_generic_masks_and_values() {
        let s = spec(
            TargetFunction::Parity,
            Blindness::DoubleBlind,
            3,
            &[&[1, 2], &[2, 3]],
        );
        let r = run(ProtocolKind::DbGeneric, &s, &bin("010"));
        assert_eq!(messages(&r), ["11001", "01110"]);
        assert!(r.outputs.iter().all(|o| *o == Output::Bit(1)));
        assert_eq!(r.cost_bits, 10);
        assert_eq!(r.bound_bits, 10);
    }

    #[test]
    fn db_generic_single_player_costs_2n() {
        let s = spec(
            TargetFunction::Parity,
            Blindness::DoubleBlind,
            4,
            &[&[1, 2, 3, 4]],
        );
        let r = run(ProtocolKind::DbGeneric, &s, &bin("1011"));
        assert_eq!(r.cost_bits, 8);
        assert!(r.correct);
    }

    #[test]
    fn generic_on_dary_constancy() {
        let c = TargetFunction::Constancy { d: 3 };
        let s = spec(c, Blindness::SingleBlind, 3, &[&[1, 2], &[2, 3]]);
        let x = InputVector::dary(3, alloc::vec![2, 2, 2]).unwrap();
        let r = run(ProtocolKind::SbGeneric, &s, &x);
        assert_eq!(r.cost_bits, 6);
        assert!(r.correct && r.oracle == Output::Bit(1));
    }
}
