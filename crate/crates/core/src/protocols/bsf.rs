//! Boolean step function protocols.
//!
//! Double-blind: player `i` writes `l(i)`, its largest 1-based index holding a
//! 0 (or 0 if none), and `m(i)`, its smallest index holding a 1 (or `N+1`).
//! With `l = max l(i)` and `m = min m(i)`, the input is a step exactly when
//! `l = m - 1`. Indices range over `0..=N+1`, hence `⌈log2 (N+2)⌉` bits each.
//!
//! Single-blind: two case bits, then a `⌈log2 N⌉`-bit payload.
//!
//! | case bits | meaning                       | payload                         |
//! |-----------|-------------------------------|---------------------------------|
//! | `00`      | own portion constant          | the constant                    |
//! | `01`      | exactly one 0→1 transition    | `j - 1`, `j` = last own 0-index |
//! | `10`      | anything else                 | zeros                           |
//!
//! Readers reconstruct the input from cases `00`/`01` and evaluate it, or
//! answer 0 as soon as anyone reports `10`.

use alloc::vec;
use alloc::vec::Vec;

use super::{finish, read};
use crate::bits::{ceil_log2, BitString};
use crate::engine::{Blackboard, Output, PlayerView};
use crate::model::eval_bsf;
use crate::Result;

const CASE_CONSTANT: u64 = 0b00;
const CASE_STEP: u64 = 0b01;
const CASE_OTHER: u64 = 0b10;

/// Width of one `l(i)` / `m(i)` index.
pub fn index_width(n: usize) -> u32 {
    ceil_log2(n as u64 + 2)
}

/// Width of the single-blind payload. Zero when `N = 1`; every 1-bit input is
/// a step, so the constant need not be sent.
pub fn payload_width(n: usize) -> u32 {
    ceil_log2(n as u64)
}

/// `(l, m)` for one player, 1-based with sentinels `0` and `N+1`.
pub fn step_indices(own: &[usize], values: &[u32], n: usize) -> (u64, u64) {
    let mut last_zero = 0;
    let mut first_one = n as u64 + 1;
    for (&index, &value) in own.iter().zip(values) {
        let one_based = index as u64 + 1;
        if value == 0 {
            last_zero = last_zero.max(one_based);
        } else {
            first_one = first_one.min(one_based);
        }
    }
    (last_zero, first_one)
}

pub fn db_encode(view: &PlayerView<'_>) -> Result<BitString> {
    let values = view.discrete()?;
    if values.is_empty() {
        return Err(view.decode_error("empty allotment set"));
    }
    let (l, m) = step_indices(view.own_indices(), values, view.n());
    let width = index_width(view.n());
    let mut out = BitString::new();
    out.push_uint(l, width)?;
    out.push_uint(m, width)?;
    Ok(out)
}

pub fn db_decode(board: &Blackboard, view: &PlayerView<'_>) -> Result<Output> {
    let width = index_width(view.n());
    let mut l = 0;
    let mut m = u64::MAX;
    for player in 0..board.entries().len() {
        let mut reader = board.message(player).reader();
        l = l.max(read(&mut reader, width, view, player)?);
        m = m.min(read(&mut reader, width, view, player)?);
        finish(&reader, view, player)?;
    }
    Ok(Output::Bit(u8::from(l + 1 == m)))
}

pub fn sb_encode(view: &PlayerView<'_>) -> Result<BitString> {
    let values = view.discrete()?;
    let own = view.own_indices();
    if values.is_empty() {
        return Err(view.decode_error("empty allotment set"));
    }
    let width = payload_width(view.n());
    let transitions = values.windows(2).filter(|w| w[0] != w[1]).count();
    let (case, payload) = match transitions {
        0 if width == 0 => (CASE_CONSTANT, 0),
        0 => (CASE_CONSTANT, u64::from(values[0])),
        1 if values[0] == 0 => {
            let (last_zero, _) = step_indices(own, values, view.n());
            (CASE_STEP, last_zero - 1)
        }
        _ => (CASE_OTHER, 0),
    };
    let mut out = BitString::new();
    out.push_uint(case, 2)?;
    out.push_uint(payload, width)?;
    Ok(out)
}

pub fn sb_decode(board: &Blackboard, view: &PlayerView<'_>) -> Result<Output> {
    let structure = view.require_structure()?;
    let width = payload_width(view.n());
    let mut x: Vec<Option<u32>> = vec![None; view.n()];
    for player in 0..structure.k() {
        let mut reader = board.message(player).reader();
        let case = read(&mut reader, 2, view, player)?;
        let payload = read(&mut reader, width, view, player)?;
        finish(&reader, view, player)?;
        for &index in structure.set(player) {
            let value = match case {
                CASE_CONSTANT => payload as u32,
                CASE_STEP => u32::from(index as u64 > payload),
                CASE_OTHER => return Ok(Output::Bit(0)),
                _ => return Err(view.decode_error("invalid step case")),
            };
            x[index] = Some(value);
        }
    }
    let x = x
        .into_iter()
        .map(|v| v.ok_or_else(|| view.decode_error("position not reconstructed")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Output::Bit(eval_bsf(&x)))
}

#[cfg(test)]
mod tests {
    use super::super::testutil::*;
    use super::super::ProtocolKind;
    use super::*;
    use crate::model::{Blindness, InputVector, TargetFunction};

    fn bin(s: &str) -> InputVector {
        InputVector::binary_str(s).unwrap()
    }

    fn all_output(r: &crate::engine::RunResult, bit: u8) -> bool {
        r.outputs.iter().all(|o| *o == Output::Bit(bit))
    }

    #[test]
    fn db_step_across_interleaved_sets() {
        let s = spec(
            TargetFunction::Bsf,
            Blindness::DoubleBlind,
            6,
            &[&[1, 2, 5], &[3, 4, 6]],
        );
        assert_eq!(step_indices(s.structure().set(0), &[0, 0, 1], 6), (2, 5));
        assert_eq!(step_indices(s.structure().set(1), &[0, 1, 1], 6), (3, 4));
        let r = run(ProtocolKind::DbBsf, &s, &bin("000111"));
        assert!(all_output(&r, 1));
        assert_eq!(r.cost_bits, 2 * 2 * 3);
    }

    #[test]
    fn db_non_step_singletons() {
        let s = spec(
            TargetFunction::Bsf,
            Blindness::DoubleBlind,
            4,
            &[&[1], &[2], &[3], &[4]],
        );
        let r = run(ProtocolKind::DbBsf, &s, &bin("0101"));
        // l = (1,0,3,0), m = (5,2,5,4), width ⌈log2 6⌉ = 3
        assert_eq!(messages(&r), ["001101", "000010", "011101", "000100"]);
        assert!(all_output(&r, 0));
        assert!(r.correct);
    }

    #[test]
    fn db_all_zero_sentinels() {
        let s = spec(
            TargetFunction::Bsf,
            Blindness::DoubleBlind,
            3,
            &[&[1, 2], &[3]],
        );
        let r = run(ProtocolKind::DbBsf, &s, &bin("000"));
        assert!(all_output(&r, 1));
        let r = run(ProtocolKind::DbBsf, &s, &bin("111"));
        assert!(all_output(&r, 1));
    }

    #[test]
    fn sb_two_constant_blocks() {
        let s = spec(
            TargetFunction::Bsf,
            Blindness::SingleBlind,
            4,
            &[&[1, 2], &[3, 4]],
        );
        let r = run(ProtocolKind::SbBsf, &s, &bin("0011"));
        assert_eq!(messages(&r), ["0000", "0001"]);
        assert!(all_output(&r, 1));
        assert_eq!(r.cost_bits, 2 * (2 + 2));
    }

    #[test]
    fn sb_interleaved_constants_reconstruct_non_step() {
        let s = spec(
            TargetFunction::Bsf,
            Blindness::SingleBlind,
            4,
            &[&[1, 3], &[2, 4]],
        );
        let r = run(ProtocolKind::SbBsf, &s, &bin("0101"));
        assert_eq!(messages(&r), ["0000", "0001"]);
        assert!(all_output(&r, 0));
        assert!(r.correct);
    }

    #[test]
    fn sb_case_three_short_circuits() {
        let s = spec(
            TargetFunction::Bsf,
            Blindness::SingleBlind,
            4,
            &[&[1, 2, 3], &[3, 4]],
        );
        let r = run(ProtocolKind::SbBsf, &s, &bin("0110"));
        // P1 sees 011: step, j = 1 sent as 0; P2 sees 10: case three
        assert_eq!(messages(&r), ["0100", "1000"]);
        assert!(all_output(&r, 0));
    }

    #[test]
    fn sb_single_position() {
        let s = spec(
            TargetFunction::Bsf,
            Blindness::SingleBlind,
            1,
            &[&[1], &[1]],
        );
        for x in ["0", "1"] {
            let r = run(ProtocolKind::SbBsf, &s, &bin(x));
            assert_eq!(r.cost_bits, 4);
            assert!(all_output(&r, 1));
        }
    }

    #[test]
    fn sb_descending_pair_is_case_three() {
        let s = spec(TargetFunction::Bsf, Blindness::SingleBlind, 2, &[&[1, 2]]);
        let r = run(ProtocolKind::SbBsf, &s, &bin("10"));
        assert_eq!(messages(&r), ["100"]);
        assert!(all_output(&r, 0));
    }
}
