//! The seven constructive protocols.
//!
//! | protocol       | blindness | function           | cost (bits)                     |
//! |----------------|-----------|--------------------|---------------------------------|
//! | `sb_generic`   | single    | any Boolean        | `N·w`                           |
//! | `db_generic`   | double    | any Boolean        | `Σ_i (N + |S_i|·w)` ≤ `2Nk·w`   |
//! | `sb_constancy` | single    | Constancy(D)       | `r·⌈log2 D⌉ + k`                |
//! | `db_constancy` | double    | Constancy(D)       | `k·⌈log2 (D+1)⌉`                |
//! | `db_bsf`       | double    | BSF                | `2k·⌈log2 (N+2)⌉`               |
//! | `sb_bsf`       | single    | BSF                | `k·(⌈log2 N⌉ + 2)`              |
//! | `sb_average`   | single    | Average(ε)         | `k·⌈log2 (k/ε)⌉`                |
//!
//! `w = ⌈log2 D⌉` is the width of one input value (1 for binary inputs) and
//! `r` is the number of components of the intersection graph.

pub mod average;
pub mod bsf;
pub mod constancy;
pub mod generic;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::bits::{ceil_log2, BitReader, BitString};
use crate::engine::{mismatch, Blackboard, Output, PlayerView, Protocol};
use crate::model::{Blindness, MacroscopeSpec, TargetFunction};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProtocolKind {
    SbGeneric,
    DbGeneric,
    SbConstancy,
    DbConstancy,
    DbBsf,
    SbBsf,
    SbAverage,
}

impl ProtocolKind {
    pub const ALL: [ProtocolKind; 7] = [
        Self::SbGeneric,
        Self::DbGeneric,
        Self::SbConstancy,
        Self::DbConstancy,
        Self::DbBsf,
        Self::SbBsf,
        Self::SbAverage,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::SbGeneric => "sb_generic",
            Self::DbGeneric => "db_generic",
            Self::SbConstancy => "sb_constancy",
            Self::DbConstancy => "db_constancy",
            Self::DbBsf => "db_bsf",
            Self::SbBsf => "sb_bsf",
            Self::SbAverage => "sb_average",
        }
    }

    pub fn required_blindness(&self) -> Blindness {
        match self {
            Self::SbGeneric | Self::SbConstancy | Self::SbBsf | Self::SbAverage => {
                Blindness::SingleBlind
            }
            Self::DbGeneric | Self::DbConstancy | Self::DbBsf => Blindness::DoubleBlind,
        }
    }

    /// Whether this protocol computes `function`.
    pub fn accepts(&self, function: &TargetFunction) -> bool {
        use TargetFunction::*;
        match self {
            Self::SbGeneric | Self::DbGeneric => function.is_boolean(),
            Self::SbConstancy | Self::DbConstancy => matches!(function, Constancy { .. }),
            Self::DbBsf | Self::SbBsf => matches!(function, Bsf),
            Self::SbAverage => matches!(function, Average { .. }),
        }
    }

    /// Every protocol that can run on `(function, blindness)`.
    pub fn applicable(function: &TargetFunction, blindness: Blindness) -> Vec<ProtocolKind> {
        Self::ALL
            .into_iter()
            .filter(|p| p.required_blindness() == blindness && p.accepts(function))
            .collect()
    }

    /// The protocol built specifically for `(function, blindness)`: the
    /// generic ones for Parity, otherwise the function's own construction.
    pub fn dedicated(function: &TargetFunction, blindness: Blindness) -> Option<ProtocolKind> {
        use Blindness::*;
        use TargetFunction::*;
        match (function, blindness) {
            (Parity, SingleBlind) => Some(Self::SbGeneric),
            (Parity, DoubleBlind) => Some(Self::DbGeneric),
            (Constancy { .. }, SingleBlind) => Some(Self::SbConstancy),
            (Constancy { .. }, DoubleBlind) => Some(Self::DbConstancy),
            (Bsf, SingleBlind) => Some(Self::SbBsf),
            (Bsf, DoubleBlind) => Some(Self::DbBsf),
            (Average { .. }, SingleBlind) => Some(Self::SbAverage),
            (Average { .. }, DoubleBlind) => None,
        }
    }

    pub fn check_compatible(&self, spec: &MacroscopeSpec) -> Result<()> {
        if spec.blindness() != self.required_blindness() {
            return Err(mismatch(
                self.as_str(),
                format_args!(
                    "needs a {} macroscope, got {}",
                    self.required_blindness(),
                    spec.blindness()
                ),
            ));
        }
        if !self.accepts(spec.function()) {
            return Err(mismatch(
                self.as_str(),
                format_args!("does not compute {}", spec.function()),
            ));
        }
        Ok(())
    }

    /// Evaluates the cost formula without checking compatibility.
    pub fn formula_bits(&self, spec: &MacroscopeSpec) -> Result<usize> {
        let n = spec.n();
        let k = spec.k();
        let function = spec.function();
        Ok(match self {
            Self::SbGeneric => n * value_width(function)?,
            Self::DbGeneric => {
                let w = value_width(function)?;
                spec.structure()
                    .sets()
                    .iter()
                    .map(|s| n + s.len() * w)
                    .sum()
            }
            Self::SbConstancy => {
                let r = spec.structure().intersection_graph().component_count();
                r * ceil_log2(u64::from(alphabet(function)?)) as usize + k
            }
            Self::DbConstancy => k * ceil_log2(u64::from(alphabet(function)?) + 1) as usize,
            Self::DbBsf => 2 * k * bsf::index_width(n) as usize,
            Self::SbBsf => k * (bsf::payload_width(n) as usize + 2),
            Self::SbAverage => match function {
                TargetFunction::Average { epsilon } => {
                    k * average::quantizer_width(k, *epsilon)? as usize
                }
                other => return Err(mismatch(self.as_str(), format_args!("got {other}"))),
            },
        })
    }
}

impl fmt::Display for ProtocolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProtocolKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown protocol {s:?}")))
    }
}

impl Protocol for ProtocolKind {
    fn name(&self) -> String {
        String::from(self.as_str())
    }

    fn check_compatible(&self, spec: &MacroscopeSpec) -> Result<()> {
        ProtocolKind::check_compatible(self, spec)
    }

    fn bound_bits(&self, spec: &MacroscopeSpec) -> Result<usize> {
        self.formula_bits(spec)
    }

    fn encode(&self, view: &PlayerView<'_>) -> Result<BitString> {
        match self {
            Self::SbGeneric => generic::sb_encode(view),
            Self::DbGeneric => generic::db_encode(view),
            Self::SbConstancy => constancy::sb_encode(view),
            Self::DbConstancy => constancy::db_encode(view),
            Self::DbBsf => bsf::db_encode(view),
            Self::SbBsf => bsf::sb_encode(view),
            Self::SbAverage => average::encode(view),
        }
    }

    fn decode(&self, board: &Blackboard, view: &PlayerView<'_>) -> Result<Output> {
        match self {
            Self::SbGeneric => generic::sb_decode(board, view),
            Self::DbGeneric => generic::db_decode(board, view),
            Self::SbConstancy => constancy::sb_decode(board, view),
            Self::DbConstancy => constancy::db_decode(board, view),
            Self::DbBsf => bsf::db_decode(board, view),
            Self::SbBsf => bsf::sb_decode(board, view),
            Self::SbAverage => average::decode(board, view),
        }
    }
}

fn alphabet(function: &TargetFunction) -> Result<u32> {
    function
        .alphabet()
        .ok_or_else(|| Error::InputMismatch(format!("{function} has no finite alphabet")))
}

/// Bits per input value: `⌈log2 D⌉`, which is 1 for binary inputs.
pub fn value_width(function: &TargetFunction) -> Result<usize> {
    Ok(ceil_log2(u64::from(alphabet(function)?)) as usize)
}

/// Reads with player context attached to any failure.
pub(crate) fn read(
    reader: &mut BitReader<'_>,
    width: u32,
    view: &PlayerView<'_>,
    from: usize,
) -> Result<u64> {
    reader
        .read_uint(width)
        .map_err(|e| view.decode_error(&format!("reading message of player {}: {e}", from + 1)))
}

/// Fails if a message has unread bits.
pub(crate) fn finish(reader: &BitReader<'_>, view: &PlayerView<'_>, from: usize) -> Result<()> {
    match reader.remaining() {
        0 => Ok(()),
        extra => Err(view.decode_error(&format!(
            "message of player {} has {extra} unexpected trailing bits",
            from + 1
        ))),
    }
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;
    use crate::engine::{run_protocol, RunResult};
    use crate::model::{AllotmentStructure, InputVector};

    pub fn spec(
        function: TargetFunction,
        blindness: Blindness,
        n: usize,
        sets: &[&[usize]],
    ) -> MacroscopeSpec {
        let sets: Vec<Vec<usize>> = sets.iter().map(|s| s.to_vec()).collect();
        let s = AllotmentStructure::from_one_based(n, &sets).unwrap();
        MacroscopeSpec::new(function, s, blindness).unwrap()
    }

    pub fn run(p: ProtocolKind, spec: &MacroscopeSpec, x: &InputVector) -> RunResult {
        run_protocol(&p, spec, x).unwrap()
    }

    pub fn messages(r: &RunResult) -> Vec<String> {
        r.blackboard
            .entries()
            .iter()
            .map(alloc::string::ToString::to_string)
            .collect()
    }
}
