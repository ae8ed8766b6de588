//! Simultaneous-message execution.
//!
//! [`run_protocol`] builds one [`PlayerView`] per player, calls the encoder
//! once per view, assembles the [`Blackboard`], and calls the decoder once per
//! player on the finished blackboard plus that player's own view. Encoders
//! never see the blackboard, so no message can depend on another.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::BitString;
use crate::model::{AllotmentStructure, Blindness, InputVector, MacroscopeSpec, TargetFunction};
use crate::protocols::ProtocolKind;
use crate::{Error, Result};

/// A player's own inputs, aligned with [`PlayerView::own_indices`].
#[derive(Debug, Clone, PartialEq)]
pub enum ViewValues {
    Discrete(Vec<u32>),
    Real(Vec<f64>),
}

/// Everything one player is allowed to see.
///
/// A double-blind view holds no reference to the structure at all, only the
/// player's own slice of it plus the global sizes `n` and `k`.
#[derive(Debug, Clone)]
pub struct PlayerView<'a> {
    player: usize,
    n: usize,
    k: usize,
    own_indices: &'a [usize],
    values: ViewValues,
    function: &'a TargetFunction,
    structure: Option<&'a AllotmentStructure>,
}

impl<'a> PlayerView<'a> {
    /// Builds a view directly; [`make_views`] is the usual entry point.
    pub fn new(
        player: usize,
        n: usize,
        k: usize,
        own_indices: &'a [usize],
        values: ViewValues,
        function: &'a TargetFunction,
        structure: Option<&'a AllotmentStructure>,
    ) -> Self {
        Self {
            player,
            n,
            k,
            own_indices,
            values,
            function,
            structure,
        }
    }

    /// 0-based player id.
    pub fn player(&self) -> usize {
        self.player
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// 0-based positions this player holds, ascending.
    pub fn own_indices(&self) -> &'a [usize] {
        self.own_indices
    }

    pub fn values(&self) -> &ViewValues {
        &self.values
    }

    pub fn function(&self) -> &'a TargetFunction {
        self.function
    }

    /// The full structure; `None` in double-blind views.
    pub fn structure(&self) -> Option<&'a AllotmentStructure> {
        self.structure
    }

    pub fn blindness(&self) -> Blindness {
        if self.structure.is_some() {
            Blindness::SingleBlind
        } else {
            Blindness::DoubleBlind
        }
    }

    pub fn discrete(&self) -> Result<&[u32]> {
        match &self.values {
            ViewValues::Discrete(v) => Ok(v),
            ViewValues::Real(_) => Err(self.decode_error("expected discrete values")),
        }
    }

    pub fn reals(&self) -> Result<&[f64]> {
        match &self.values {
            ViewValues::Real(v) => Ok(v),
            ViewValues::Discrete(_) => Err(self.decode_error("expected real values")),
        }
    }

    /// The structure, or an error for protocols that need single-blind.
    pub fn require_structure(&self) -> Result<&'a AllotmentStructure> {
        self.structure
            .ok_or_else(|| self.decode_error("single-blind protocol given a double-blind view"))
    }

    pub(crate) fn decode_error(&self, reason: &str) -> Error {
        Error::Decode {
            player: self.player + 1,
            reason: String::from(reason),
        }
    }
}

/// One message per player, in player order. Message lengths are known to
/// every reader and are not charged.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Blackboard {
    entries: Vec<BitString>,
}

impl Blackboard {
    pub fn new(entries: Vec<BitString>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[BitString] {
        &self.entries
    }

    /// Message of the 0-based `player`.
    pub fn message(&self, player: usize) -> &BitString {
        &self.entries[player]
    }

    pub fn total_bits(&self) -> usize {
        self.entries.iter().map(BitString::len).sum()
    }
}

impl fmt::Display for Blackboard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, msg) in self.entries.iter().enumerate() {
            if p > 0 {
                f.write_str(" ")?;
            }
            write!(f, "P{}:{}", p + 1, msg)?;
        }
        Ok(())
    }
}

/// A decoded function value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Output {
    Bit(u8),
    Real(f64),
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Output::Bit(b) => write!(f, "{b}"),
            Output::Real(v) => write!(f, "{v}"),
        }
    }
}

/// A simultaneous-message protocol: one encoder and one decoder, shared by
/// all players and parameterised by the view.
pub trait Protocol {
    fn name(&self) -> String;

    fn check_compatible(&self, spec: &MacroscopeSpec) -> Result<()>;

    /// Cost the protocol promises on `spec`, in bits.
    fn bound_bits(&self, spec: &MacroscopeSpec) -> Result<usize>;

    fn encode(&self, view: &PlayerView<'_>) -> Result<BitString>;

    fn decode(&self, board: &Blackboard, view: &PlayerView<'_>) -> Result<Output>;
}

/// Outcome of one execution.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub blackboard: Blackboard,
    pub outputs: Vec<Output>,
    pub cost_bits: usize,
    pub bound_bits: usize,
    pub oracle: Output,
    /// Exact match for Boolean functions; within epsilon for Average. Every
    /// player must pass.
    pub correct: bool,
}

impl RunResult {
    /// Largest `|output - oracle|` over players (0 or 1 for Boolean outputs).
    pub fn max_abs_error(&self) -> f64 {
        self.outputs
            .iter()
            .map(|o| output_distance(o, &self.oracle))
            .fold(0.0, f64::max)
    }
}

fn output_distance(a: &Output, b: &Output) -> f64 {
    match (a, b) {
        (Output::Bit(x), Output::Bit(y)) => f64::from(u8::from(x != y)),
        (Output::Real(x), Output::Real(y)) => {
            let d = x - y;
            if d < 0.0 {
                -d
            } else {
                d
            }
        }
        _ => f64::INFINITY,
    }
}

/// Views for every player under the spec's blindness rule.
pub fn make_views<'a>(spec: &'a MacroscopeSpec, x: &InputVector) -> Result<Vec<PlayerView<'a>>> {
    spec.check_input(x)?;
    let structure = spec.structure();
    let knowledge = match spec.blindness() {
        Blindness::SingleBlind => Some(structure),
        Blindness::DoubleBlind => None,
    };
    Ok((0..structure.k())
        .map(|p| {
            let own = structure.set(p);
            let values = match x {
                InputVector::Real(v) => ViewValues::Real(own.iter().map(|&i| v[i]).collect()),
                _ => {
                    let v = x.discrete().expect("non-real inputs are discrete");
                    ViewValues::Discrete(own.iter().map(|&i| v[i]).collect())
                }
            };
            PlayerView::new(
                p,
                structure.n(),
                structure.k(),
                own,
                values,
                spec.function(),
                knowledge,
            )
        })
        .collect())
}

/// Runs `protocol` on `spec` with input `x`.
pub fn run_protocol(
    protocol: &dyn Protocol,
    spec: &MacroscopeSpec,
    x: &InputVector,
) -> Result<RunResult> {
    protocol.check_compatible(spec)?;
    let views = make_views(spec, x)?;
    let messages = views
        .iter()
        .map(|v| protocol.encode(v))
        .collect::<Result<Vec<_>>>()?;
    let blackboard = Blackboard::new(messages);
    let outputs = views
        .iter()
        .map(|v| protocol.decode(&blackboard, v))
        .collect::<Result<Vec<_>>>()?;
    let oracle = spec.function().evaluate(x)?;
    let correct = match (spec.function(), oracle) {
        (TargetFunction::Average { epsilon }, Output::Real(_)) => outputs
            .iter()
            .all(|o| output_distance(o, &oracle) <= *epsilon),
        _ => outputs.iter().all(|o| *o == oracle),
    };
    Ok(RunResult {
        cost_bits: blackboard.total_bits(),
        bound_bits: protocol.bound_bits(spec)?,
        blackboard,
        outputs,
        oracle,
        correct,
    })
}

/// Cost formula of one of the seven protocols on `spec`.
pub fn theoretical_bound(protocol: ProtocolKind, spec: &MacroscopeSpec) -> Result<usize> {
    protocol.check_compatible(spec)?;
    protocol.formula_bits(spec)
}

pub(crate) fn mismatch(protocol: &str, reason: impl fmt::Display) -> Error {
    Error::ProtocolMismatch {
        protocol: String::from(protocol),
        reason: format!("{reason}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::AllotmentStructure;
    use alloc::vec;

    fn spec(blindness: Blindness) -> MacroscopeSpec {
        let s = AllotmentStructure::from_one_based(3, &[vec![1, 2], vec![2, 3]]).unwrap();
        MacroscopeSpec::new(TargetFunction::Parity, s, blindness).unwrap()
    }

    #[test]
    fn single_blind_views_carry_structure() {
        let spec = spec(Blindness::SingleBlind);
        let x = InputVector::binary_str("010").unwrap();
        let views = make_views(&spec, &x).unwrap();
        assert_eq!(views.len(), 2);
        let v = &views[1];
        assert_eq!(v.own_indices(), &[1, 2]);
        assert_eq!(v.values(), &ViewValues::Discrete(vec![1, 0]));
        assert_eq!(v.structure().unwrap().k(), 2);
        assert_eq!(v.blindness(), Blindness::SingleBlind);
    }

    #[test]
    fn double_blind_views_hide_structure() {
        let spec = spec(Blindness::DoubleBlind);
        let x = InputVector::binary_str("010").unwrap();
        let views = make_views(&spec, &x).unwrap();
        let v = &views[1];
        assert_eq!(v.own_indices(), &[1, 2]);
        assert_eq!(v.values(), &ViewValues::Discrete(vec![1, 0]));
        assert!(v.structure().is_none());
        assert_eq!((v.n(), v.k()), (3, 2));
        assert!(v.require_structure().is_err());
    }

    #[test]
    fn lone_player_sees_everything() {
        let s = AllotmentStructure::from_one_based(4, &[vec![1, 2, 3, 4]]).unwrap();
        let spec = MacroscopeSpec::new(TargetFunction::Parity, s, Blindness::SingleBlind).unwrap();
        let x = InputVector::binary_str("1101").unwrap();
        let views = make_views(&spec, &x).unwrap();
        assert_eq!(views[0].discrete().unwrap(), &[1, 1, 0, 1]);
    }

    #[test]
    fn views_reject_bad_inputs() {
        let spec = spec(Blindness::SingleBlind);
        assert!(make_views(&spec, &InputVector::binary_str("01").unwrap()).is_err());
        assert!(make_views(&spec, &InputVector::real(vec![0.0; 3]).unwrap()).is_err());
    }

    #[test]
    fn blackboard_cost_and_display() {
        let b = Blackboard::new(vec![
            "01".parse().unwrap(),
            BitString::new(),
            "1".parse().unwrap(),
        ]);
        assert_eq!(b.total_bits(), 3);
        assert_eq!(b.to_string(), "P1:01 P2: P3:1");
    }
}
