//! Allotment structures, inputs and target functions.

mod function;
mod generate;
mod graph;
mod input;
mod structure;

use alloc::format;
use core::fmt;
use core::str::FromStr;

pub use function::{eval_average, eval_bsf, eval_constancy, eval_parity, TargetFunction};
pub use generate::{generate_structure, StructureKind};
pub use graph::IntersectionGraph;
pub use input::{input_space_size, DiscreteInputs, InputVector};
pub use structure::AllotmentStructure;

use crate::{Error, Result};

/// How much of the allotment structure the players know.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Blindness {
    /// Everyone knows the whole structure.
    SingleBlind,
    /// A player knows only its own set (and the sizes `N` and `k`).
    DoubleBlind,
}

impl Blindness {
    pub fn short_name(&self) -> &'static str {
        match self {
            Self::SingleBlind => "sb",
            Self::DoubleBlind => "db",
        }
    }
}

impl fmt::Display for Blindness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Blindness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sb" | "single-blind" | "single_blind" => Ok(Self::SingleBlind),
            "db" | "double-blind" | "double_blind" => Ok(Self::DoubleBlind),
            other => Err(Error::InvalidParameter(format!(
                "unknown blindness {other:?} (expected sb or db)"
            ))),
        }
    }
}

/// A target function paired with a covering allotment structure and a
/// blindness mode.
#[derive(Debug, Clone, PartialEq)]
pub struct MacroscopeSpec {
    function: TargetFunction,
    structure: AllotmentStructure,
    blindness: Blindness,
}

impl MacroscopeSpec {
    /// Validates function parameters and covering, and rejects empty sets for
    /// Constancy and BSF.
    pub fn new(
        function: TargetFunction,
        structure: AllotmentStructure,
        blindness: Blindness,
    ) -> Result<Self> {
        function.validate()?;
        structure.check_covering()?;
        if function.needs_nonempty_sets() {
            if let Some(p) = structure.sets().iter().position(|s| s.is_empty()) {
                return Err(Error::EmptySet { player: p + 1 });
            }
        }
        Ok(Self {
            function,
            structure,
            blindness,
        })
    }

    pub fn function(&self) -> &TargetFunction {
        &self.function
    }

    pub fn structure(&self) -> &AllotmentStructure {
        &self.structure
    }

    pub fn blindness(&self) -> Blindness {
        self.blindness
    }

    pub fn n(&self) -> usize {
        self.structure.n()
    }

    pub fn k(&self) -> usize {
        self.structure.k()
    }

    /// Checks that `x` has length `N` and the kind the function expects.
    pub fn check_input(&self, x: &InputVector) -> Result<()> {
        if x.len() != self.n() {
            return Err(Error::InputMismatch(format!(
                "input has length {}, structure has N={}",
                x.len(),
                self.n()
            )));
        }
        match (self.function, x) {
            (TargetFunction::Average { .. }, InputVector::Real(_)) => Ok(()),
            (TargetFunction::Parity | TargetFunction::Bsf, InputVector::Binary(_)) => Ok(()),
            (
                TargetFunction::Parity | TargetFunction::Bsf,
                InputVector::Dary { alphabet: 2, .. },
            ) => Ok(()),
            (TargetFunction::Constancy { d }, x) if x.alphabet() == Some(d) => Ok(()),
            (f, x) => Err(Error::InputMismatch(format!(
                "{f} cannot take a {} input",
                match x {
                    InputVector::Binary(_) => "binary",
                    InputVector::Dary { .. } => "d-ary",
                    InputVector::Real(_) => "real",
                }
            ))),
        }
    }

    /// Wraps discrete values in the input kind this spec expects.
    pub fn discrete_input(&self, values: alloc::vec::Vec<u32>) -> Result<InputVector> {
        match self.function {
            TargetFunction::Parity | TargetFunction::Bsf => InputVector::binary(values),
            TargetFunction::Constancy { d } => InputVector::dary(d, values),
            TargetFunction::Average { .. } => {
                Err(Error::InputMismatch("average takes real inputs".into()))
            }
        }
    }
}
