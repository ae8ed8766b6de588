//! Runs a search witness as an ordinary protocol.

use alloc::string::String;
use alloc::vec::Vec;

use super::{assignment_id, SearchSpace, Witness};
use crate::bits::BitString;
use crate::engine::{mismatch, Blackboard, Output, PlayerView, Protocol};
use crate::model::{AllotmentStructure, Blindness, DiscreteInputs, MacroscopeSpec, TargetFunction};
use crate::{Error, Result};

/// A table-driven protocol. Each player looks up its label; readers decide by
/// checking that every input consistent with the board and their own values
/// has the same function value.
#[derive(Debug, Clone)]
pub struct WitnessProtocol {
    function: TargetFunction,
    blindness: Blindness,
    family: Vec<AllotmentStructure>,
    witness: Witness,
}

impl WitnessProtocol {
    pub fn new(space: &SearchSpace, witness: Witness) -> Result<Self> {
        if witness.lengths.len() != space.structure().k() {
            return Err(Error::InvalidParameter(alloc::format!(
                "witness has {} players, structure has {}",
                witness.lengths.len(),
                space.structure().k()
            )));
        }
        Ok(Self {
            function: *space.function(),
            blindness: space.blindness(),
            family: space.family()?,
            witness,
        })
    }

    pub fn witness(&self) -> &Witness {
        &self.witness
    }

    fn alphabet(&self) -> u32 {
        self.function.alphabet().unwrap_or(2)
    }

    fn label(&self, player: usize, own_set: &[usize], values: &[u32]) -> Option<u64> {
        let table = self.witness.tables[player]
            .iter()
            .find(|t| t.own_set == own_set)?;
        table
            .labels
            .get(assignment_id(values, self.alphabet()))
            .copied()
    }

    fn labels_of(&self, structure: &AllotmentStructure, x: &[u32]) -> Option<Vec<u64>> {
        (0..structure.k())
            .map(|p| {
                let values: Vec<u32> = structure.set(p).iter().map(|&i| x[i]).collect();
                self.label(p, structure.set(p), &values)
            })
            .collect()
    }
}

impl Protocol for WitnessProtocol {
    fn name(&self) -> String {
        alloc::format!("witness[{}]", self.witness.cost())
    }

    fn check_compatible(&self, spec: &MacroscopeSpec) -> Result<()> {
        let name = self.name();
        if *spec.function() != self.function {
            return Err(mismatch(&name, "witness was found for another function"));
        }
        if spec.blindness() != self.blindness {
            return Err(mismatch(&name, "witness was found for another blindness"));
        }
        if !self.family.iter().any(|s| s == spec.structure()) {
            return Err(mismatch(&name, "structure is outside the searched family"));
        }
        Ok(())
    }

    fn bound_bits(&self, spec: &MacroscopeSpec) -> Result<usize> {
        self.check_compatible(spec)?;
        Ok(self.witness.cost())
    }

    fn encode(&self, view: &PlayerView<'_>) -> Result<BitString> {
        let label = self
            .label(view.player(), view.own_indices(), view.discrete()?)
            .ok_or_else(|| view.decode_error("own set not in witness"))?;
        crate::bits::encode_uint(label, self.witness.lengths[view.player()])
    }

    fn decode(&self, board: &Blackboard, view: &PlayerView<'_>) -> Result<Output> {
        let mut posted = Vec::with_capacity(board.entries().len());
        for (p, &b) in self.witness.lengths.iter().enumerate() {
            let mut reader = board.message(p).reader();
            posted.push(crate::protocols::read(&mut reader, b, view, p)?);
            crate::protocols::finish(&reader, view, p)?;
        }
        let own = view.own_indices();
        let own_values = view.discrete()?;
        let candidates: Vec<&AllotmentStructure> = match view.structure() {
            Some(s) => alloc::vec![s],
            None => self
                .family
                .iter()
                .filter(|s| s.set(view.player()) == own)
                .collect(),
        };
        let mut answer = None;
        for x in DiscreteInputs::new(view.n(), self.alphabet()) {
            if own.iter().zip(own_values).any(|(&i, &v)| x[i] != v) {
                continue;
            }
            for s in &candidates {
                if self.labels_of(s, &x).as_deref() != Some(posted.as_slice()) {
                    continue;
                }
                let value = self.function.eval_discrete(&x)?;
                match answer {
                    None => answer = Some(value),
                    Some(a) if a != value => {
                        return Err(view.decode_error("board does not determine the answer"))
                    }
                    _ => {}
                }
            }
        }
        answer
            .map(Output::Bit)
            .ok_or_else(|| view.decode_error("no input matches the board"))
    }
}
