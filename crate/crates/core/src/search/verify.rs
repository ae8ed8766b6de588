use alloc::string::String;
use alloc::vec::Vec;

use crate::engine::{run_protocol, Output, Protocol};
use crate::model::{input_space_size, DiscreteInputs, MacroscopeSpec};
use crate::{Error, Result};

/// A player whose output disagreed with the oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyFailure {
    pub input_id: u64,
    pub input: Vec<u32>,
    /// 0-based.
    pub player: usize,
    pub got: Output,
    pub expected: Output,
}

/// A run whose measured cost differed from the protocol's bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostViolation {
    pub input_id: u64,
    pub cost_bits: usize,
    pub bound_bits: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub protocol: String,
    pub inputs_checked: u64,
    pub failures: Vec<VerifyFailure>,
    pub cost_violations: Vec<CostViolation>,
    /// Largest cost seen on any run.
    pub max_cost_bits: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cost_violations.is_empty()
    }
}

/// Runs `protocol` on every input of `spec`'s discrete alphabet and compares
/// every player's output with the oracle and every cost with the bound.
pub fn exhaustive_verify(
    protocol: &dyn Protocol,
    spec: &MacroscopeSpec,
    ceiling: u64,
) -> Result<VerifyReport> {
    let alphabet = spec.function().alphabet().ok_or_else(|| {
        Error::InvalidParameter(alloc::format!(
            "{} has continuous inputs and cannot be enumerated",
            spec.function()
        ))
    })?;
    protocol.check_compatible(spec)?;
    let size = input_space_size(spec.n(), alphabet).unwrap_or(u64::MAX);
    if size > ceiling {
        return Err(Error::CeilingExceeded {
            size: u128::from(size),
            ceiling,
        });
    }

    let mut report = VerifyReport {
        protocol: protocol.name(),
        inputs_checked: 0,
        failures: Vec::new(),
        cost_violations: Vec::new(),
        max_cost_bits: 0,
    };
    for (input_id, values) in DiscreteInputs::new(spec.n(), alphabet).enumerate() {
        let input_id = input_id as u64;
        let x = spec.discrete_input(values.clone())?;
        let run = run_protocol(protocol, spec, &x)?;
        for (player, got) in run.outputs.iter().enumerate() {
            if *got != run.oracle {
                report.failures.push(VerifyFailure {
                    input_id,
                    input: values.clone(),
                    player,
                    got: *got,
                    expected: run.oracle,
                });
            }
        }
        if run.cost_bits != run.bound_bits {
            report.cost_violations.push(CostViolation {
                input_id,
                cost_bits: run.cost_bits,
                bound_bits: run.bound_bits,
            });
        }
        report.max_cost_bits = report.max_cost_bits.max(run.cost_bits);
        report.inputs_checked += 1;
    }
    Ok(report)
}
