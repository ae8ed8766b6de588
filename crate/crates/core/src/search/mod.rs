//! Brute force at desk scale: run a protocol on every input, or enumerate
//! every simultaneous-message protocol within a bit budget to find the
//! cheapest correct one.

mod min_cost;
mod verify;
mod witness;

pub use min_cost::{min_cost_search, MessageTable, SearchResult, SearchSpace, Witness};
pub use verify::{exhaustive_verify, CostViolation, VerifyFailure, VerifyReport};
pub use witness::WitnessProtocol;

/// Default limit on enumerated evaluations.
pub const DEFAULT_CEILING: u64 = 1 << 20;

/// Index of `values` in counting order over `alphabet`, first entry most
/// significant.
pub(crate) fn assignment_id(values: &[u32], alphabet: u32) -> usize {
    values
        .iter()
        .fold(0usize, |acc, &v| acc * alphabet as usize + v as usize)
}
