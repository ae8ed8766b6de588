//! Simulation and analysis of *macroscopes*: a function over `N` inputs,
//! an allotment of those inputs among `k` players, and a simultaneous-message
//! blackboard protocol that lets every player learn the function value.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! - [`bits`]: fixed-width big-endian bitstrings, the unit of cost.
//! - [`model`]: allotment structures, intersection graphs, inputs, target
//!   functions and their direct evaluation.
//! - [`engine`]: player views under the single/double-blind rule, the
//!   blackboard, and [`engine::run_protocol`].
//! - [`protocols`]: the seven constructive protocols.
//! - [`search`]: exhaustive verification and minimum-cost protocol search on
//!   tiny instances.
#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bits;
pub mod engine;
mod error;
pub mod model;
pub mod protocols;
pub mod search;

pub use bits::{ceil_log2, decode_uint, encode_uint, BitReader, BitString};
pub use engine::{
    make_views, run_protocol, theoretical_bound, Blackboard, Output, PlayerView, Protocol,
    RunResult, ViewValues,
};
pub use error::{Error, Result};
pub use model::{
    eval_average, eval_bsf, eval_constancy, eval_parity, generate_structure, AllotmentStructure,
    Blindness, InputVector, IntersectionGraph, MacroscopeSpec, StructureKind, TargetFunction,
};
pub use protocols::ProtocolKind;
pub use search::{
    exhaustive_verify, min_cost_search, SearchResult, SearchSpace, VerifyReport, DEFAULT_CEILING,
};
