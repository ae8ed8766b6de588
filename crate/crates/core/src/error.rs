use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong while building or running a macroscope.
///
/// Positions and players are reported 1-based, the way users write them.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An allotment set mentions a position outside `1..=n`.
    IndexOutOfRange {
        index: usize,
        n: usize,
    },
    /// Position `index` (1-based) is in no allotment set.
    Uncovered {
        index: usize,
    },
    /// Player (1-based) holds no inputs but the function requires it.
    EmptySet {
        player: usize,
    },
    InvalidParameter(String),
    InputMismatch(String),
    /// `value` does not fit in `width` bits.
    Overflow {
        value: u64,
        width: u32,
    },
    /// A read ran past the end of a message.
    Truncated {
        needed: u32,
        remaining: usize,
    },
    ProtocolMismatch {
        protocol: String,
        reason: String,
    },
    /// A decoder could not produce an output; always a protocol bug.
    Decode {
        player: usize,
        reason: String,
    },
    CeilingExceeded {
        size: u128,
        ceiling: u64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::IndexOutOfRange { index, n } => {
                write!(f, "index {index} is outside 1..={n}")
            }
            Error::Uncovered { index } => {
                write!(
                    f,
                    "covering violated: index {index} belongs to no allotment set"
                )
            }
            Error::EmptySet { player } => {
                write!(f, "player {player} has an empty allotment set")
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::InputMismatch(msg) => write!(f, "input mismatch: {msg}"),
            Error::Overflow { value, width } => {
                write!(f, "value {value} does not fit in {width} bits")
            }
            Error::Truncated { needed, remaining } => {
                write!(
                    f,
                    "message truncated: needed {needed} bits, {remaining} remaining"
                )
            }
            Error::ProtocolMismatch { protocol, reason } => {
                write!(f, "protocol {protocol} cannot run here: {reason}")
            }
            Error::Decode { player, reason } => {
                write!(f, "player {player} failed to decode: {reason}")
            }
            Error::CeilingExceeded { size, ceiling } => write!(
                f,
                "enumeration size {size} exceeds the ceiling of {ceiling} evaluations; \
                 use smaller parameters or raise MACROSCOPE_CEILING"
            ),
        }
    }
}

impl core::error::Error for Error {}
