use alloc::format;
use core::fmt;

use super::InputVector;
use crate::engine::Output;
use crate::{Error, Result};

/// The target function of a macroscope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TargetFunction {
    Parity,
    /// All-equal test over the alphabet `0..d`.
    Constancy {
        d: u32,
    },
    /// Boolean step function: a block of 0s followed by a block of 1s.
    Bsf,
    /// Every player must learn the mean within `epsilon`.
    Average {
        epsilon: f64,
    },
}

impl TargetFunction {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Parity => "parity",
            Self::Constancy { .. } => "constancy",
            Self::Bsf => "bsf",
            Self::Average { .. } => "average",
        }
    }

    pub fn is_boolean(&self) -> bool {
        !matches!(self, Self::Average { .. })
    }

    /// Alphabet size of the inputs, `None` for real inputs.
    pub fn alphabet(&self) -> Option<u32> {
        match self {
            Self::Parity | Self::Bsf => Some(2),
            Self::Constancy { d } => Some(*d),
            Self::Average { .. } => None,
        }
    }

    /// Whether every player must hold at least one input.
    pub fn needs_nonempty_sets(&self) -> bool {
        matches!(self, Self::Constancy { .. } | Self::Bsf)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Constancy { d } if d < 2 => Err(Error::InvalidParameter(format!(
                "constancy needs D >= 2, got {d}"
            ))),
            Self::Average { epsilon } if !(epsilon > 0.0 && epsilon <= 1.0) => Err(
                Error::InvalidParameter(format!("epsilon must lie in (0, 1], got {epsilon}")),
            ),
            _ => Ok(()),
        }
    }

    /// Direct evaluation of a Boolean function on discrete values.
    pub fn eval_discrete(&self, x: &[u32]) -> Result<u8> {
        match self {
            Self::Parity => Ok(eval_parity(x)),
            Self::Constancy { .. } => Ok(eval_constancy(x)),
            Self::Bsf => Ok(eval_bsf(x)),
            Self::Average { .. } => Err(Error::InputMismatch(
                "average is not a Boolean function".into(),
            )),
        }
    }

    /// Direct (oracle) evaluation.
    pub fn evaluate(&self, x: &InputVector) -> Result<Output> {
        match (self, x) {
            (Self::Average { .. }, InputVector::Real(v)) => Ok(Output::Real(eval_average(v))),
            (Self::Average { .. }, _) => {
                Err(Error::InputMismatch("average needs real inputs".into()))
            }
            (_, x) => {
                let values = x.discrete().ok_or_else(|| {
                    Error::InputMismatch(format!("{} needs discrete inputs", self.name()))
                })?;
                self.eval_discrete(values).map(Output::Bit)
            }
        }
    }
}

impl fmt::Display for TargetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Constancy { d } => write!(f, "constancy(D={d})"),
            Self::Average { epsilon } => write!(f, "average(eps={epsilon})"),
            other => f.write_str(other.name()),
        }
    }
}

/// 1 iff an odd number of inputs are 1.
pub fn eval_parity(x: &[u32]) -> u8 {
    (x.iter().filter(|&&b| b == 1).count() % 2) as u8
}

/// 1 iff all coordinates are equal (vacuously true for length 0 or 1).
pub fn eval_constancy(x: &[u32]) -> u8 {
    u8::from(x.windows(2).all(|w| w[0] == w[1]))
}

/// 1 iff `x` is a run of 0s followed by a run of 1s; constants count.
pub fn eval_bsf(x: &[u32]) -> u8 {
    u8::from(x.windows(2).all(|w| w[0] <= w[1]))
}

pub fn eval_average(x: &[f64]) -> f64 {
    if x.is_empty() {
        return 0.0;
    }
    x.iter().sum::<f64>() / x.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn bits(s: &str) -> Vec<u32> {
        s.chars().map(|c| c.to_digit(2).unwrap()).collect()
    }

    /// Direct reading of the step definition: some i in 0..=N with
    /// x_j = 0 for j <= i and x_j = 1 for j > i.
    fn bsf_by_definition(x: &[u32]) -> u8 {
        let n = x.len();
        u8::from((0..=n).any(|i| (0..n).all(|j| x[j] == u32::from(j >= i))))
    }

    #[test]
    fn parity_examples() {
        assert_eq!(eval_parity(&bits("101")), 0);
        assert_eq!(eval_parity(&bits("100")), 1);
        assert_eq!(eval_parity(&bits("0000000")), 0);
    }

    #[test]
    fn constancy_examples() {
        assert_eq!(eval_constancy(&[2, 2, 2]), 1);
        assert_eq!(eval_constancy(&[2, 1, 2]), 0);
        assert_eq!(eval_constancy(&[5]), 1);
    }

    #[test]
    fn bsf_examples() {
        assert_eq!(eval_bsf(&bits("000111")), 1);
        // tail ...,1,0,1 is not a step
        assert_eq!(eval_bsf(&bits("0001101")), 0);
        assert_eq!(eval_bsf(&bits("0000")), 1);
        assert_eq!(eval_bsf(&bits("1111")), 1);
    }

    #[test]
    fn bsf_matches_definition_exhaustively() {
        for n in 0..=10 {
            for id in 0u32..(1 << n) {
                let x: Vec<u32> = (0..n).rev().map(|s| (id >> s) & 1).collect();
                assert_eq!(eval_bsf(&x), bsf_by_definition(&x), "{x:?}");
            }
        }
    }

    #[test]
    fn average_examples() {
        assert_eq!(eval_average(&[0.5, 0.25]), 0.375);
        assert_eq!(eval_average(&[0.0; 4]), 0.0);
        assert_eq!(eval_average(&[1.0; 7]), 1.0);
    }

    #[test]
    fn parameter_validation() {
        assert!(TargetFunction::Average { epsilon: 0.0 }.validate().is_err());
        assert!(TargetFunction::Average { epsilon: 1.5 }.validate().is_err());
        assert!(TargetFunction::Average { epsilon: 1.0 }.validate().is_ok());
        assert!(TargetFunction::Constancy { d: 1 }.validate().is_err());
    }
}
