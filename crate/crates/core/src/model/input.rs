use alloc::format;
use alloc::vec::Vec;

use crate::{Error, Result};

/// A global input `x` of length `N`.
///
/// D-ary values use the alphabet `0..D`; files written with the 1-based
/// alphabet `1..=D` are shifted by the reader.
#[derive(Debug, Clone, PartialEq)]
pub enum InputVector {
    Binary(Vec<u32>),
    Dary { alphabet: u32, values: Vec<u32> },
    Real(Vec<f64>),
}

impl InputVector {
    pub fn binary(bits: Vec<u32>) -> Result<Self> {
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InputMismatch(format!("binary value {b}")));
        }
        Ok(Self::Binary(bits))
    }

    /// Parses a string such as `"0110"`.
    pub fn binary_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| {
                c.to_digit(2)
                    .ok_or_else(|| Error::InputMismatch(format!("not a bit: {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::Binary(bits))
    }

    pub fn dary(alphabet: u32, values: Vec<u32>) -> Result<Self> {
        if alphabet < 2 {
            return Err(Error::InvalidParameter(format!(
                "alphabet size must be at least 2, got {alphabet}"
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v >= alphabet) {
            return Err(Error::InputMismatch(format!(
                "value {v} outside 0..{alphabet}"
            )));
        }
        Ok(Self::Dary { alphabet, values })
    }

    pub fn real(values: Vec<f64>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InputMismatch(format!(
                "real value {v} outside [0,1]"
            )));
        }
        Ok(Self::Real(values))
    }

    pub fn len(&self) -> usize {
        match self {
            Self::Binary(v) => v.len(),
            Self::Dary { values, .. } => values.len(),
            Self::Real(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Alphabet size for discrete inputs (2 for binary).
    pub fn alphabet(&self) -> Option<u32> {
        match self {
            Self::Binary(_) => Some(2),
            Self::Dary { alphabet, .. } => Some(*alphabet),
            Self::Real(_) => None,
        }
    }

    pub fn discrete(&self) -> Option<&[u32]> {
        match self {
            Self::Binary(v) => Some(v),
            Self::Dary { values, .. } => Some(values),
            Self::Real(_) => None,
        }
    }

    pub fn reals(&self) -> Option<&[f64]> {
        match self {
            Self::Real(v) => Some(v),
            _ => None,
        }
    }
}

/// Every vector in `{0..alphabet}^n`, in counting order with position 1 as
/// the most significant digit. The position of a vector in this order is its
/// input id.
#[derive(Debug, Clone)]
pub struct DiscreteInputs {
    alphabet: u32,
    current: Option<Vec<u32>>,
}

impl DiscreteInputs {
    pub fn new(n: usize, alphabet: u32) -> Self {
        Self {
            alphabet,
            current: Some(alloc::vec![0; n]),
        }
    }
}

impl Iterator for DiscreteInputs {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        for digit in next.iter_mut().rev() {
            *digit += 1;
            if *digit < self.alphabet {
                self.current = Some(next);
                return Some(out);
            }
            *digit = 0;
        }
        Some(out)
    }
}

/// `alphabet^n`, or `None` on overflow.
pub fn input_space_size(n: usize, alphabet: u32) -> Option<u64> {
    u64::from(alphabet).checked_pow(u32::try_from(n).ok()?)
}
