//! Fixed-width bitstrings.
//!
//! Every message on the blackboard is a [`BitString`]; its length is the cost
//! the player is charged. Integers are written big-endian in a fixed width.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// `⌈log2 q⌉`, with `⌈log2 0⌉ = ⌈log2 1⌉ = 0`.
pub fn ceil_log2(q: u64) -> u32 {
    if q <= 1 {
        0
    } else {
        u64::BITS - (q - 1).leading_zeros()
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn push_bit(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    /// Appends `value` as a big-endian integer of exactly `width` bits.
    pub fn push_uint(&mut self, value: u64, width: u32) -> Result<()> {
        if width < u64::BITS && value >> width != 0 {
            return Err(Error::Overflow { value, width });
        }
        for shift in (0..width).rev() {
            let bit = shift < u64::BITS && (value >> shift) & 1 == 1;
            self.bits.push(bit);
        }
        Ok(())
    }

    pub fn extend_from(&mut self, other: &BitString) {
        self.bits.extend_from_slice(&other.bits);
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn reader(&self) -> BitReader<'_> {
        BitReader {
            bits: &self.bits,
            pos: 0,
        }
    }
}

impl From<Vec<bool>> for BitString {
    fn from(bits: Vec<bool>) -> Self {
        Self { bits }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString(\"{self}\")")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidParameter(alloc::format!(
                    "bitstring contains {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitString::from)
    }
}

/// Sequential cursor over a message.
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bits: &'a [bool],
    pos: usize,
}

impl BitReader<'_> {
    pub fn remaining(&self) -> usize {
        self.bits.len() - self.pos
    }

    pub fn read_bit(&mut self) -> Result<bool> {
        let bit = *self.bits.get(self.pos).ok_or(Error::Truncated {
            needed: 1,
            remaining: 0,
        })?;
        self.pos += 1;
        Ok(bit)
    }

    pub fn read_uint(&mut self, width: u32) -> Result<u64> {
        if width > u64::BITS {
            return Err(Error::InvalidParameter(alloc::format!(
                "cannot read {width}-bit integers"
            )));
        }
        if self.remaining() < width as usize {
            return Err(Error::Truncated {
                needed: width,
                remaining: self.remaining(),
            });
        }
        let mut value = 0u64;
        for _ in 0..width {
            value = (value << 1) | u64::from(self.bits[self.pos]);
            self.pos += 1;
        }
        Ok(value)
    }
}

/// Big-endian fixed-width encoding of `value`.
pub fn encode_uint(value: u64, width: u32) -> Result<BitString> {
    let mut out = BitString::new();
    out.push_uint(value, width)?;
    Ok(out)
}

/// Inverse of [`encode_uint`]; the string must be exactly `width` bits long.
pub fn decode_uint(bits: &BitString, width: u32) -> Result<u64> {
    if bits.len() != width as usize {
        return Err(Error::InputMismatch(alloc::format!(
            "expected {width} bits, got {}",
            bits.len()
        )));
    }
    bits.reader().read_uint(width)
}
