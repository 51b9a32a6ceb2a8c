//! Fixed-length binary words.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Longest supported word.
pub const MAX_BITS: usize = 64;

/// A binary word of 1..=64 bits, stored most-significant-bit first.
///
/// The printable form is a 0/1 string of exactly `len` characters whose
/// first character is the most significant bit, so the derived ordering on
/// equal-length words is lexicographic on the string.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: u8,
    bits: u64,
}

impl BitVector {
    pub fn new(len: usize, bits: u64) -> Result<Self> {
        if len == 0 || len > MAX_BITS {
            return Err(Error::InvalidParams(format!("bit length {len} not in 1..=64")));
        }
        if len < 64 && bits >> len != 0 {
            return Err(Error::InvalidParams(format!(
                "value {bits:#x} does not fit in {len} bits"
            )));
        }
        Ok(Self { len: len as u8, bits })
    }

    pub fn zero(len: usize) -> Result<Self> {
        Self::new(len, 0)
    }

    pub fn parse(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > MAX_BITS {
            return Err(Error::BadBitString(s.to_string()));
        }
        let mut bits = 0u64;
        for c in s.chars() {
            bits = (bits << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(Error::BadBitString(s.to_string())),
                };
        }
        Ok(Self { len: s.len() as u8, bits })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Hamming distance. Both words must have the same length.
    #[inline]
    pub fn hamming(&self, other: &Self) -> u32 {
        debug_assert_eq!(self.len, other.len);
        (self.bits ^ other.bits).count_ones()
    }

    #[inline]
    pub fn xor(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        Self { len: self.len, bits: self.bits ^ other.bits }
    }

    /// Flips the bits selected by `mask` (bit 0 = least significant = last character).
    #[inline]
    pub fn flip(&self, mask: u64) -> Self {
        Self { len: self.len, bits: (self.bits ^ mask) & self.full_mask() }
    }

    /// Appends `extra` zero bits at the end of the word.
    pub fn pad_zeros(&self, extra: usize) -> Result<Self> {
        let len = self.len() + extra;
        if len > MAX_BITS {
            return Err(Error::InvalidParams(format!("padded length {len} exceeds 64")));
        }
        Ok(Self { len: len as u8, bits: self.bits << extra })
    }

    /// Bit at string position `pos` (0 = first character).
    pub fn bit(&self, pos: usize) -> bool {
        debug_assert!(pos < self.len());
        (self.bits >> (self.len() - 1 - pos)) & 1 == 1
    }

    fn full_mask(&self) -> u64 {
        if self.len == 64 {
            u64::MAX
        } else {
            (1u64 << self.len) - 1
        }
    }

    /// All words of length `len` in ascending order.
    pub fn all(len: usize) -> Result<Vec<Self>> {
        if len == 0 || len > 24 {
            return Err(Error::InvalidParams(format!("cannot list all words of length {len}")));
        }
        Ok((0..1u64 << len).map(|bits| Self { len: len as u8, bits }).collect())
    }

    /// Every word within Hamming distance `radius` of `self`, ascending.
    pub fn hamming_ball(&self, radius: usize) -> Vec<Self> {
        let n = self.len();
        let radius = radius.min(n);
        let mut out = Vec::new();
        let mut positions = Vec::with_capacity(radius);
        fn rec(
            center: &BitVector,
            n: usize,
            start: usize,
            left: usize,
            positions: &mut Vec<usize>,
            out: &mut Vec<BitVector>,
        ) {
            let mask = positions.iter().fold(0u64, |m, &p| m | (1u64 << p));
            out.push(center.flip(mask));
            if left == 0 {
                return;
            }
            for p in start..n {
                positions.push(p);
                rec(center, n, p + 1, left - 1, positions, out);
                positions.pop();
            }
        }
        rec(self, n, 0, radius, &mut positions, &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for pos in 0..self.len() {
            f.write_str(if self.bit(pos) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for BitVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Self::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Shorthand for literals in tests and examples. Panics on malformed input.
pub fn bv(s: &str) -> BitVector {
    BitVector::parse(s).expect("malformed bit string literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["0", "1", "0101", "111000", "0000000001"] {
            assert_eq!(bv(s).to_string(), s);
        }
        let w = "1".repeat(64);
        assert_eq!(bv(&w).to_string(), w);
    }

    #[test]
    fn rejects_bad_strings() {
        assert!(BitVector::parse("").is_err());
        assert!(BitVector::parse("012").is_err());
        assert!(BitVector::parse(&"0".repeat(65)).is_err());
    }

    #[test]
    fn order_is_lexicographic() {
        assert!(bv("00") < bv("01"));
        assert!(bv("01") < bv("10"));
        assert!(bv("10") < bv("11"));
    }

    #[test]
    fn hamming_and_ball() {
        assert_eq!(bv("0000").hamming(&bv("1100")), 2);
        let ball = bv("00").hamming_ball(1);
        assert_eq!(ball, vec![bv("00"), bv("01"), bv("10")]);
        assert_eq!(bv("0000").hamming_ball(2).len(), 1 + 4 + 6);
        assert_eq!(bv("101").hamming_ball(7).len(), 8);
    }

    #[test]
    fn padding_and_bits() {
        let p = bv("01").pad_zeros(1).unwrap();
        assert_eq!(p.to_string(), "010");
        assert!(p.bit(1));
        assert!(!p.bit(0));
        assert_eq!(bv("000").flip(0b101).to_string(), "101");
    }
}
