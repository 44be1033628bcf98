//! Fixed-length binary strings.
//!
//! Position `k` of a [`BitVector`] is bit `k` of the integer it encodes, so
//! position 0 is the least significant bit.

use std::fmt;
use std::ops::BitXor;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitVector {
    bits: Vec<bool>,
}

impl BitVector {
    pub fn zeros(n: usize) -> Self {
        Self { bits: vec![false; n] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Low `n` bits of `value`. Bits above position 63 are zero.
    pub fn from_integer(value: u64, n: usize) -> Self {
        let bits = (0..n).map(|k| k < 64 && (value >> k) & 1 == 1).collect();
        Self { bits }
    }

    /// Unit vector with a single one at position `k`, i.e. the integer `2^k`.
    pub fn unit(k: usize, n: usize) -> Self {
        let mut v = Self::zeros(n);
        v.bits[k] = true;
        v
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self {
            bits: (0..n).map(|_| rng.random::<bool>()).collect(),
        }
    }

    /// Integer value, or `None` when a set bit lies above position 63.
    pub fn to_integer(&self) -> Option<u64> {
        let mut v = 0u64;
        for (k, &b) in self.bits.iter().enumerate() {
            if b {
                if k >= 64 {
                    return None;
                }
                v |= 1 << k;
            }
        }
        Some(v)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, k: usize) -> bool {
        self.bits[k]
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_zero(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn xor(&self, other: &BitVector) -> Result<BitVector> {
        self.check_len(other.len())?;
        Ok(Self {
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect(),
        })
    }

    /// Parity of the bitwise AND, i.e. the inner product mod 2.
    pub fn dot(&self, other: &BitVector) -> Result<bool> {
        self.check_len(other.len())?;
        Ok(self
            .bits
            .iter()
            .zip(&other.bits)
            .fold(false, |acc, (a, b)| acc ^ (a & b)))
    }

    pub fn check_len(&self, found: usize) -> Result<()> {
        if self.len() != found {
            return Err(Error::Dimension {
                expected: self.len(),
                found,
            });
        }
        Ok(())
    }

    /// Spin image `2s - 1`.
    pub fn to_spins(&self) -> Vec<i8> {
        self.bits.iter().map(|&b| if b { 1 } else { -1 }).collect()
    }
}

impl From<Vec<bool>> for BitVector {
    fn from(bits: Vec<bool>) -> Self {
        Self { bits }
    }
}

impl BitXor for &BitVector {
    type Output = BitVector;

    /// Panics on length mismatch; use [`BitVector::xor`] for a checked form.
    fn bitxor(self, rhs: &BitVector) -> BitVector {
        self.xor(rhs).expect("xor of bit vectors with different lengths")
    }
}

/// Most significant bit first, the way a binary literal reads.
impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in self.bits.iter().rev() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .rev()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Validation(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { bits })
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
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn bit_order_is_little_endian() {
        let v = BitVector::from_integer(0b1010, 4);
        assert_eq!(v.as_slice(), &[false, true, false, true]);
        assert_eq!(v.to_string(), "1010");
    }

    #[test]
    fn wide_vectors_have_no_integer_form() {
        let v = BitVector::unit(100, 128);
        assert_eq!(v.to_integer(), None);
        assert_eq!(BitVector::zeros(128).to_integer(), Some(0));
    }

    #[test]
    fn xor_rejects_length_mismatch() {
        let a = BitVector::zeros(3);
        let b = BitVector::zeros(4);
        assert!(matches!(a.xor(&b), Err(Error::Dimension { expected: 3, found: 4 })));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("10x1".parse::<BitVector>().is_err());
    }

    proptest! {
        #[test]
        fn integer_round_trip(n in 0usize..=64, v in any::<u64>()) {
            let v = if n == 64 { v } else { v & ((1u64 << n) - 1) };
            prop_assert_eq!(BitVector::from_integer(v, n).to_integer(), Some(v));
        }

        #[test]
        fn string_round_trip(bits in proptest::collection::vec(any::<bool>(), 0..80)) {
            let v = BitVector::from_bits(bits);
            prop_assert_eq!(v.to_string().parse::<BitVector>().unwrap(), v);
        }
    }
}
