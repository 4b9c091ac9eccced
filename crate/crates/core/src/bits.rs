//! Binary vectors over GF(2).

use crate::error::{Error, Result};

/// An ordered vector of bits, each stored as `0u8` or `1u8`.
///
/// Used for codewords, hard decisions, and syndromes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVector(Vec<u8>);

impl BitVector {
    /// All-zero vector of length `len`.
    pub fn zeros(len: usize) -> Self {
        BitVector(vec![0; len])
    }

    /// Build from raw bits, rejecting any value other than 0 or 1.
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(Error::Config(format!(
                "bit vector entry at index {pos} is {}, expected 0 or 1",
                bits[pos]
            )));
        }
        Ok(BitVector(bits))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, bit: u8) {
        debug_assert!(bit <= 1);
        self.0[i] = bit;
    }

    /// Flip bit `i` in place.
    pub fn flip(&mut self, i: usize) {
        self.0[i] ^= 1;
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, u8> {
        self.0.iter()
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    /// True iff every bit is zero.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    /// Elementwise XOR; both vectors must have the same length.
    pub fn xor(&self, other: &BitVector) -> Result<BitVector> {
        if self.len() != other.len() {
            return Err(Error::Dimension {
                what: "bit vector xor",
                expected: self.len(),
                actual: other.len(),
            });
        }
        Ok(BitVector(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a ^ b)
                .collect(),
        ))
    }

    /// Number of positions where the two vectors differ.
    pub fn hamming_distance(&self, other: &BitVector) -> usize {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(other.0.iter())
            .filter(|(a, b)| a != b)
            .count()
    }
}

impl From<Vec<u8>> for BitVector {
    /// Converts raw bytes, mapping any nonzero value to 1.
    fn from(bits: Vec<u8>) -> Self {
        BitVector(bits.into_iter().map(|b| (b != 0) as u8).collect())
    }
}

impl std::ops::Index<usize> for BitVector {
    type Output = u8;

    fn index(&self, i: usize) -> &u8 {
        &self.0[i]
    }
}
