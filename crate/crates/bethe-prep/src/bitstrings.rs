//! Fixed-weight binary words and the index conventions shared by every
//! other module.
//!
//! A word `w` of length `L` is read as a big-endian binary numeral: the
//! leftmost character is the most significant bit. Character positions are
//! 1-based from the left (so `w = 0101` has ones at positions 2 and 4),
//! while qubit wires are 0-based from the least significant end; position
//! `p` lives on wire `L − p`. This is the single place where the two
//! pictures are reconciled — everything downstream goes through
//! [`BitString::basis_index`] and [`BitString::ones_positions`].

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Maximum word length for which [`BitString::basis_index`] fits in a
/// `u64`-backed `usize` with room to spare.
const MAX_LEN: usize = 63;

/// An immutable binary word; the empty word is allowed.
///
/// Words are cheap value types with derived equality, ordering, and
/// hashing, so they can key amplitude tables and suffix-norm memos. The
/// derived `Ord` is lexicographic, which for equal lengths coincides with
/// increasing [`basis_index`](Self::basis_index).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    bits: Vec<u8>,
}

impl BitString {
    /// The empty word `{}`.
    pub fn empty() -> Self {
        BitString { bits: Vec::new() }
    }

    /// Builds a word from raw bits; every entry must be 0 or 1.
    ///
    /// # Panics
    /// Panics on values other than 0 or 1 — that is a programming error,
    /// not an input error.
    pub fn from_bits(bits: &[u8]) -> Self {
        assert!(
            bits.iter().all(|&b| b <= 1),
            "BitString entries must be 0 or 1"
        );
        assert!(
            bits.len() <= MAX_LEN,
            "BitString length capped at {MAX_LEN}"
        );
        BitString {
            bits: bits.to_vec(),
        }
    }

    /// The all-zeros word of length `len`.
    pub fn zeros(len: usize) -> Self {
        Self::from_bits(&vec![0; len])
    }

    /// The all-ones word of length `len`.
    pub fn ones(len: usize) -> Self {
        Self::from_bits(&vec![1; len])
    }

    /// Reconstructs the length-`len` word whose basis index is `index`.
    pub fn from_index(index: usize, len: usize) -> Self {
        assert!(len <= MAX_LEN, "BitString length capped at {MAX_LEN}");
        assert!(
            len == MAX_LEN || index < (1usize << len),
            "index {index} out of range for length {len}"
        );
        let bits = (0..len)
            .map(|p| ((index >> (len - 1 - p)) & 1) as u8)
            .collect();
        BitString { bits }
    }

    /// Number of characters.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    /// Whether this is the empty word.
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// The characters as a slice of 0/1 bytes, leftmost first.
    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// The character at 0-based offset `i` from the left.
    pub fn bit(&self, i: usize) -> u8 {
        self.bits[i]
    }

    /// Number of ones. Additive under concatenation:
    /// `ab.weight() == a.weight() + b.weight()`.
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// The word read as a big-endian binary numeral.
    ///
    /// Equivalently, with position `p` (1-based from the left) on wire
    /// `L − p`, this is `Σ_p w_p · 2^(L−p)`. It is a bijection from
    /// length-`L` words onto `[0, 2^L)`.
    pub fn basis_index(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    /// Strictly increasing 1-based positions `x_1 < … < x_M` of the ones.
    ///
    /// 0101 → [2, 4]; the all-zeros word → [].
    pub fn ones_positions(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Concatenation `ab`; under the basis convention
    /// `|ab⟩ = |a⟩ ⊗ |b⟩` and
    /// `basis_index(ab) = basis_index(a)·2^len(b) + basis_index(b)`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut bits = Vec::with_capacity(self.len() + other.len());
        bits.extend_from_slice(&self.bits);
        bits.extend_from_slice(&other.bits);
        Self::from_bits(&bits)
    }

    /// The word `ib` obtained by prepending a single character.
    pub fn prepend(&self, bit: u8) -> Self {
        assert!(bit <= 1, "BitString entries must be 0 or 1");
        let mut bits = Vec::with_capacity(self.len() + 1);
        bits.push(bit);
        bits.extend_from_slice(&self.bits);
        BitString { bits }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", b)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for BitString {
    type Err = Error;

    /// Parses ASCII '0'/'1' text; the empty string parses to the empty
    /// word.
    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                other => {
                    return Err(Error::InvalidInput {
                        what: "bit string",
                        reason: format!("unexpected character '{other}' at offset {i} in \"{s}\""),
                    })
                }
            }
        }
        if bits.len() > MAX_LEN {
            return Err(Error::InvalidInput {
                what: "bit string",
                reason: format!("length {} exceeds the cap of {MAX_LEN}", bits.len()),
            });
        }
        Ok(BitString { bits })
    }
}

/// A weight sector: words of length `l` with exactly `m` ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightClass {
    l: usize,
    m: usize,
}

impl WeightClass {
    /// Validates `0 ≤ m ≤ l` and `l` within the representable cap.
    pub fn new(l: usize, m: usize) -> Result<Self> {
        if m > l || l > MAX_LEN {
            return Err(Error::InvalidWeightClass { l, m });
        }
        Ok(WeightClass { l, m })
    }

    /// Word length `L`.
    pub fn l(&self) -> usize {
        self.l
    }

    /// Weight `M`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// `binomial(L, M)`, the number of words in the sector.
    pub fn cardinality(&self) -> usize {
        binomial(self.l, self.m)
    }

    /// All words of the sector in strictly increasing basis-index order.
    pub fn words(&self) -> Vec<BitString> {
        if self.m == 0 {
            return vec![BitString::zeros(self.l)];
        }
        // Gosper's hack walks weight-m masks in increasing numeric order.
        let mut out = Vec::with_capacity(self.cardinality());
        let limit: u64 = 1u64 << self.l;
        let mut v: u64 = (1u64 << self.m) - 1;
        while v < limit {
            out.push(BitString::from_index(v as usize, self.l));
            let c = v & v.wrapping_neg();
            let r = v + c;
            if r >= limit || c == 0 {
                break;
            }
            v = r | (((v ^ r) / c) >> 2);
        }
        out
    }
}

/// All `binomial(L, M)` length-`L` words with exactly `M` ones, in strictly
/// increasing basis-index order.
///
/// ```
/// use bethe_prep::bitstrings::enumerate;
/// let words: Vec<String> = enumerate(4, 2)
///     .unwrap()
///     .iter()
///     .map(|w| w.to_string())
///     .collect();
/// assert_eq!(words, ["0011", "0101", "0110", "1001", "1010", "1100"]);
/// ```
pub fn enumerate(l: usize, m: usize) -> Result<Vec<BitString>> {
    Ok(WeightClass::new(l, m)?.words())
}

/// `binomial(n, k)` with 128-bit intermediates; exact for every `n ≤ 63`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}
