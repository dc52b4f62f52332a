use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

const WORD_BITS: usize = 64;

/// A fixed-length string of bits.
///
/// Bit `i` lives in word `i / 64` at position `i % 64` (least significant
/// first). Padding bits past `len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl BitString {
    pub fn zeros(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(invalid("bitstring length must be at least 1"));
        }
        Ok(Self {
            words: vec![0; len.div_ceil(WORD_BITS)],
            len,
        })
    }

    pub fn ones(len: usize) -> Result<Self> {
        let mut s = Self::zeros(len)?;
        s.words.iter_mut().for_each(|w| *w = u64::MAX);
        s.clear_padding();
        Ok(s)
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let mut s = Self::zeros(bits.len())?;
        for (i, &b) in bits.iter().enumerate() {
            if b {
                s.flip(i);
            }
        }
        Ok(s)
    }

    /// Builds a string from raw words; bits at or beyond `len` are discarded.
    pub(crate) fn from_words(mut words: Vec<u64>, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(invalid("bitstring length must be at least 1"));
        }
        words.resize(len.div_ceil(WORD_BITS), 0);
        let mut s = Self { words, len };
        s.clear_padding();
        Ok(s)
    }

    /// The `index`-th bit from an integer, most significant of `len` bits first.
    ///
    /// `from_index(0b110, 3)` is `110`. Used to enumerate `{0,1}^len`.
    pub fn from_index(index: u64, len: usize) -> Result<Self> {
        if len > 64 {
            return Err(invalid("from_index supports at most 64 bits"));
        }
        let mut s = Self::zeros(len)?;
        for i in 0..len {
            if (index >> (len - 1 - i)) & 1 == 1 {
                s.flip(i);
            }
        }
        Ok(s)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false; a bitstring holds at least one bit.
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "bit {index} out of range {}", self.len);
        (self.words[index / WORD_BITS] >> (index % WORD_BITS)) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn hamming_distance(&self, other: &BitString) -> usize {
        assert_eq!(self.len, other.len, "hamming distance needs equal lengths");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Copy of bits `start..start + len`.
    pub fn slice(&self, start: usize, len: usize) -> Result<BitString> {
        if start + len > self.len {
            return Err(invalid(format!(
                "slice {start}..{} exceeds length {}",
                start + len,
                self.len
            )));
        }
        let mut out = BitString::zeros(len)?;
        for i in 0..len {
            if self.get(start + i) {
                out.flip(i);
            }
        }
        Ok(out)
    }

    pub fn concat(parts: &[BitString]) -> Result<BitString> {
        let bits: Vec<bool> = parts.iter().flat_map(|p| p.iter()).collect();
        BitString::from_bits(&bits)
    }

    #[inline]
    pub(crate) fn flip(&mut self, index: usize) {
        debug_assert!(index < self.len);
        self.words[index / WORD_BITS] ^= 1 << (index % WORD_BITS);
    }

    /// Length of the run of bits equal to `value` starting at `start`,
    /// capped at `max` and at the end of the string.
    pub(crate) fn run_length(&self, start: usize, max: usize, value: bool) -> usize {
        let end = (start + max).min(self.len);
        let mut pos = start;
        while pos < end {
            let word = self.words[pos / WORD_BITS];
            let mismatches = if value { !word } else { word };
            let offset = pos % WORD_BITS;
            let remaining_in_word = WORD_BITS - offset;
            let run = ((mismatches >> offset).trailing_zeros() as usize).min(remaining_in_word);
            pos += run;
            if run < remaining_in_word {
                break;
            }
        }
        pos.min(end) - start
    }

    fn clear_padding(&mut self) {
        let used = self.len % WORD_BITS;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(invalid(format!("unexpected character {other:?} in bitstring"))),
            })
            .collect::<Result<Vec<_>>>()?;
        BitString::from_bits(&bits)
    }
}
