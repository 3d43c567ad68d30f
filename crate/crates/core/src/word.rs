//! Vertex labels of Sierpinski-type graphs: length-n symbol sequences over [k].
//!
//! The canonical text form writes one base-36 digit per symbol, most
//! significant first, so labels stay unambiguous for every base up to 36.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported base-graph order; bounded by the digit alphabet.
pub const MAX_BASE: usize = 36;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(symbols: Vec<u8>) -> Word {
        debug_assert!(!symbols.is_empty());
        Word(symbols)
    }

    /// The extreme vertex i^n.
    pub fn constant(symbol: u8, n: usize) -> Word {
        Word(vec![symbol; n])
    }

    /// Decode a vertex index back into its digits (base k, most significant first).
    pub fn from_index(mut index: usize, k: usize, n: usize) -> Word {
        let mut symbols = vec![0u8; n];
        for slot in symbols.iter_mut().rev() {
            *slot = (index % k) as u8;
            index /= k;
        }
        debug_assert_eq!(index, 0);
        Word(symbols)
    }

    /// The base-k integer value of the digits.
    pub fn index(&self, k: usize) -> usize {
        self.0.iter().fold(0usize, |acc, &d| acc * k + d as usize)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn first(&self) -> u8 {
        self.0[0]
    }

    pub fn last(&self) -> u8 {
        *self.0.last().unwrap()
    }

    /// Extreme vertices i^n are the only attachment points between copies.
    pub fn is_extreme(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn parse(text: &str, k: usize) -> Result<Word> {
        if text.is_empty() {
            return Err(Error::Parse("empty word".into()));
        }
        let mut symbols = Vec::with_capacity(text.len());
        for ch in text.chars() {
            let digit = ch
                .to_digit(MAX_BASE as u32)
                .ok_or_else(|| Error::Parse(format!("bad digit {ch:?} in word {text:?}")))?;
            if digit as usize >= k {
                return Err(Error::Parse(format!(
                    "symbol {ch:?} out of range for base of order {k}"
                )));
            }
            symbols.push(digit as u8);
        }
        Ok(Word(symbols))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.0 {
            let ch = char::from_digit(d as u32, MAX_BASE as u32).unwrap();
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        for k in [2usize, 3, 4, 13] {
            for n in 1..=3 {
                let total = k.pow(n as u32);
                for idx in 0..total {
                    let w = Word::from_index(idx, k, n);
                    assert_eq!(w.len(), n);
                    assert_eq!(w.index(k), idx);
                }
            }
        }
    }

    #[test]
    fn display_and_parse() {
        let w = Word::new(vec![0, 1, 2]);
        assert_eq!(w.to_string(), "012");
        assert_eq!(Word::parse("012", 3).unwrap(), w);

        let big = Word::new(vec![12, 11]);
        assert_eq!(big.to_string(), "cb");
        assert_eq!(Word::parse("cb", 13).unwrap(), big);
    }

    #[test]
    fn parse_rejects_out_of_range() {
        assert!(Word::parse("03", 3).is_err());
        assert!(Word::parse("", 3).is_err());
        assert!(Word::parse("0 1", 3).is_err());
    }

    #[test]
    fn extreme_detection() {
        assert!(Word::constant(2, 4).is_extreme());
        assert!(Word::new(vec![1]).is_extreme());
        assert!(!Word::new(vec![1, 2]).is_extreme());
    }
}
