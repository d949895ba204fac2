//! Level labellings over the alphabet `{0,1,2,3,4}`.
//!
//! Within a finished labelling the symbols read: `2` member of the set,
//! `0` dominated from the row below, `1` from the right, `3` from the left,
//! `4` from the row above.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const ZERO: u8 = 0;
pub const LEFT_OF: u8 = 1;
pub const MEMBER: u8 = 2;
pub const RIGHT_OF: u8 = 3;
pub const BELOW: u8 = 4;

/// One level `H_j` of a labelling: a word of length `m` over `{0,..,4}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelRow {
    pub level: usize,
    labels: Vec<u8>,
}

impl LabelRow {
    pub fn new(level: usize, labels: Vec<u8>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::LabelRow("empty row".into()));
        }
        if let Some(bad) = labels.iter().find(|&&l| l > 4) {
            return Err(Error::LabelRow(format!("symbol {bad} outside [0,4]")));
        }
        Ok(LabelRow { level, labels })
    }

    /// An all-zero row at the given level.
    pub fn zeros(level: usize, m: usize) -> Self {
        LabelRow { level, labels: vec![ZERO; m] }
    }

    /// Parses a digit word such as `"1222300012301223"`.
    pub fn parse(level: usize, word: &str) -> Result<Self> {
        let labels = word
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(|| Error::LabelRow(format!("bad symbol {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(level, labels)
    }

    pub fn m(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn get(&self, i: usize) -> u8 {
        self.labels[i]
    }

    pub fn into_labels(self) -> Vec<u8> {
        self.labels
    }

    pub fn with_level(mut self, level: usize) -> Self {
        self.level = level;
        self
    }

    /// The word as a digit string.
    pub fn word(&self) -> String {
        self.labels.iter().map(|&l| char::from(b'0' + l)).collect()
    }

    pub fn count(&self, symbol: u8) -> usize {
        self.labels.iter().filter(|&&l| l == symbol).count()
    }

    /// Columns labelled `2`.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.labels.iter().enumerate().filter(|(_, &l)| l == MEMBER).map(|(i, _)| i)
    }

    /// Bitmask of the columns labelled `2`.
    pub fn member_mask(&self) -> u64 {
        self.members().fold(0, |acc, i| acc | 1 << i)
    }
}

impl fmt::Display for LabelRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

impl FromStr for LabelRow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(0, s)
    }
}

/// Completion counter: zeros remaining in a freshly labelled row.
pub fn tau(next: &LabelRow) -> usize {
    next.count(ZERO)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_counts_zeros() {
        assert_eq!(tau(&"0444122234123440".parse().unwrap()), 2);
        assert_eq!(tau(&"2222".parse().unwrap()), 0);
        assert_eq!(tau(&"0000".parse().unwrap()), 4);
    }

    #[test]
    fn rejects_symbols_outside_alphabet() {
        assert!(LabelRow::parse(0, "1250").is_err());
        assert!(LabelRow::parse(0, "12a").is_err());
        assert!(LabelRow::parse(0, "").is_err());
    }

    #[test]
    fn word_round_trip() {
        let r = LabelRow::parse(3, "2300044400123012").unwrap();
        assert_eq!(r.word(), "2300044400123012");
        assert_eq!(r.members().collect::<Vec<_>>(), vec![0, 11, 15]);
        assert_eq!(r.level, 3);
    }
}
