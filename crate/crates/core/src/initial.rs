//! Initial conditions on the top side `H₀`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::{LabelRow, LEFT_OF, MEMBER, RIGHT_OF, ZERO};

/// How a column subset of `H₀` relates to the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InitialClass {
    /// Incomplete admissible vertex subset: the only input the engine accepts.
    Iavs,
    /// Admissible, and every non-member of `H₀` is already dominated.
    Complete,
    EmptyOrFull,
    /// Two components at distance 2.
    Inadmissible,
}

fn validate(m: usize, columns: &[usize]) -> Result<Vec<usize>> {
    if m == 0 {
        return Err(Error::Dimensions("m must be >= 1".into()));
    }
    if let Some(&index) = columns.iter().find(|&&c| c >= m) {
        return Err(Error::ColumnOutOfRange { index, m });
    }
    let mut cols = columns.to_vec();
    cols.sort_unstable();
    cols.dedup();
    Ok(cols)
}

/// Maximal runs of consecutive columns as inclusive `(start, end)` pairs.
fn runs(sorted: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &c in sorted {
        match out.last_mut() {
            Some((_, end)) if *end + 1 == c => *end = c,
            _ => out.push((c, c)),
        }
    }
    out
}

/// True iff no two components of the induced path subgraph are at distance 2,
/// i.e. consecutive runs are separated by at least two absent columns.
pub fn is_admissible(m: usize, columns: &[usize]) -> Result<bool> {
    let cols = validate(m, columns)?;
    Ok(runs(&cols).windows(2).all(|w| w[1].0 - w[0].1 >= 3))
}

/// The initial labelling of `H₀`: `2` on members, `1` just left of each
/// component, `3` just right of it, `0` elsewhere.
///
/// Requires an admissible set; otherwise two components would compete for
/// the vertex between them.
pub fn initial_row(m: usize, columns: &[usize]) -> Result<LabelRow> {
    let cols = validate(m, columns)?;
    let mut labels = vec![ZERO; m];
    for (start, end) in runs(&cols) {
        for l in &mut labels[start..=end] {
            *l = MEMBER;
        }
        if start > 0 {
            labels[start - 1] = LEFT_OF;
        }
        if end + 1 < m {
            labels[end + 1] = RIGHT_OF;
        }
    }
    LabelRow::new(0, labels)
}

pub fn classify_initial(m: usize, columns: &[usize]) -> Result<InitialClass> {
    let cols = validate(m, columns)?;
    if cols.is_empty() || cols.len() == m {
        return Ok(InitialClass::EmptyOrFull);
    }
    if !is_admissible(m, &cols)? {
        return Ok(InitialClass::Inadmissible);
    }
    if initial_row(m, &cols)?.count(ZERO) > 0 {
        Ok(InitialClass::Iavs)
    } else {
        Ok(InitialClass::Complete)
    }
}

/// A validated incomplete admissible vertex subset `S′ ⊂ H₀`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InitialCondition {
    m: usize,
    columns: Vec<usize>,
}

impl InitialCondition {
    pub fn new(m: usize, columns: &[usize]) -> Result<Self> {
        match classify_initial(m, columns)? {
            InitialClass::Iavs => Ok(InitialCondition { m, columns: validate(m, columns)? }),
            other => Err(Error::NotIavs(other)),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Member columns, strictly increasing.
    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    pub fn mask(&self) -> u64 {
        self.columns.iter().fold(0, |acc, &c| acc | 1 << c)
    }

    pub fn row(&self) -> LabelRow {
        initial_row(self.m, &self.columns).expect("validated on construction")
    }

    /// Every IAVS of width `m`, in increasing order of bitmask.
    pub fn all(m: usize) -> Vec<InitialCondition> {
        assert!(m < 32, "exhaustive IAVS listing is limited to m < 32");
        (1u32..(1u32 << m))
            .filter_map(|mask| {
                let cols: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
                InitialCondition::new(m, &cols).ok()
            })
            .collect()
    }
}

/// Parses a comma-separated, 0-based column list (`""` is the empty set).
pub fn parse_columns(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|e| Error::Parse(format!("column {s:?}: {e}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility_examples() {
        assert!(is_admissible(16, &[1, 2, 3, 9, 13, 14]).unwrap());
        assert!(!is_admissible(4, &[0, 2]).unwrap());
        assert!(is_admissible(3, &[0]).unwrap());
        // distance 3 is allowed
        assert!(is_admissible(5, &[0, 3]).unwrap());
    }

    #[test]
    fn out_of_range_column_is_an_input_error() {
        assert_eq!(is_admissible(4, &[4]), Err(Error::ColumnOutOfRange { index: 4, m: 4 }));
        assert!(classify_initial(4, &[7]).is_err());
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_initial(4, &[1]).unwrap(), InitialClass::Iavs);
        assert_eq!(initial_row(4, &[1]).unwrap().word(), "1230");
        assert_eq!(classify_initial(4, &[1, 2]).unwrap(), InitialClass::Complete);
        assert_eq!(initial_row(4, &[1, 2]).unwrap().word(), "1223");
        assert_eq!(classify_initial(4, &[]).unwrap(), InitialClass::EmptyOrFull);
        assert_eq!(classify_initial(4, &[0, 1, 2, 3]).unwrap(), InitialClass::EmptyOrFull);
        assert_eq!(classify_initial(4, &[0, 2]).unwrap(), InitialClass::Inadmissible);
    }

    #[test]
    fn initial_rows() {
        assert_eq!(initial_row(16, &[1, 2, 3, 9, 13, 14]).unwrap().word(), "1222300012301223");
        assert_eq!(initial_row(3, &[0]).unwrap().word(), "230");
        assert_eq!(InitialCondition::new(5, &[1]).unwrap().row().word(), "12300");
    }

    #[test]
    fn non_iavs_is_rejected() {
        assert_eq!(InitialCondition::new(4, &[1, 2]), Err(Error::NotIavs(InitialClass::Complete)));
        assert_eq!(InitialCondition::new(4, &[]), Err(Error::NotIavs(InitialClass::EmptyOrFull)));
    }

    #[test]
    fn column_lists() {
        assert_eq!(parse_columns("1,2, 3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_columns("").unwrap(), Vec::<usize>::new());
        assert!(parse_columns("1,x").is_err());
    }

    #[test]
    fn no_iavs_below_width_three() {
        assert!(InitialCondition::all(1).is_empty());
        assert!(InitialCondition::all(2).is_empty());
        assert_eq!(InitialCondition::all(3).len(), 2);
    }
}
