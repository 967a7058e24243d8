use std::fmt;

use crate::{Error, Result};

/// A partition without colors, stored as nonincreasing positive row lengths.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlainPartition {
    rows: Vec<u32>,
}

impl PlainPartition {
    pub fn new(rows: Vec<u32>) -> Result<Self> {
        if rows.contains(&0) {
            return Err(Error::InvalidPlainPartition("rows must be positive".into()));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPlainPartition(
                "rows must be nonincreasing".into(),
            ));
        }
        Ok(PlainPartition { rows })
    }

    pub fn empty() -> Self {
        PlainPartition::default()
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.rows.iter().map(|&r| r as u64).sum()
    }

    pub fn max_row(&self) -> u32 {
        self.rows.first().copied().unwrap_or(0)
    }

    /// Column lengths: entry `n-1` counts the rows of length at least `n`.
    pub fn conjugate(&self) -> PlainPartition {
        let rows = (1..=self.max_row())
            .map(|n| self.rows.iter().take_while(|&&r| r >= n).count() as u32)
            .collect();
        PlainPartition { rows }
    }

    /// Every partition of `n`, in reverse lexicographic order.
    pub fn all_of_size(n: u32) -> Vec<PlainPartition> {
        fn rec(rest: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<PlainPartition>) {
            if rest == 0 {
                out.push(PlainPartition { rows: cur.clone() });
                return;
            }
            for r in (1..=rest.min(cap)).rev() {
                cur.push(r);
                rec(rest - r, r, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for PlainPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(u32::to_string).collect();
        write!(f, "({})", rows.join(","))
    }
}
