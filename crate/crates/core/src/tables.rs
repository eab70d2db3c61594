//! Reference tables regenerated from first principles and compared line by
//! line against fixtures embedded at build time.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::dynamics::enumerate_cycles;
use crate::error::{Error, Result};
use crate::fibonacci::{build_cycle, CycleKind};
use crate::fixed_points::fixed_points_structural;
use crate::pairs::{decompose, IndexPair, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableId {
    /// The base-144 type I cycle, step by step.
    Table1,
    /// Type I fundamental cycles in bases `F_4 … F_20`.
    Table2,
    /// `ψ+` orbits for `N = 1, 3, …, 23`.
    Table3,
    /// Type II fundamental cycles in bases `F_4 … F_22`.
    Table4,
    /// `ψ−` orbits for `N = 3, 5, …, 23`.
    Table5,
    /// Fixed points and cycles of `S_12`.
    Base12,
}

impl TableId {
    pub const ALL: [TableId; 6] = [
        TableId::Table1,
        TableId::Table2,
        TableId::Table3,
        TableId::Table4,
        TableId::Table5,
        TableId::Base12,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableId::Table1 => "table1",
            TableId::Table2 => "table2",
            TableId::Table3 => "table3",
            TableId::Table4 => "table4",
            TableId::Table5 => "table5",
            TableId::Base12 => "base12",
        }
    }

    pub fn fixture(self) -> &'static str {
        match self {
            TableId::Table1 => include_str!("../fixtures/table1.txt"),
            TableId::Table2 => include_str!("../fixtures/table2.txt"),
            TableId::Table3 => include_str!("../fixtures/table3.txt"),
            TableId::Table4 => include_str!("../fixtures/table4.txt"),
            TableId::Table5 => include_str!("../fixtures/table5.txt"),
            TableId::Base12 => include_str!("../fixtures/base12.txt"),
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown table {s:?}")))
    }
}

/// A line where the regenerated table and the fixture disagree. `None`
/// marks a missing line on that side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineDiff {
    pub line: usize,
    pub expected: Option<String>,
    pub actual: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableComparison {
    pub id: TableId,
    pub rows: Vec<String>,
    pub diffs: Vec<LineDiff>,
}

impl TableComparison {
    pub fn matches(&self) -> bool {
        self.diffs.is_empty()
    }
}

/// Drops comments and blank lines and normalizes spacing, so `[[0,1]]` and
/// `[[0, 1]]` compare equal.
pub fn canonical_rows(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
        .filter(|l| !l.is_empty())
        .map(|l| l.replace(", ", ",").replace("[ ", "[").replace(" ]", "]"))
        .collect()
}

fn render_orbit(total: usize, orbit: &[IndexPair]) -> String {
    let inner: Vec<String> = orbit.iter().map(IndexPair::to_string).collect();
    format!("{total} [{}]", inner.join(", "))
}

fn render_cycle_row(kind: CycleKind, n: usize) -> Result<String> {
    let c = build_cycle(kind, n, 0)?;
    let cells: Vec<String> = c.pairs.iter().map(|p| format!("{}.{}", p.r, p.s)).collect();
    Ok(format!("{}: {}", 2 * n, cells.join(" ")))
}

/// Regenerates a table in the fixture's row format.
pub fn regenerate(id: TableId) -> Result<Vec<String>> {
    match id {
        TableId::Table1 => {
            let c = build_cycle(CycleKind::TypeI, 6, 0)?;
            Ok(c.pairs
                .iter()
                .zip(&c.elements)
                .map(|(p, e)| format!("{} {} {} {} {}", p.r, p.s, e.hi(), e.lo(), e.value()))
                .collect())
        }
        TableId::Table2 => (2..=10).map(|n| render_cycle_row(CycleKind::TypeI, n)).collect(),
        TableId::Table4 => (2..=11).map(|n| render_cycle_row(CycleKind::TypeII, n)).collect(),
        TableId::Table3 | TableId::Table5 => {
            let (sign, first) = if id == TableId::Table3 {
                (Sign::Plus, 1)
            } else {
                (Sign::Minus, 3)
            };
            let mut rows = Vec::new();
            for total in (first..=23).step_by(2) {
                let d = decompose(total, sign)?;
                rows.extend(d.orbits.iter().map(|o| render_orbit(total, o)));
            }
            Ok(rows)
        }
        TableId::Base12 => {
            let b = BigInt::from(12);
            let mut fixed: Vec<BigInt> = fixed_points_structural(&b)?.iter().map(|p| p.value()).collect();
            fixed.sort();
            let mut rows = vec![format!("fixed {}", join(&fixed))];
            for c in enumerate_cycles(&12u64)? {
                rows.push(format!("cycle {}", join(c.elements())));
            }
            Ok(rows)
        }
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

/// Regenerates `id` and compares it with its fixture, row by row.
pub fn compare(id: TableId) -> Result<TableComparison> {
    let rows = regenerate(id)?;
    let actual = canonical_rows(&rows.join("\n"));
    let expected = canonical_rows(id.fixture());
    let diffs = (0..actual.len().max(expected.len()))
        .filter_map(|i| {
            let (e, a) = (expected.get(i), actual.get(i));
            (e != a).then(|| LineDiff {
                line: i + 1,
                expected: e.cloned(),
                actual: a.cloned(),
            })
        })
        .collect();
    Ok(TableComparison { id, rows, diffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalization() {
        assert_eq!(canonical_rows("# c\n\n1 [[0,1]]\n"), vec!["1 [[0,1]]"]);
        assert_eq!(canonical_rows("3  [[0, 3], [2, 1]]  # x"), vec!["3 [[0,3],[2,1]]"]);
    }

    #[test]
    fn names_round_trip() {
        for id in TableId::ALL {
            assert_eq!(id.name().parse::<TableId>().unwrap(), id);
        }
        assert!("table9".parse::<TableId>().is_err());
    }

    #[test]
    fn every_table_matches_its_fixture() {
        for id in TableId::ALL {
            let cmp = compare(id).unwrap();
            assert!(cmp.matches(), "{id}: {:?}", cmp.diffs);
        }
    }

    #[test]
    fn a_corrupted_row_is_reported() {
        let expected = canonical_rows(TableId::Table3.fixture());
        let mut actual = expected.clone();
        actual[4] = "7 [[2,7]]".into();
        assert_ne!(expected, actual);
    }
}
