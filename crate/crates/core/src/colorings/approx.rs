//! Finite staged approximations `ĝ_s(x)` of an increasing function.
//!
//! The last stage is taken as the truth: `g(x) = ĝ_{S-1}(x)`. Stage
//! indices past the table are read as the last stage.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("table needs at least one stage and one point")]
    Empty,
    #[error("stage {stage} has {len} values, expected {expected}")]
    Ragged { stage: usize, len: usize, expected: usize },
    #[error("stage {stage} is not strictly increasing at x={x}")]
    RowNotIncreasing { stage: usize, x: usize },
    #[error("value at x={x} decreases from stage {} to stage {stage}", stage - 1)]
    StageDecreasing { stage: usize, x: usize },
    #[error("an interval starting at {from} turns small at stage {stage} but ĝ_{stage}({point}) < {stage}")]
    JumpNotPropagated { stage: usize, point: usize, from: usize },
    #[error("stable bound {bound} exceeds the domain size {domain}")]
    BoundOutsideDomain { bound: usize, domain: usize },
    #[error("point {a} is at or above the stable bound {bound}; its value is not final")]
    AboveStableBound { a: u64, bound: usize },
    #[error("point {x} is outside the table domain {domain}")]
    OutsideDomain { x: u64, domain: usize },
    #[error("interval [{a},{b}] is not increasing")]
    NotAnInterval { a: u64, b: u64 },
    #[error("stage {stage} is outside the table ({stages} stages)")]
    StageOutOfRange { stage: usize, stages: usize },
    #[error("raw approximation has not stabilized at x={x} by the last stage")]
    Unstable { x: usize },
    #[error("raw limit is not strictly increasing at x={x}")]
    NotIncreasing { x: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gap {
    Small,
    Large,
}

impl Gap {
    pub fn symbol(self) -> char {
        match self {
            Gap::Small => 's',
            Gap::Large => 'l',
        }
    }
}

/// Staged table satisfying the normalization invariants:
///
/// 1. every stage is strictly increasing in `x`;
/// 2. every column is non-decreasing in `s`;
/// 3. when `[a, x]` (`a <= x`) turns small between stages `s` and `s+1`,
///    `ĝ_{s+1}(x+1) >= s+1`;
/// 4. when `[a, x]` (`a < x`) turns small between stages `s` and `s+1`,
///    `ĝ_{s+1}(x) >= s+1`.
///
/// Clause 4 is what makes largeness colorings satisfy axioms (b) and (d)
/// when the intervals involved are adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TableFile", into = "TableFile")]
pub struct ApproxTable {
    values: Vec<Vec<u64>>,
    stable_bound: usize,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    stages: usize,
    domain: usize,
    stable_bound: usize,
    values: Vec<Vec<u64>>,
}

impl TryFrom<TableFile> for ApproxTable {
    type Error = TableError;

    fn try_from(file: TableFile) -> Result<Self, Self::Error> {
        if file.values.len() != file.stages {
            return Err(TableError::Ragged {
                stage: file.values.len(),
                len: file.values.len(),
                expected: file.stages,
            });
        }
        if let Some(row) = file.values.iter().position(|r| r.len() != file.domain) {
            return Err(TableError::Ragged {
                stage: row,
                len: file.values[row].len(),
                expected: file.domain,
            });
        }
        ApproxTable::new(file.values, file.stable_bound)
    }
}

impl From<ApproxTable> for TableFile {
    fn from(t: ApproxTable) -> Self {
        TableFile {
            stages: t.stages(),
            domain: t.domain(),
            stable_bound: t.stable_bound,
            values: t.values,
        }
    }
}

fn check_shape(values: &[Vec<u64>]) -> Result<usize, TableError> {
    let width = values.first().map(Vec::len).unwrap_or(0);
    if width == 0 {
        return Err(TableError::Empty);
    }
    for (stage, row) in values.iter().enumerate() {
        if row.len() != width {
            return Err(TableError::Ragged {
                stage,
                len: row.len(),
                expected: width,
            });
        }
    }
    Ok(width)
}

/// Does some `a` in `candidates` turn `[a, x]` small between the two rows,
/// i.e. `prev[a] <= x < next[a]`?
fn flips(prev: &[u64], next: &[u64], x: usize, candidates: std::ops::Range<usize>) -> Option<usize> {
    let x = x as u64;
    candidates.into_iter().find(|&a| prev[a] <= x && x < next[a])
}

impl ApproxTable {
    pub fn new(values: Vec<Vec<u64>>, stable_bound: usize) -> Result<Self, TableError> {
        let width = check_shape(&values)?;
        if stable_bound > width {
            return Err(TableError::BoundOutsideDomain {
                bound: stable_bound,
                domain: width,
            });
        }
        for (stage, row) in values.iter().enumerate() {
            if let Some(x) = (1..width).find(|&x| row[x] <= row[x - 1]) {
                return Err(TableError::RowNotIncreasing { stage, x });
            }
        }
        for stage in 1..values.len() {
            let (prev, next) = (&values[stage - 1], &values[stage]);
            if let Some(x) = (0..width).find(|&x| next[x] < prev[x]) {
                return Err(TableError::StageDecreasing { stage, x });
            }
            for y in 0..width {
                let needs_bump =
                    (y > 0 && flips(prev, next, y - 1, 0..y).is_some()) || flips(prev, next, y, 0..y).is_some();
                if needs_bump && next[y] < stage as u64 {
                    let from = flips(prev, next, y, 0..y)
                        .or_else(|| flips(prev, next, y - 1, 0..y))
                        .unwrap_or(0);
                    return Err(TableError::JumpNotPropagated { stage, point: y, from });
                }
            }
        }
        Ok(ApproxTable { values, stable_bound })
    }

    /// A single-stage table for a fully known increasing `g`, stable on its
    /// whole domain.
    pub fn exact(g: &[u64]) -> Result<Self, TableError> {
        ApproxTable::new(vec![g.to_vec()], g.len())
    }

    pub fn stages(&self) -> usize {
        self.values.len()
    }

    pub fn domain(&self) -> usize {
        self.values[0].len()
    }

    pub fn stable_bound(&self) -> usize {
        self.stable_bound
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.values
    }

    /// Least stage from which every `x < stable_bound` keeps its final value.
    pub fn settled_stage(&self) -> usize {
        let last = self.stages() - 1;
        (0..=last)
            .find(|&s| {
                (s..=last).all(|t| self.values[t][..self.stable_bound] == self.values[last][..self.stable_bound])
            })
            .unwrap_or(last)
    }

    fn check_point(&self, x: u64) -> Result<usize, TableError> {
        if x < self.domain() as u64 {
            Ok(x as usize)
        } else {
            Err(TableError::OutsideDomain {
                x,
                domain: self.domain(),
            })
        }
    }

    /// `g(x)`, the last-stage value.
    pub fn truth(&self, x: u64) -> Result<u64, TableError> {
        let x = self.check_point(x)?;
        Ok(self.values[self.stages() - 1][x])
    }

    pub fn value(&self, stage: usize, x: u64) -> Result<u64, TableError> {
        if stage >= self.stages() {
            return Err(TableError::StageOutOfRange {
                stage,
                stages: self.stages(),
            });
        }
        let x = self.check_point(x)?;
        Ok(self.values[stage][x])
    }

    /// `ĝ_s(x)` with `s` clamped to the last stage.
    pub fn value_clamped(&self, stage: u64, x: u64) -> Result<u64, TableError> {
        let last = self.stages() - 1;
        let stage = usize::try_from(stage).map_or(last, |s| s.min(last));
        self.value(stage, x)
    }

    /// The first `stages` stages as a table of their own.
    pub fn truncate(&self, stages: usize) -> ApproxTable {
        assert!(stages >= 1 && stages <= self.stages());
        ApproxTable {
            values: self.values[..stages].to_vec(),
            stable_bound: self.stable_bound,
        }
    }

    /// Whether every point of `domain` is strictly below the stable bound.
    pub fn check_domain(&self, domain: &[u64]) -> Result<(), TableError> {
        match domain.iter().find(|&&x| x >= self.stable_bound as u64) {
            Some(&a) => Err(TableError::AboveStableBound {
                a,
                bound: self.stable_bound,
            }),
            None => Ok(()),
        }
    }
}

/// `[a, b]` is large iff `b >= g(a)`; only defined below the stable bound.
pub fn is_g_large(a: u64, b: u64, g: &ApproxTable) -> Result<Gap, TableError> {
    if a >= b {
        return Err(TableError::NotAnInterval { a, b });
    }
    if a >= g.stable_bound() as u64 {
        return Err(TableError::AboveStableBound {
            a,
            bound: g.stable_bound(),
        });
    }
    Ok(if b >= g.truth(a)? { Gap::Large } else { Gap::Small })
}

/// `[a, b]` is `ĝ_s`-small, i.e. `ĝ_s(a) > b`.
pub fn is_stage_small(a: u64, b: u64, stage: usize, g: &ApproxTable) -> Result<bool, TableError> {
    if a >= b {
        return Err(TableError::NotAnInterval { a, b });
    }
    Ok(g.value(stage, a)? > b)
}

/// Stage-smallness with stage indices past the table read as the last stage.
pub(crate) fn stage_small_clamped(a: u64, b: u64, stage: u64, g: &ApproxTable) -> Result<bool, TableError> {
    Ok(g.value_clamped(stage, a)? > b)
}

/// Build a normalized table from raw stage rows.
///
/// Each `ĝ_{s}(x)` is the maximum of the raw value, `ĝ_s(x-1) + 1`,
/// `ĝ_{s-1}(x)`, and `s` whenever some interval `[a, x-1]` (`a <= x-1`) or
/// `[a, x]` (`a < x`) turns small between stages `s-1` and `s`. The raw
/// rows must already agree on their last two stages; the result's stable
/// bound is the longest prefix where the normalized last two stages agree.
pub fn normalize_approximations(raw: &[Vec<u64>]) -> Result<ApproxTable, TableError> {
    let width = check_shape(raw)?;
    let stages = raw.len();
    if stages >= 2 {
        if let Some(x) = (0..width).find(|&x| raw[stages - 2][x] != raw[stages - 1][x]) {
            return Err(TableError::Unstable { x });
        }
    }
    let mut out: Vec<Vec<u64>> = Vec::with_capacity(stages);
    for s in 0..stages {
        let mut row = vec![0u64; width];
        for x in 0..width {
            let mut v = raw[s][x];
            if x > 0 {
                v = v.max(row[x - 1] + 1);
            }
            if s > 0 {
                let prev = &out[s - 1];
                v = v.max(prev[x]);
                let jumped =
                    (x > 0 && flips(prev, &row, x - 1, 0..x).is_some()) || flips(prev, &row, x, 0..x).is_some();
                if jumped {
                    v = v.max(s as u64);
                }
            }
            row[x] = v;
        }
        out.push(row);
    }
    let stable_bound = if stages == 1 {
        width
    } else {
        (0..width)
            .find(|&x| out[stages - 2][x] != out[stages - 1][x])
            .unwrap_or(width)
    };
    Ok(ApproxTable::new(out, stable_bound).expect("normalization establishes every invariant"))
}
