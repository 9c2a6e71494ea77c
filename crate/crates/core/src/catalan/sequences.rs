//! Exact integer sequences: Catalan, large Schröder, the ℓ-vector and the
//! decreasing sequences `Dec_n` that index it.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SequenceError {
    #[error("index {index} is outside the table (covers {first}..={last})")]
    IndexOutOfRange { index: usize, first: usize, last: usize },
    #[error("invalid decreasing sequence for n={n}: {entries:?}")]
    InvalidDecSeq { n: usize, entries: Vec<usize> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    Catalan,
    Schroder,
    Ell,
}

impl SequenceKind {
    pub fn name(self) -> &'static str {
        match self {
            SequenceKind::Catalan => "catalan",
            SequenceKind::Schroder => "schroder",
            SequenceKind::Ell => "ell",
        }
    }

    /// First index stored in a table of this kind.
    pub fn first_index(self) -> usize {
        match self {
            SequenceKind::Ell => 1,
            _ => 0,
        }
    }
}

/// A prefix of one of the sequences, stored with exact integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceTable {
    kind: SequenceKind,
    values: Vec<BigUint>,
}

impl SequenceTable {
    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn first_index(&self) -> usize {
        self.kind.first_index()
    }

    /// Last index covered, or `None` for an empty table.
    pub fn last_index(&self) -> Option<usize> {
        if self.values.is_empty() {
            None
        } else {
            Some(self.first_index() + self.values.len() - 1)
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&BigUint> {
        index.checked_sub(self.first_index()).and_then(|i| self.values.get(i))
    }

    fn require(&self, index: usize) -> Result<&BigUint, SequenceError> {
        self.get(index).ok_or(SequenceError::IndexOutOfRange {
            index,
            first: self.first_index(),
            last: self.last_index().unwrap_or(0),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigUint)> + '_ {
        let first = self.first_index();
        self.values.iter().enumerate().map(move |(i, v)| (first + i, v))
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    /// `index,value` CSV with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,value\n");
        for (i, v) in self.iter() {
            out.push_str(&format!("{i},{v}\n"));
        }
        out
    }
}

/// `d_0..=d_{n_max}` from `d_{n+1} = Σ d_i d_{n-i}`.
pub fn catalan_table(n_max: usize) -> SequenceTable {
    let mut values: Vec<BigUint> = Vec::with_capacity(n_max + 1);
    values.push(BigUint::one());
    for n in 0..n_max {
        let next = (0..=n).fold(BigUint::zero(), |acc, i| acc + &values[i] * &values[n - i]);
        values.push(next);
    }
    SequenceTable {
        kind: SequenceKind::Catalan,
        values,
    }
}

pub fn catalan(n: usize) -> BigUint {
    catalan_table(n).values.pop().expect("table is non-empty")
}

/// Large Schröder numbers `S_0..=S_{n_max}` with
/// `S_n = S_{n-1} + Σ_{k<n} S_k S_{n-1-k}`.
pub fn schroder_table(n_max: usize) -> SequenceTable {
    let mut values: Vec<BigUint> = Vec::with_capacity(n_max + 1);
    values.push(BigUint::one());
    for n in 1..=n_max {
        let conv = (0..n).fold(BigUint::zero(), |acc, k| acc + &values[k] * &values[n - 1 - k]);
        let next = &values[n - 1] + conv;
        values.push(next);
    }
    SequenceTable {
        kind: SequenceKind::Schroder,
        values,
    }
}

pub fn schroder(n: usize) -> BigUint {
    schroder_table(n).values.pop().expect("table is non-empty")
}

/// A strictly decreasing sequence over `{1, .., n-1}`; the empty sequence
/// stands for ε.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecSeq {
    n: usize,
    entries: Vec<usize>,
}

impl DecSeq {
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self, SequenceError> {
        let in_range = entries.iter().all(|&e| e >= 1 && e < n);
        let decreasing = entries.windows(2).all(|w| w[0] > w[1]);
        if in_range && decreasing {
            Ok(DecSeq { n, entries })
        } else {
            Err(SequenceError::InvalidDecSeq { n, entries })
        }
    }

    pub fn empty(n: usize) -> Self {
        DecSeq { n, entries: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// σ⁺: the last (smallest) entry, with ε⁺ = n.
    pub fn last(&self) -> usize {
        self.entries.last().copied().unwrap_or(self.n)
    }

    /// σ⁻: σ without its last entry.
    pub fn truncated(&self) -> DecSeq {
        let mut entries = self.entries.clone();
        entries.pop();
        DecSeq { n: self.n, entries }
    }
}

impl fmt::Display for DecSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "ε");
        }
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "⟨{}⟩", parts.join(","))
    }
}

/// All of `Dec_n`, ordered by length and then lexicographically.
pub fn dec_sequences(n: usize) -> Vec<DecSeq> {
    if n < 2 {
        return Vec::new();
    }
    let width = n - 1;
    let mut out: Vec<DecSeq> = (1u64..(1u64 << width))
        .map(|mask| {
            let entries = (1..n).rev().filter(|&v| mask >> (v - 1) & 1 == 1).collect();
            DecSeq { n, entries }
        })
        .collect();
    out.sort_by(|a, b| {
        a.entries
            .len()
            .cmp(&b.entries.len())
            .then_with(|| a.entries.cmp(&b.entries))
    });
    out
}

/// `ℓ(n, σ) = ℓ_{n-n_0} · Π ℓ_{n_{i-1}-n_i}`, and 1 for ε.
pub fn ell_weight(n: usize, sigma: &DecSeq, ell: &SequenceTable) -> Result<BigUint, SequenceError> {
    let mut product = BigUint::one();
    let mut previous = n;
    for &entry in sigma.entries() {
        product *= ell.require(previous - entry)?;
        previous = entry;
    }
    Ok(product)
}

/// `ℓ_1..=ℓ_{n_max}` computed literally from
/// `ℓ_{n+1} = ℓ_n + Σ_{σ ∈ Dec_n} ℓ(n,σ) · ℓ_{σ⁺}`.
///
/// The sum ranges over `2^{n-1} - 1` sequences, so this is exponential in
/// `n_max`; it exists to check the identity, not to produce large terms.
pub fn ell_sequence(n_max: usize) -> SequenceTable {
    let mut table = SequenceTable {
        kind: SequenceKind::Ell,
        values: Vec::with_capacity(n_max),
    };
    if n_max == 0 {
        return table;
    }
    table.values.push(BigUint::one());
    for n in 1..n_max {
        let mut next = table.require(n).expect("ℓ_n computed").clone();
        for sigma in dec_sequences(n) {
            let weight = ell_weight(n, &sigma, &table).expect("indices below n");
            next += weight * table.require(sigma.last()).expect("σ⁺ < n");
        }
        table.values.push(next);
    }
    table
}
