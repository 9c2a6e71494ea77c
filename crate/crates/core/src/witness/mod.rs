//! Thin-set search, extremal numbers, and the extractors that turn thin
//! sets into dominating functions or g-transitive sets.

mod domination;
mod search;
mod transitive;

use thiserror::Error;

use crate::colorings::{ColoringError, TableError};

pub use domination::{extract_dominator_gap, extract_dominator_largeness, in_w, DominationWitness};
pub use search::{
    brute_thin_oracle, extremal_number, find_thin_set, find_thin_set_budgeted, ExtremalNumber, SearchBudget,
    ThinWitness, EXTREMAL_MAX_N, ORACLE_MAX_SUBSETS,
};
pub use transitive::{
    extract_transitive, is_g_transitive, max_transitive_subtournament, TransitiveKind, TransitiveWitness,
};

/// Default vertex limit for [`max_transitive_subtournament`].
pub const TOURNAMENT_GUARD: usize = 24;

#[derive(Debug, Error, PartialEq)]
pub enum SearchError {
    #[error("{what}: {size} exceeds the limit {max}")]
    TooLarge { what: &'static str, size: u64, max: u64 },
    #[error("search budget exhausted after {nodes} nodes{}", lower_bound.map(|b| format!("; the answer is at least {b}")).unwrap_or_default())]
    BudgetExceeded { nodes: u64, lower_bound: Option<u64> },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

#[derive(Debug, Error, PartialEq)]
pub enum ExtractError {
    #[error("H uses every palette color; it is not thin")]
    NotThin,
    #[error("witness does not match a recount of the coloring on H")]
    WitnessMismatch,
    #[error("the one-color coloring has no thin set")]
    NoThinSet,
    #[error("impossible case {case}: {detail}")]
    ImpossibleCase { case: String, detail: String },
    #[error("insufficient data in {case}: {detail}")]
    InsufficientData { case: String, detail: String },
    #[error("certificate failed: {detail}")]
    CertificateFailed { detail: String },
    #[error("expected a {expected} palette, found color {found}")]
    WrongPalette { expected: &'static str, found: String },
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}
