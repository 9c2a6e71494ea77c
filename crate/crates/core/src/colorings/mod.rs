//! Staged approximations of increasing functions and the colorings built
//! from them.

mod approx;
mod coloring;
mod constructions;
mod tournament;

pub(crate) use approx::stage_small_clamped;
pub use approx::{is_g_large, is_stage_small, normalize_approximations, ApproxTable, Gap, TableError};
pub use coloring::{
    binomial, for_each_combination, limit_lift, palette_from_json, product_coloring, Color, Coloring, ColoringError,
    GapVector, LiftedColoring, Palette, StagedColoring, TripleGap, MAX_TUPLES,
};
pub use constructions::{
    doubling_coloring, gap3_color, gap3_coloring, gap_coloring, gap_vector, largeness_color, largeness_coloring,
    split_homogeneous, Split, LARGENESS_MAX_ARITY,
};
pub use tournament::{tournament_from_g, Tournament};
