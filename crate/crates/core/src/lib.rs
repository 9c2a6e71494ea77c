//! Finite combinatorics of thin sets for colorings of increasing tuples.
//!
//! * [`catalan`]: Catalan, Schröder and ℓ sequences, and largeness graphs
//!   with validation, enumeration, packing/normalization and the
//!   restrict/extend bijection.
//! * [`colorings`]: staged approximation tables and the explicit colorings
//!   built from them (gap vectors, largeness graphs, 5-color triples,
//!   tournaments, doubling, products and limit lifts).
//! * [`witness`]: exact thin-set search with a brute-force oracle,
//!   extremal numbers, and the witness extractors that turn thin sets into
//!   dominating functions or g-transitive sets.

pub mod catalan;
pub mod colorings;
pub mod witness;

pub use catalan::{GraphCode, LargenessGraph};
pub use colorings::{ApproxTable, Color, Coloring};
pub use witness::{DominationWitness, ThinWitness, TransitiveWitness};
