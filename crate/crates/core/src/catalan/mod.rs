//! Integer sequences and largeness graphs.

pub mod graph;
pub mod sequences;

pub use graph::{
    enumerate_graphs, equivalence_classes, is_largeness_graph, validate_graph, Axiom, EnumerationMethod,
    EquivalenceClass, GraphCode, GraphError, GraphJson, LargenessGraph, Verdict, Violation, FILTER_MAX_SIZE,
    MAX_GRAPH_SIZE, RECURSIVE_MAX_SIZE,
};
pub use sequences::{
    catalan, catalan_table, dec_sequences, ell_sequence, ell_weight, schroder, schroder_table, DecSeq, SequenceError,
    SequenceKind, SequenceTable,
};
