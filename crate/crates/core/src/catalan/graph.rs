//! Largeness graphs on `{0, .., n-1}`.
//!
//! A graph is stored as a [`GraphCode`]: one bit per unordered pair
//! `{i, j}` (`i < j`), at position `j(j-1)/2 + i`. Pairs are therefore
//! ordered colexicographically by `(j, i)`, and sorting codes numerically
//! gives the canonical order used by every enumeration in this crate.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest size a [`GraphCode`] can hold (`C(16, 2) = 120` bits).
pub const MAX_GRAPH_SIZE: usize = 16;
/// Largest size accepted by the brute-force filter (2^21 candidates).
pub const FILTER_MAX_SIZE: usize = 7;
/// Largest size accepted by the recursive enumerator (d_14 = 2674440 graphs).
pub const RECURSIVE_MAX_SIZE: usize = 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed pair {{{i},{j}}} for a graph of size {n}")]
    MalformedPair { i: usize, j: usize, n: usize },
    #[error("graph size {n} exceeds the supported maximum {max}")]
    TooLarge { n: usize, max: usize },
    #[error("not a largeness graph: {0}")]
    Invalid(Verdict),
    #[error("graph is not normal")]
    NotNormal,
    #[error("graph sizes differ ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },
    #[error("operation needs a graph of size at least {min}, got {n}")]
    TooSmall { n: usize, min: usize },
}

#[inline]
fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn full_mask(n: usize) -> u128 {
    let bits = pair_count(n);
    if bits == 128 {
        u128::MAX
    } else {
        (1u128 << bits) - 1
    }
}

/// Bits of the adjacent pairs `{i, i+1}` for `i < n-1`.
fn adjacent_mask(n: usize) -> u128 {
    (1..n).fold(0, |m, j| m | 1u128 << pair_index(j - 1, j))
}

/// Canonical bitmask encoding of an undirected graph on `{0, .., n-1}`.
///
/// This is also the candidate type accepted by [`validate_graph`]: any
/// well-formed edge set, whether or not it satisfies the axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphCode {
    size: usize,
    bits: u128,
}

impl GraphCode {
    pub fn empty(size: usize) -> Result<Self, GraphError> {
        Self::from_bits(size, 0)
    }

    pub fn from_bits(size: usize, bits: u128) -> Result<Self, GraphError> {
        if size > MAX_GRAPH_SIZE {
            return Err(GraphError::TooLarge {
                n: size,
                max: MAX_GRAPH_SIZE,
            });
        }
        if bits & !full_mask(size) != 0 {
            let top = 127 - bits.leading_zeros() as usize;
            let j = (1..).find(|&j| pair_index(0, j + 1) > top).unwrap();
            return Err(GraphError::MalformedPair {
                i: top - pair_index(0, j),
                j,
                n: size,
            });
        }
        Ok(GraphCode { size, bits })
    }

    pub fn from_edges<I>(size: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut code = Self::empty(size)?;
        for (i, j) in edges {
            if i >= j || j >= size {
                return Err(GraphError::MalformedPair { i, j, n: size });
            }
            code.bits |= 1u128 << pair_index(i, j);
        }
        Ok(code)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    /// Edge test for `i != j` in either order; out-of-range pairs are absent.
    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        i != j && j < self.size && self.bits >> pair_index(i, j) & 1 == 1
    }

    fn with_edge(mut self, i: usize, j: usize) -> Self {
        self.bits |= 1u128 << pair_index(i, j);
        self
    }

    /// Edges as `(i, j)` pairs with `i < j`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.size {
            for j in i + 1..self.size {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> u32 {
        self.bits.count_ones()
    }

    /// The induced subgraph on `lo..hi`, relabelled to start at 0.
    pub fn induced(&self, lo: usize, hi: usize) -> GraphCode {
        assert!(lo <= hi && hi <= self.size);
        let mut out = GraphCode { size: hi - lo, bits: 0 };
        for j in lo..hi {
            for i in lo..j {
                if self.has_edge(i, j) {
                    out = out.with_edge(i - lo, j - lo);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.size,
            edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }

    /// DOT rendering: nodes on one rank, undirected edges.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n  rankdir=LR;\n  { rank=same;");
        for v in 0..self.size {
            out.push_str(&format!(" {v};"));
        }
        out.push_str(" }\n");
        for (i, j) in self.edges() {
            out.push_str(&format!("  {i} -- {j};\n"));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for GraphCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().into_iter().map(|(i, j)| format!("{{{i},{j}}}")).collect();
        write!(f, "n={} {{{}}}", self.size, edges.join(","))
    }
}

/// Serialized graph: `{"n": 4, "edges": [[0,2],[0,3]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<&GraphJson> for GraphCode {
    type Error = GraphError;

    fn try_from(json: &GraphJson) -> Result<Self, Self::Error> {
        GraphCode::from_edges(json.n, json.edges.iter().map(|e| (e[0], e[1])))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Axiom::A => 'a',
            Axiom::B => 'b',
            Axiom::C => 'c',
            Axiom::D => 'd',
        };
        write!(f, "({c})")
    }
}

/// One failed axiom instance. `witness` holds the quantified indices in the
/// order they appear in the axiom: `(i, j)` for (a)–(c), `(i, j, k)` for (d).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Violation {
    #[serde(serialize_with = "serialize_axiom")]
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

fn serialize_axiom<S: serde::Serializer>(axiom: &Axiom, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&axiom.to_string())
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["i", "j", "k"];
        let parts: Vec<String> = self
            .witness
            .iter()
            .zip(names)
            .map(|(v, name)| format!("{name}={v}"))
            .collect();
        write!(f, "axiom {} at {}", self.axiom, parts.join(", "))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Check axioms (a)–(d), collecting every violated instance.
pub fn validate_graph(g: &GraphCode) -> Verdict {
    let mut violations = Vec::new();
    check_axioms(g, |v| {
        violations.push(v);
        true
    });
    Verdict { violations }
}

/// Axiom check that stops at the first violation.
pub fn is_largeness_graph(g: &GraphCode) -> bool {
    let mut ok = true;
    check_axioms(g, |_| {
        ok = false;
        false
    });
    ok
}

/// Runs every axiom instance, handing violations to `report`; stops early
/// when `report` returns false.
fn check_axioms(g: &GraphCode, mut report: impl FnMut(Violation) -> bool) {
    let n = g.size;
    let e = |i: usize, j: usize| g.has_edge(i, j);
    // (a) {i,i+1} ∈ E ⇒ {i,j} ∉ E for j > i+1
    for i in 0..n.saturating_sub(1) {
        if e(i, i + 1) {
            for j in i + 2..n {
                if e(i, j)
                    && !report(Violation {
                        axiom: Axiom::A,
                        witness: vec![i, j],
                    })
                {
                    return;
                }
            }
        }
    }
    // (b) i < j < n-1, {i,i+1} ∉ E, {j,j+1} ∈ E ⇒ {i,j+1} ∈ E
    for i in 0..n {
        if e(i, i + 1) {
            continue;
        }
        for j in i + 1..n.saturating_sub(1) {
            if e(j, j + 1)
                && !e(i, j + 1)
                && !report(Violation {
                    axiom: Axiom::B,
                    witness: vec![i, j],
                })
            {
                return;
            }
        }
    }
    // (c) i+1 < j < n-1, {i,j} ∈ E ⇒ {i,j+1} ∈ E
    for i in 0..n {
        for j in i + 2..n.saturating_sub(1) {
            if e(i, j)
                && !e(i, j + 1)
                && !report(Violation {
                    axiom: Axiom::C,
                    witness: vec![i, j],
                })
            {
                return;
            }
        }
    }
    // (d) i+1 < j < k < n, {i,j} ∉ E, {i,k} ∈ E ⇒ {j-1,k} ∈ E
    for i in 0..n {
        for j in i + 2..n {
            if e(i, j) {
                continue;
            }
            for k in j + 1..n {
                if e(i, k)
                    && !e(j - 1, k)
                    && !report(Violation {
                        axiom: Axiom::D,
                        witness: vec![i, j, k],
                    })
                {
                    return;
                }
            }
        }
    }
}

/// A [`GraphCode`] known to satisfy axioms (a)–(d).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LargenessGraph(GraphCode);

impl TryFrom<GraphCode> for LargenessGraph {
    type Error = GraphError;

    fn try_from(code: GraphCode) -> Result<Self, Self::Error> {
        let verdict = validate_graph(&code);
        if verdict.is_valid() {
            Ok(LargenessGraph(code))
        } else {
            Err(GraphError::Invalid(verdict))
        }
    }
}

impl From<LargenessGraph> for GraphCode {
    fn from(g: LargenessGraph) -> Self {
        g.0
    }
}

impl fmt::Display for LargenessGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for LargenessGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LargenessGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let json = GraphJson::deserialize(d)?;
        let code = GraphCode::try_from(&json).map_err(serde::de::Error::custom)?;
        LargenessGraph::try_from(code).map_err(serde::de::Error::custom)
    }
}

impl LargenessGraph {
    pub fn from_edges<I>(size: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        GraphCode::from_edges(size, edges)?.try_into()
    }

    /// The unique graph of size 0 or 1.
    pub fn trivial(size: usize) -> Self {
        assert!(size <= 1);
        LargenessGraph(GraphCode { size, bits: 0 })
    }

    pub fn code(&self) -> GraphCode {
        self.0
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.0.has_edge(i, j)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges()
    }

    /// No adjacent edge `{i, i+1}` at all.
    ///
    /// This is the reading under which every ∼-class holds exactly one
    /// packed graph (and size 4 has the 5 packed graphs of the atlas).
    pub fn is_packed(&self) -> bool {
        self.0.bits & adjacent_mask(self.size()) == 0
    }

    /// Contains `{n-2, n-1}`; false below size 2.
    pub fn is_normal(&self) -> bool {
        let n = self.size();
        n >= 2 && self.has_edge(n - 2, n - 1)
    }

    /// Agreement on every non-adjacent pair.
    pub fn equivalent(&self, other: &LargenessGraph) -> Result<bool, GraphError> {
        if self.size() != other.size() {
            return Err(GraphError::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        Ok(self.class_key() == other.class_key())
    }

    /// Bits of the non-adjacent edges; equal keys ⇔ equivalent graphs.
    pub fn class_key(&self) -> u128 {
        self.0.bits & !adjacent_mask(self.size())
    }

    /// Remove every adjacent edge, `{n-2, n-1}` included.
    pub fn pack(&self) -> LargenessGraph {
        LargenessGraph(GraphCode {
            size: self.size(),
            bits: self.class_key(),
        })
    }

    /// Repeatedly add `{l, l+1}` for the least `l < n-2` with neither
    /// `{l, l+1}` nor `{l, n-1}` present, then add `{n-2, n-1}`.
    pub fn normalize(&self) -> Result<LargenessGraph, GraphError> {
        let n = self.size();
        if n < 2 {
            return Err(GraphError::TooSmall { n, min: 2 });
        }
        let mut code = self.0;
        while let Some(l) = (0..n - 2).find(|&l| !code.has_edge(l, l + 1) && !code.has_edge(l, n - 1)) {
            code = code.with_edge(l, l + 1);
        }
        code = code.with_edge(n - 2, n - 1);
        debug_assert!(is_largeness_graph(&code));
        Ok(LargenessGraph(code))
    }

    /// Drop node `n-1` of a normal graph.
    pub fn restrict(&self) -> Result<LargenessGraph, GraphError> {
        if self.size() < 2 {
            return Err(GraphError::TooSmall { n: self.size(), min: 2 });
        }
        if !self.is_normal() {
            return Err(GraphError::NotNormal);
        }
        Ok(LargenessGraph(self.0.induced(0, self.size() - 1)))
    }

    /// Add node `n` (the new last node) with `{n-1, n}` and the edges the
    /// axioms force: `{i, n}` for `i < n-1` exactly when `{i, i+1}` is absent.
    pub fn extend(&self) -> Result<LargenessGraph, GraphError> {
        let n = self.size();
        if n == 0 {
            return Err(GraphError::TooSmall { n, min: 1 });
        }
        if n + 1 > MAX_GRAPH_SIZE {
            return Err(GraphError::TooLarge {
                n: n + 1,
                max: MAX_GRAPH_SIZE,
            });
        }
        let mut code = GraphCode {
            size: n + 1,
            bits: self.0.bits,
        }
        .with_edge(n - 1, n);
        for i in 0..n - 1 {
            if !self.has_edge(i, i + 1) {
                code = code.with_edge(i, n);
            }
        }
        debug_assert!(is_largeness_graph(&code));
        Ok(LargenessGraph(code))
    }

    /// Induced subgraph on `lo..hi`, relabelled from 0. Induced subgraphs on
    /// intervals are again largeness graphs.
    pub fn induced(&self, lo: usize, hi: usize) -> LargenessGraph {
        LargenessGraph(self.0.induced(lo, hi))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationMethod {
    /// Validate every edge subset; capped at [`FILTER_MAX_SIZE`].
    Filter,
    /// Build graphs from smaller ones by splitting on the least adjacent edge.
    Recursive,
}

/// Every largeness graph of size `n` in canonical order.
pub fn enumerate_graphs(n: usize, method: EnumerationMethod) -> Result<Vec<LargenessGraph>, GraphError> {
    match method {
        EnumerationMethod::Filter => enumerate_filter(n),
        EnumerationMethod::Recursive => {
            if n > RECURSIVE_MAX_SIZE {
                return Err(GraphError::TooLarge {
                    n,
                    max: RECURSIVE_MAX_SIZE,
                });
            }
            Ok(enumerate_recursive(n).pop().expect("levels 0..=n"))
        }
    }
}

fn enumerate_filter(n: usize) -> Result<Vec<LargenessGraph>, GraphError> {
    if n > FILTER_MAX_SIZE {
        return Err(GraphError::TooLarge {
            n,
            max: FILTER_MAX_SIZE,
        });
    }
    let total = 1u128 << pair_count(n);
    Ok((0..total)
        .map(|bits| GraphCode { size: n, bits })
        .filter(is_largeness_graph)
        .map(LargenessGraph)
        .collect())
}

/// Levels `0..=n` of the recursive construction.
///
/// For size `m + 1`, let `i` be the least index with `{i, i+1}` present
/// (`i = m` when there is none). The graph is then a packed graph on
/// `{0..i}` glued to an arbitrary graph on `{i+1..m}`, with `{i, i+1}`
/// present, `{j, q}` present for every `j < i < q`, and `{i, q}` absent for
/// `q > i+1`. Packed graphs of size `i+1` are `pack(extend(h))` for `h` of
/// size `i`.
fn enumerate_recursive(n: usize) -> Vec<Vec<LargenessGraph>> {
    let mut levels: Vec<Vec<LargenessGraph>> = vec![vec![LargenessGraph::trivial(0)]];
    if n >= 1 {
        levels.push(vec![LargenessGraph::trivial(1)]);
    }
    let packed_of = |levels: &[Vec<LargenessGraph>], size: usize| -> Vec<LargenessGraph> {
        if size == 1 {
            vec![LargenessGraph::trivial(1)]
        } else {
            levels[size - 1]
                .iter()
                .map(|h| h.extend().expect("size >= 1").pack())
                .collect()
        }
    };
    for size in 2..=n {
        let m = size - 1;
        let mut out = Vec::new();
        // no adjacent edge at all
        out.extend(packed_of(&levels, size));
        for i in 0..m {
            let prefixes = packed_of(&levels, i + 1);
            for prefix in &prefixes {
                for suffix in &levels[m - i] {
                    let mut code = GraphCode { size, bits: 0 }.with_edge(i, i + 1);
                    for (a, b) in prefix.edges() {
                        code = code.with_edge(a, b);
                    }
                    for (a, b) in suffix.edges() {
                        code = code.with_edge(a + i + 1, b + i + 1);
                    }
                    for j in 0..i {
                        for q in i + 1..size {
                            code = code.with_edge(j, q);
                        }
                    }
                    debug_assert!(is_largeness_graph(&code), "{code}");
                    out.push(LargenessGraph(code));
                }
            }
        }
        out.sort();
        levels.push(out);
    }
    levels
}

/// One ∼-class with its two canonical representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClass {
    pub members: Vec<LargenessGraph>,
    pub packed: Vec<LargenessGraph>,
    pub normal: Vec<LargenessGraph>,
}

/// Group `graphs` by ∼, classes ordered by their least member.
pub fn equivalence_classes(graphs: &[LargenessGraph]) -> Vec<EquivalenceClass> {
    let mut by_key: BTreeMap<(usize, u128), Vec<LargenessGraph>> = BTreeMap::new();
    for g in graphs {
        by_key.entry((g.size(), g.class_key())).or_default().push(*g);
    }
    let mut classes: Vec<EquivalenceClass> = by_key
        .into_values()
        .map(|mut members| {
            members.sort();
            let packed = members.iter().copied().filter(LargenessGraph::is_packed).collect();
            let normal = members.iter().copied().filter(LargenessGraph::is_normal).collect();
            EquivalenceClass {
                members,
                packed,
                normal,
            }
        })
        .collect();
    classes.sort_by_key(|c| c.members[0]);
    classes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lg(n: usize, edges: &[(usize, usize)]) -> LargenessGraph {
        LargenessGraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn pair_order_is_colex() {
        let order: Vec<(usize, usize)> = (0..6)
            .map(|bit| {
                let code = GraphCode::from_bits(4, 1 << bit).unwrap();
                code.edges()[0]
            })
            .collect();
        assert_eq!(order, vec![(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]);
    }

    #[test]
    fn malformed_pairs_rejected() {
        assert_eq!(
            GraphCode::from_edges(3, [(1, 1)]),
            Err(GraphError::MalformedPair { i: 1, j: 1, n: 3 })
        );
        assert_eq!(
            GraphCode::from_edges(3, [(2, 1)]),
            Err(GraphError::MalformedPair { i: 2, j: 1, n: 3 })
        );
        assert_eq!(
            GraphCode::from_edges(3, [(0, 3)]),
            Err(GraphError::MalformedPair { i: 0, j: 3, n: 3 })
        );
        assert!(matches!(
            GraphCode::from_bits(3, 1 << 3),
            Err(GraphError::MalformedPair { i: 0, j: 3, n: 3 })
        ));
    }

    #[test]
    fn axiom_a_violation_reported() {
        let code = GraphCode::from_edges(3, [(0, 1), (0, 2)]).unwrap();
        let verdict = validate_graph(&code);
        assert!(!verdict.is_valid());
        assert!(verdict.violations.contains(&Violation {
            axiom: Axiom::A,
            witness: vec![0, 2],
        }));
        assert_eq!(verdict.to_string(), "axiom (a) at i=0, j=2");
    }

    #[test]
    fn atlas_member_is_valid() {
        let code = GraphCode::from_edges(4, [(0, 2), (0, 3), (1, 3)]).unwrap();
        assert!(validate_graph(&code).is_valid());
        assert!(validate_graph(&GraphCode::empty(1).unwrap()).is_valid());
        assert!(validate_graph(&GraphCode::empty(0).unwrap()).is_valid());
    }

    #[test]
    fn each_axiom_can_fail_alone() {
        // (b): {0,1} absent, {1,2} present, {0,2} missing
        let v = validate_graph(&GraphCode::from_edges(3, [(1, 2)]).unwrap());
        assert_eq!(
            v.violations,
            vec![Violation {
                axiom: Axiom::B,
                witness: vec![0, 1]
            }]
        );
        // (c): {0,2} present, {0,3} missing
        let v = validate_graph(&GraphCode::from_edges(4, [(0, 2)]).unwrap());
        assert!(v.violates(Axiom::C));
        // (d): {0,2} absent, {0,3} present, {1,3} missing
        let v = validate_graph(&GraphCode::from_edges(4, [(0, 3)]).unwrap());
        assert_eq!(
            v.violations,
            vec![Violation {
                axiom: Axiom::D,
                witness: vec![0, 2, 3]
            }]
        );
    }

    #[test]
    fn small_counts() {
        for method in [EnumerationMethod::Filter, EnumerationMethod::Recursive] {
            let two = enumerate_graphs(2, method).unwrap();
            assert_eq!(two, vec![lg(2, &[]), lg(2, &[(0, 1)])]);
            assert_eq!(enumerate_graphs(4, method).unwrap().len(), 14);
            assert_eq!(enumerate_graphs(6, method).unwrap().len(), 132);
        }
    }

    #[test]
    fn method_guards() {
        assert_eq!(
            enumerate_graphs(8, EnumerationMethod::Filter),
            Err(GraphError::TooLarge { n: 8, max: 7 })
        );
        assert!(enumerate_graphs(15, EnumerationMethod::Recursive).is_err());
        assert_eq!(enumerate_graphs(9, EnumerationMethod::Recursive).unwrap().len(), 4862);
    }

    #[test]
    fn packed_and_normal_examples() {
        let left = lg(4, &[(1, 3)]);
        assert!(left.is_packed());
        assert!(!left.is_normal());
        let right = lg(4, &[(0, 1), (1, 3), (2, 3)]);
        assert!(!right.is_packed());
        assert!(right.is_normal());
        let edge = lg(2, &[(0, 1)]);
        assert!(edge.is_normal());
        assert!(!edge.is_packed());
        assert!(lg(2, &[]).is_packed());
    }

    #[test]
    fn equivalence_examples() {
        assert!(lg(2, &[]).equivalent(&lg(2, &[(0, 1)])).unwrap());
        assert!(lg(4, &[(1, 3)]).equivalent(&lg(4, &[(0, 1), (1, 3), (2, 3)])).unwrap());
        assert!(!lg(4, &[(1, 3)]).equivalent(&lg(4, &[(0, 2), (0, 3), (1, 3)])).unwrap());
        assert_eq!(
            lg(2, &[]).equivalent(&lg(3, &[])),
            Err(GraphError::SizeMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn pack_examples() {
        assert_eq!(lg(4, &[(0, 1), (1, 3), (2, 3)]).pack(), lg(4, &[(1, 3)]));
        assert_eq!(lg(5, &[]).pack(), lg(5, &[]));
        assert_eq!(lg(4, &[(0, 1), (1, 2), (2, 3)]).pack(), lg(4, &[]));
    }

    #[test]
    fn normalize_examples() {
        let normal = lg(4, &[(0, 1), (1, 3), (2, 3)]);
        assert_eq!(lg(4, &[(1, 3)]).normalize().unwrap(), normal);
        assert_eq!(normal.normalize().unwrap(), normal);
        assert_eq!(lg(2, &[]).normalize().unwrap(), lg(2, &[(0, 1)]));
        assert_eq!(lg(1, &[]).normalize(), Err(GraphError::TooSmall { n: 1, min: 2 }));
    }

    #[test]
    fn restrict_extend_examples() {
        let normal = lg(4, &[(0, 1), (1, 3), (2, 3)]);
        let small = normal.restrict().unwrap();
        assert_eq!(small, lg(3, &[(0, 1)]));
        assert_eq!(small.extend().unwrap(), normal);
        assert_eq!(lg(1, &[]).extend().unwrap(), lg(2, &[(0, 1)]));
        assert_eq!(lg(4, &[(1, 3)]).restrict(), Err(GraphError::NotNormal));
        let normals = enumerate_graphs(5, EnumerationMethod::Recursive)
            .unwrap()
            .into_iter()
            .filter(LargenessGraph::is_normal)
            .count();
        assert_eq!(normals, 14);
    }

    #[test]
    fn size_four_classes() {
        let graphs = enumerate_graphs(4, EnumerationMethod::Recursive).unwrap();
        let classes = equivalence_classes(&graphs);
        assert_eq!(classes.len(), 5);
        for class in &classes {
            assert_eq!(class.packed.len(), 1);
            assert_eq!(class.normal.len(), 1);
        }
        let mut packed: Vec<_> = classes.iter().map(|c| c.packed[0]).collect();
        packed.sort();
        let mut atlas = vec![
            lg(4, &[]),
            lg(4, &[(1, 3)]),
            lg(4, &[(1, 3), (0, 3)]),
            lg(4, &[(0, 2), (0, 3)]),
            lg(4, &[(0, 2), (1, 3), (0, 3)]),
        ];
        atlas.sort();
        assert_eq!(packed, atlas);
    }

    #[test]
    fn json_and_dot() {
        let g = lg(4, &[(1, 3), (0, 3)]);
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"n":4,"edges":[[0,3],[1,3]]}"#);
        let back: LargenessGraph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<LargenessGraph>(r#"{"n":3,"edges":[[0,1],[0,2]]}"#).is_err());
        let dot = g.code().to_dot();
        assert!(dot.contains("{ rank=same; 0; 1; 2; 3; }"));
        assert!(dot.contains("0 -- 3;"));
    }
}
