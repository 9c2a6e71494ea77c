//! Dominating functions extracted from thin sets for the gap and largeness
//! colorings.

use serde::Serialize;

use super::search::ThinWitness;
use super::transitive::avoided_colors;
use super::ExtractError;
use crate::catalan::LargenessGraph;
use crate::colorings::{
    for_each_combination, gap_vector, largeness_color, stage_small_clamped, ApproxTable, Color, Coloring, Gap,
    GapVector, TableError,
};

/// A finite function `h` with the certificate `h(i) >= g(i)` at every
/// point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominationWitness {
    /// `(i, h(i), g(i))`.
    pub certificate: Vec<(u64, u64, u64)>,
    /// The cases taken, outermost first.
    pub path: Vec<String>,
}

impl DominationWitness {
    /// Re-check `h(i) >= g(i)` against the table.
    pub fn verify(&self, g: &ApproxTable) -> bool {
        !self.certificate.is_empty()
            && self
                .certificate
                .iter()
                .all(|&(i, h, gi)| g.truth(i) == Ok(gi) && h >= gi)
    }
}

/// Tabulate `h` on `0, 1, ..` until it runs out of data or leaves the
/// table, certifying every point.
fn certify(
    mut h: impl FnMut(u64) -> Option<u64>,
    g: &ApproxTable,
    case: &str,
    path: Vec<String>,
) -> Result<DominationWitness, ExtractError> {
    let mut certificate = Vec::new();
    for i in 0..g.stable_bound() as u64 {
        let Some(value) = h(i) else { break };
        let gi = g.truth(i)?;
        if value < gi {
            return Err(ExtractError::CertificateFailed {
                detail: format!("{case}: h({i}) = {value} < g({i}) = {gi}"),
            });
        }
        certificate.push((i, value, gi));
    }
    if certificate.is_empty() {
        return Err(ExtractError::InsufficientData {
            case: case.into(),
            detail: "H is too short to define h(0)".into(),
        });
    }
    Ok(DominationWitness { certificate, path })
}

/// Least `k`-subset of `h` (lexicographic) satisfying `pred`.
fn least_tuple(
    h: &[u64],
    k: usize,
    mut pred: impl FnMut(&[u64]) -> Result<bool, ExtractError>,
) -> Result<Option<Vec<u64>>, ExtractError> {
    let mut found = None;
    let mut failure = None;
    let mut tuple = vec![0u64; k];
    for_each_combination(h.len(), k, |idx| {
        for (t, &i) in tuple.iter_mut().zip(idx) {
            *t = h[i];
        }
        match pred(&tuple) {
            Ok(true) => {
                found = Some(tuple.clone());
                false
            }
            Ok(false) => true,
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// `{z ∈ H : z > x, [x, z] large}`.
fn above_threshold(h: &[u64], x: u64, g: &ApproxTable) -> Result<Vec<u64>, ExtractError> {
    if x >= g.stable_bound() as u64 {
        return Err(TableError::AboveStableBound {
            a: x,
            bound: g.stable_bound(),
        }
        .into());
    }
    let gx = g.truth(x)?;
    Ok(h.iter().copied().filter(|&z| z > x && z >= gx).collect())
}

/// Dominating function from a thin set for the gap coloring `f_n`.
///
/// Each avoided color is tried in codec order; the first that certifies
/// wins.
pub fn extract_dominator_gap(
    witness: &ThinWitness,
    f: &Coloring,
    g: &ApproxTable,
) -> Result<DominationWitness, ExtractError> {
    if f.arity() == 1 {
        return Err(ExtractError::NoThinSet);
    }
    let colors: Vec<GapVector> = avoided_colors(witness, f)?
        .into_iter()
        .map(|c| match c {
            Color::Gap(v) => Ok(v.clone()),
            other => Err(ExtractError::WrongPalette {
                expected: "gap vector",
                found: other.to_string(),
            }),
        })
        .collect::<Result<_, _>>()?;
    let mut first_error = None;
    for color in colors {
        match gap_case(&witness.subset, &color, g, Vec::new()) {
            Ok(w) => return Ok(w),
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    Err(first_error.expect("at least one avoided color"))
}

/// `h` avoids `color` under `f_{|color|+1}`.
fn gap_case(
    h: &[u64],
    color: &GapVector,
    g: &ApproxTable,
    mut path: Vec<String>,
) -> Result<DominationWitness, ExtractError> {
    let n = color.len() + 1;
    if n == 1 {
        // f_1 has a single color; only the empty set avoids it
        return Err(ExtractError::InsufficientData {
            case: path.last().cloned().unwrap_or_else(|| "arity 1".into()),
            detail: "reduced to the one-color coloring f_1, which no non-empty set avoids".into(),
        });
    }
    match color.0.iter().rposition(|&j| j == Gap::Large) {
        None => {
            path.push(format!("case 1 (avoids {color}): h(i) = p_H(i+{n})"));
            certify(|i| h.get(i as usize + n).copied(), g, "case 1", path)
        }
        Some(i) => {
            let prefix = GapVector(color.0[..i].to_vec());
            let realizing = least_tuple(h, i + 1, |t| Ok(gap_vector(t, g)? == prefix))?;
            match realizing {
                None => {
                    path.push(format!("case 2.1 (prefix {prefix} avoided, arity {})", i + 1));
                    gap_case(h, &prefix, g, path)
                }
                Some(tuple) => {
                    let xi = tuple[i];
                    let rest = above_threshold(h, xi, g)?;
                    let m = n - i - 1;
                    path.push(format!(
                        "case 2.2 (prefix realized by {tuple:?}, threshold g({xi}), h(u) = p_H'(u+{m}))"
                    ));
                    if m < 2 {
                        return Err(ExtractError::InsufficientData {
                            case: "case 2.2".into(),
                            detail: format!("residual arity {m}: H above g({xi}) must be empty"),
                        });
                    }
                    certify(|u| rest.get(u as usize + m).copied(), g, "case 2.2", path)
                }
            }
        }
    }
}

/// Dominating function from a thin set for the largeness coloring `f_n`.
pub fn extract_dominator_largeness(
    witness: &ThinWitness,
    f: &Coloring,
    g: &ApproxTable,
) -> Result<DominationWitness, ExtractError> {
    if f.arity() == 1 {
        return Err(ExtractError::NoThinSet);
    }
    let graphs: Vec<LargenessGraph> = avoided_colors(witness, f)?
        .into_iter()
        .map(|c| match c {
            Color::Graph(graph) => Ok(*graph),
            other => Err(ExtractError::WrongPalette {
                expected: "largeness graph",
                found: other.to_string(),
            }),
        })
        .collect::<Result<_, _>>()?;
    let mut first_error = None;
    for graph in graphs {
        match largeness_case(&witness.subset, &graph, g, Vec::new()) {
            Ok(w) => return Ok(w),
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    Err(first_error.expect("at least one avoided color"))
}

/// Whether the non-adjacent edges of the tuple's color match `gamma`,
/// decided from stage values alone.
pub fn in_w(tuple: &[u64], gamma: &LargenessGraph, g: &ApproxTable) -> Result<bool, ExtractError> {
    let n = tuple.len();
    for i in 0..n.saturating_sub(2) {
        for j in i + 2..n {
            if stage_small_clamped(tuple[i], tuple[i + 1], tuple[j], g)? != gamma.has_edge(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `h` avoids `gamma` under the largeness coloring of its size.
fn largeness_case(
    h: &[u64],
    gamma: &LargenessGraph,
    g: &ApproxTable,
    mut path: Vec<String>,
) -> Result<DominationWitness, ExtractError> {
    let n = gamma.size();
    if n <= 1 {
        return Err(ExtractError::InsufficientData {
            case: path.last().cloned().unwrap_or_else(|| "size 1".into()),
            detail: "reduced to the one-graph coloring f_1, which no non-empty set avoids".into(),
        });
    }
    match (0..n - 1).find(|&i| gamma.has_edge(i, i + 1)) {
        Some(i) => {
            let prefix = gamma.induced(0, i + 1);
            let realizing = least_tuple(h, i + 1, |t| Ok(largeness_color(t, g)? == prefix))?;
            let Some(tuple) = realizing else {
                path.push(format!("case 1 (prefix of size {} avoided)", i + 1));
                return largeness_case(h, &prefix, g, path);
            };
            let xi = tuple[i];
            let rest = above_threshold(h, xi, g)?;
            let suffix = gamma.induced(i + 1, n);
            path.push(format!(
                "case 1 (prefix realized by {tuple:?}; suffix of size {} above g({xi}))",
                n - i - 1
            ));
            if let Some(bad) = least_tuple(&rest, n - i - 1, |t| Ok(largeness_color(t, g)? == suffix))? {
                let mut full = tuple;
                full.extend(bad);
                return Err(ExtractError::CertificateFailed {
                    detail: format!("{full:?} should be colored by the avoided graph"),
                });
            }
            largeness_case(&rest, &suffix, g, path)
        }
        None => {
            path.push(format!(
                "case 2 (packed graph {gamma}): h(t) = last point of the least W-tuple above t"
            ));
            let mut failure = None;
            let witness = certify(
                |t| {
                    let above: Vec<u64> = h.iter().copied().filter(|&x| x > t).collect();
                    match least_tuple(&above, n, |tuple| in_w(tuple, gamma, g)) {
                        Ok(found) => found.map(|tuple| tuple[n - 1]),
                        Err(e) => {
                            failure = Some(e);
                            None
                        }
                    }
                },
                g,
                "case 2",
                path,
            );
            match failure {
                Some(e) => Err(e),
                None => witness,
            }
        }
    }
}
