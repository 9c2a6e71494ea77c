//! g-transitive sets: the five-color extraction and exact transitive
//! subtournaments.

use serde::Serialize;

use super::search::ThinWitness;
use super::{ExtractError, SearchError};
use crate::colorings::{is_g_large, ApproxTable, Color, Coloring, Gap, TableError, Tournament, TripleGap};

/// First `x < y < z` in `h` (lexicographic) with `[x,y]`, `[y,z]` small and
/// `[x,z]` large, or `None` when `h` is g-transitive.
pub fn is_g_transitive(h: &[u64], g: &ApproxTable) -> Result<Option<[u64; 3]>, TableError> {
    let small = |a: u64, b: u64| is_g_large(a, b, g).map(|gap| gap == Gap::Small);
    for (a, &x) in h.iter().enumerate() {
        for (b, &y) in h.iter().enumerate().skip(a + 1) {
            if !small(x, y)? {
                continue;
            }
            for &z in &h[b + 1..] {
                if small(y, z)? && !small(x, z)? {
                    return Ok(Some([x, y, z]));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransitiveKind {
    /// Every interval of the set is large.
    AllLarge,
    /// Some intervals are small, but small-small triples close up.
    TransitiveWithSmall,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitiveWitness {
    #[serde(rename = "H")]
    pub subset: Vec<u64>,
    pub kind: TransitiveKind,
    /// The avoided color the extraction used.
    pub avoided: TripleGap,
}

impl TransitiveWitness {
    fn new(subset: Vec<u64>, avoided: TripleGap, g: &ApproxTable) -> Result<Self, ExtractError> {
        if let Some(triple) = is_g_transitive(&subset, g)? {
            return Err(ExtractError::CertificateFailed {
                detail: format!("output is not g-transitive at {triple:?}"),
            });
        }
        let kind = if all_large(&subset, g)? {
            TransitiveKind::AllLarge
        } else {
            TransitiveKind::TransitiveWithSmall
        };
        Ok(TransitiveWitness { subset, kind, avoided })
    }

    pub fn verify(&self, g: &ApproxTable) -> bool {
        matches!(is_g_transitive(&self.subset, g), Ok(None))
    }
}

fn all_large(h: &[u64], g: &ApproxTable) -> Result<bool, TableError> {
    for (a, &x) in h.iter().enumerate() {
        for &y in &h[a + 1..] {
            if is_g_large(x, y, g)? == Gap::Small {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Check that `witness` is a genuine thin set for `f` and return its
/// avoided colors.
pub(crate) fn avoided_colors<'a>(witness: &ThinWitness, f: &'a Coloring) -> Result<Vec<&'a Color>, ExtractError> {
    if !witness.verify(f) {
        return Err(ExtractError::WitnessMismatch);
    }
    if witness.avoided.is_empty() {
        return Err(ExtractError::NotThin);
    }
    Ok(witness
        .avoided
        .iter()
        .map(|&c| f.palette().color(c).expect("code in palette"))
        .collect())
}

/// Case order of an avoided triple: ⟨1,1,1⟩, ⟨0,1,1⟩,
/// ⟨1,0,1⟩, ⟨0,0,1⟩, ⟨0,0,0⟩.
fn case_rank(c: TripleGap) -> usize {
    match c.0 {
        [1, 1, 1] => 1,
        [0, 1, 1] => 2,
        [1, 0, 1] => 3,
        [0, 0, 1] => 4,
        _ => 5,
    }
}

/// Turn a thin set for the five-color triple coloring into a g-transitive
/// set of size at least `⌊(|H|-2)/2⌋`.
///
/// Avoided colors are tried in case order; the first that yields a set
/// wins, otherwise the first failure is reported.
pub fn extract_transitive(
    witness: &ThinWitness,
    f: &Coloring,
    g: &ApproxTable,
) -> Result<TransitiveWitness, ExtractError> {
    let h = &witness.subset;
    if h.len() < 4 {
        return Err(ExtractError::InsufficientData {
            case: "five-color extraction".into(),
            detail: format!("need |H| >= 4, got {}", h.len()),
        });
    }
    let mut avoided: Vec<TripleGap> = avoided_colors(witness, f)?
        .into_iter()
        .map(|c| match c {
            Color::Triple(t) => Ok(*t),
            other => Err(ExtractError::WrongPalette {
                expected: "triple gap",
                found: other.to_string(),
            }),
        })
        .collect::<Result<_, _>>()?;
    avoided.sort_by_key(|&c| case_rank(c));
    let min_size = (h.len() - 2) / 2;
    let mut first_error = None;
    for c in avoided {
        match transitive_case(h, c, g, min_size) {
            Ok(w) => return Ok(w),
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    Err(first_error.expect("at least one avoided color"))
}

fn transitive_case(
    h: &[u64],
    c: TripleGap,
    g: &ApproxTable,
    min_size: usize,
) -> Result<TransitiveWitness, ExtractError> {
    match c.0 {
        [1, 1, 1] => Err(ExtractError::ImpossibleCase {
            case: "⟨1,1,1⟩".into(),
            detail: "an infinite set always contains a large-large triple; H is too short to show one".into(),
        }),
        [0, 1, 1] => {
            if all_large(h, g)? {
                TransitiveWitness::new(h.to_vec(), c, g)
            } else {
                Err(ExtractError::InsufficientData {
                    case: "⟨0,1,1⟩".into(),
                    detail: "H has a small interval but no point far enough to expose it".into(),
                })
            }
        }
        [1, 0, 1] => {
            // the large pair [x,y] with least y leaves the longest tail
            let mut best: Option<usize> = None;
            'outer: for (b, &y) in h.iter().enumerate().skip(1) {
                for &x in &h[..b] {
                    if is_g_large(x, y, g)? == Gap::Large {
                        best = Some(b);
                        break 'outer;
                    }
                }
            }
            let Some(b) = best else {
                return Err(ExtractError::InsufficientData {
                    case: "⟨1,0,1⟩".into(),
                    detail: "no large pair in H".into(),
                });
            };
            let tail = h[b + 1..].to_vec();
            if tail.len() < min_size {
                return Err(ExtractError::InsufficientData {
                    case: "⟨1,0,1⟩".into(),
                    detail: format!(
                        "tail above the first large pair has {} < {min_size} elements",
                        tail.len()
                    ),
                });
            }
            TransitiveWitness::new(tail, c, g)
        }
        [0, 0, 1] => TransitiveWitness::new(h.to_vec(), c, g),
        _ => TransitiveWitness::new(h.iter().step_by(2).copied().collect(), c, g),
    }
}

/// Largest vertex set on which `t` is transitive (lexicographically least
/// among the largest).
pub fn max_transitive_subtournament(t: &Tournament, guard: usize) -> Result<Vec<u64>, SearchError> {
    let n = t.len();
    if n > guard {
        return Err(SearchError::TooLarge {
            what: "tournament vertices",
            size: n as u64,
            max: guard as u64,
        });
    }
    struct State<'a> {
        t: &'a Tournament,
        current: Vec<usize>,
        best: Vec<usize>,
    }
    fn closes_cycle(t: &Tournament, current: &[usize], v: usize) -> bool {
        current.iter().enumerate().any(|(a, &i)| {
            current[a + 1..].iter().any(|&j| {
                // i -> j -> v -> i or the reverse
                let (ij, jv, vi) = (t.beats_at(i, j), t.beats_at(j, v), t.beats_at(v, i));
                ij == jv && jv == vi
            })
        })
    }
    fn dfs(s: &mut State, v: usize) {
        let n = s.t.len();
        if s.current.len() > s.best.len() {
            s.best = s.current.clone();
        }
        if v == n || s.current.len() + (n - v) <= s.best.len() {
            return;
        }
        if !closes_cycle(s.t, &s.current, v) {
            s.current.push(v);
            dfs(s, v + 1);
            s.current.pop();
        }
        dfs(s, v + 1);
    }
    let mut state = State {
        t,
        current: Vec::new(),
        best: Vec::new(),
    };
    dfs(&mut state, 0);
    Ok(state.best.into_iter().map(|i| t.domain()[i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::{gap3_coloring, tournament_from_g};

    fn exact(values: &[u64]) -> ApproxTable {
        ApproxTable::exact(values).unwrap()
    }

    #[test]
    fn transitivity_examples() {
        let g = exact(&(0..10).map(|x| x + 3).collect::<Vec<_>>());
        assert_eq!(is_g_transitive(&[0, 1, 2], &g), Ok(None));
        let g = exact(&[2, 3, 4, 5, 6]);
        assert_eq!(is_g_transitive(&[0, 1, 2], &g), Ok(Some([0, 1, 2])));
        let sparse = exact(&(0..20).map(|x| x + 1).collect::<Vec<_>>());
        assert_eq!(is_g_transitive(&[0, 3, 9, 12], &sparse), Ok(None));
    }

    #[test]
    fn case_avoiding_001_returns_h() {
        // g(x) = x + 4 on 0..=3: everything small, so ⟨0,0,1⟩ is avoided
        let g = exact(&(0..12).map(|x| x + 4).collect::<Vec<_>>());
        let f = gap3_coloring(&g, (0..8).collect()).unwrap();
        let w = ThinWitness::from_subset(&f, vec![0, 1, 2, 3], 4).unwrap();
        let out = extract_transitive(&w, &f, &g).unwrap();
        assert_eq!(out.subset, vec![0, 1, 2, 3]);
        assert_eq!(out.avoided, TripleGap([0, 0, 1]));
        assert_eq!(out.kind, TransitiveKind::TransitiveWithSmall);
    }

    #[test]
    fn case_avoiding_000_takes_even_positions() {
        // g(x) = x + 2: consecutive points small, distance 2 large
        let g = exact(&(0..12).map(|x| x + 2).collect::<Vec<_>>());
        let f = gap3_coloring(&g, (0..12).collect()).unwrap();
        let h = vec![0, 1, 3, 4, 6, 7];
        let w = ThinWitness::from_subset(&f, h, 4).unwrap();
        let colors: Vec<&Color> = w.avoided.iter().map(|&c| f.palette().color(c).unwrap()).collect();
        assert!(colors.contains(&&Color::Triple(TripleGap([0, 0, 0]))));
        let out = transitive_case(&w.subset, TripleGap([0, 0, 0]), &g, 2).unwrap();
        assert_eq!(out.subset, vec![0, 3, 6]);
    }

    #[test]
    fn all_large_avoiding_011() {
        let g = exact(&(0..40).map(|x| x + 1).collect::<Vec<_>>());
        let f = gap3_coloring(&g, (0..20).collect()).unwrap();
        let w = ThinWitness::from_subset(&f, vec![1, 4, 9, 15], 4).unwrap();
        let out = transitive_case(&w.subset, TripleGap([0, 1, 1]), &g, 1).unwrap();
        assert_eq!(out.subset, vec![1, 4, 9, 15]);
        assert_eq!(out.kind, TransitiveKind::AllLarge);
    }

    #[test]
    fn rejects_non_thin_and_short_sets() {
        let g = exact(&(0..20).map(|x| x + 2).collect::<Vec<_>>());
        let f = gap3_coloring(&g, (0..10).collect()).unwrap();
        let short = ThinWitness::from_subset(&f, vec![0, 1, 2], 5).unwrap();
        assert!(matches!(
            extract_transitive(&short, &f, &g),
            Err(ExtractError::InsufficientData { .. })
        ));
        let mut forged = ThinWitness::from_subset(&f, vec![0, 1, 2, 5], 5).unwrap();
        forged.used.pop();
        assert_eq!(extract_transitive(&forged, &f, &g), Err(ExtractError::WitnessMismatch));
    }

    #[test]
    fn transitive_tournament_kept_whole() {
        let t = Tournament::from_fn((0..5).collect(), |_, _| true).unwrap();
        assert_eq!(max_transitive_subtournament(&t, 24).unwrap(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn three_cycle_gives_least_pair() {
        let t = Tournament::from_arcs(vec![0, 1, 2], &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(max_transitive_subtournament(&t, 24).unwrap(), vec![0, 1]);
    }

    #[test]
    fn tournament_guard() {
        let t = Tournament::from_fn((0..30).collect(), |_, _| true).unwrap();
        assert!(max_transitive_subtournament(&t, 24).is_err());
    }

    #[test]
    fn tournament_from_g_result_is_g_transitive() {
        let g = exact(&[2, 4, 5, 9, 10, 11, 13, 14, 16, 17, 19, 20]);
        let t = tournament_from_g(&g, (0..12).collect()).unwrap();
        let best = max_transitive_subtournament(&t, 24).unwrap();
        assert!(best.len() >= 3);
        assert_eq!(is_g_transitive(&best, &g), Ok(None));
    }
}
