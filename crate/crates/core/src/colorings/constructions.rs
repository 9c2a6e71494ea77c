//! The explicit colorings built from an increasing function `g`.

use super::approx::{is_g_large, stage_small_clamped, ApproxTable, Gap, TableError};
use super::coloring::{Color, Coloring, ColoringError, GapVector, Palette, TripleGap};
use crate::catalan::{enumerate_graphs, EnumerationMethod, GraphCode, LargenessGraph};

/// Largest arity for which the largeness palette (all `d_n` graphs) is built.
pub const LARGENESS_MAX_ARITY: usize = 10;

/// Every point used as a left endpoint must be below the stable bound; with
/// arity ≥ 2 that is every point but the largest.
fn check_left_endpoints(arity: usize, domain: &[u64], g: &ApproxTable) -> Result<(), ColoringError> {
    if arity >= 2 && domain.len() >= 2 {
        g.check_domain(&domain[..domain.len() - 1])?;
    }
    Ok(())
}

pub fn gap_vector(tuple: &[u64], g: &ApproxTable) -> Result<GapVector, TableError> {
    tuple
        .windows(2)
        .map(|w| is_g_large(w[0], w[1], g))
        .collect::<Result<_, _>>()
        .map(GapVector)
}

/// `f_n(x_0..x_{n-1}) = ⟨gap(x_0,x_1), .., gap(x_{n-2},x_{n-1})⟩` into
/// `2^{n-1}` colors.
pub fn gap_coloring(n: usize, g: &ApproxTable, domain: Vec<u64>) -> Result<Coloring, ColoringError> {
    if n == 0 {
        return Err(ColoringError::Arity {
            arity: n,
            reason: "gap colorings need n >= 1",
        });
    }
    if n > 25 {
        return Err(ColoringError::Arity {
            arity: n,
            reason: "palette of 2^(n-1) colors is too large",
        });
    }
    check_left_endpoints(n, &domain, g)?;
    let palette = Palette::new(GapVector::all(n - 1).into_iter().map(Color::Gap).collect())?;
    Coloring::from_fn(n, domain, palette, |t| Ok(Color::Gap(gap_vector(t, g)?)))
}

/// The graph of a tuple: `{i,i+1}` iff `[x_i,x_{i+1}]` is large, and for
/// `i+1 < j`, `{i,j}` iff `[x_i,x_{i+1}]` is still small at stage `x_j`.
///
/// Fails if the result is not a largeness graph, which only happens for
/// tables violating the normalization invariants.
pub fn largeness_color(tuple: &[u64], g: &ApproxTable) -> Result<LargenessGraph, ColoringError> {
    let n = tuple.len();
    let mut edges = Vec::new();
    for i in 0..n.saturating_sub(1) {
        if is_g_large(tuple[i], tuple[i + 1], g)? == Gap::Large {
            edges.push((i, i + 1));
        }
        for j in i + 2..n {
            if stage_small_clamped(tuple[i], tuple[i + 1], tuple[j], g)? {
                edges.push((i, j));
            }
        }
    }
    let code = GraphCode::from_edges(n, edges).map_err(|source| ColoringError::InvalidGraph {
        tuple: tuple.to_vec(),
        source,
    })?;
    LargenessGraph::try_from(code).map_err(|source| ColoringError::InvalidGraph {
        tuple: tuple.to_vec(),
        source,
    })
}

/// Coloring of `[D]^n` by largeness graphs; the palette is all `d_n` graphs.
pub fn largeness_coloring(n: usize, g: &ApproxTable, domain: Vec<u64>) -> Result<Coloring, ColoringError> {
    if n == 0 || n > LARGENESS_MAX_ARITY {
        return Err(ColoringError::Arity {
            arity: n,
            reason: "largeness colorings support 1 <= n <= 10",
        });
    }
    check_left_endpoints(n, &domain, g)?;
    let graphs = enumerate_graphs(n, EnumerationMethod::Recursive).map_err(|source| ColoringError::InvalidGraph {
        tuple: Vec::new(),
        source,
    })?;
    let palette = Palette::new(graphs.into_iter().map(Color::Graph).collect())?;
    Coloring::from_fn(n, domain, palette, |t| Ok(Color::Graph(largeness_color(t, g)?)))
}

pub fn gap3_color(x: u64, y: u64, z: u64, g: &ApproxTable) -> Result<TripleGap, ColoringError> {
    let bit = |a, b| is_g_large(a, b, g).map(|gap| (gap == Gap::Large) as u8);
    let color = TripleGap([bit(x, y)?, bit(y, z)?, bit(x, z)?]);
    if color.is_feasible() {
        Ok(color)
    } else {
        Err(ColoringError::InfeasibleColor {
            tuple: vec![x, y, z],
            color,
        })
    }
}

/// `f(x,y,z) = ⟨i(x,y), i(y,z), i(x,z)⟩` into the five feasible vectors.
pub fn gap3_coloring(g: &ApproxTable, domain: Vec<u64>) -> Result<Coloring, ColoringError> {
    check_left_endpoints(3, &domain, g)?;
    let palette = Palette::new(TripleGap::FEASIBLE.iter().copied().map(Color::Triple).collect())?;
    Coloring::from_fn(3, domain, palette, |t| {
        Ok(Color::Triple(gap3_color(t[0], t[1], t[2], g)?))
    })
}

/// `f(x,y) = f̃(⌊x/2⌋,⌊y/2⌋)` for even `x` and `1 - f̃(⌊x/2⌋,⌊y/2⌋)` for odd
/// `x`, on the domain `0..2M` when `base` lives on `0..M`.
///
/// Pairs `(2a, 2a+1)` have no base pair; `f̃(a,a)` is read as code 0.
pub fn doubling_coloring(base: &Coloring) -> Result<Coloring, ColoringError> {
    if base.arity() != 2 {
        return Err(ColoringError::Arity {
            arity: base.arity(),
            reason: "doubling needs a coloring of pairs",
        });
    }
    if base.palette().len() != 2 {
        return Err(ColoringError::Mismatch {
            what: "palette size (need 2 colors)",
        });
    }
    let m = base.domain().len() as u64;
    if base.domain().iter().enumerate().any(|(i, &x)| x != i as u64) {
        return Err(ColoringError::Mismatch {
            what: "domain (need 0..M)",
        });
    }
    let domain: Vec<u64> = (0..2 * m).collect();
    Coloring::from_codes(2, domain, base.palette().clone(), |t| {
        let (x1, y1) = (t[0] / 2, t[1] / 2);
        let tilde = if x1 == y1 {
            0
        } else {
            base.code(&[x1, y1]).expect("pair lies in the base domain")
        };
        if t[0] % 2 == 0 {
            tilde
        } else {
            1 - tilde
        }
    })
}

/// Result of [`split_homogeneous`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    /// `{x : 2x ∈ H}`, homogeneous for `color` under the base coloring.
    pub even: Vec<u64>,
    /// `{x : 2x+1 ∈ H}`, homogeneous for `1 - color`.
    pub odd: Vec<u64>,
    /// The color of `H` under the doubled coloring.
    pub color: u32,
}

/// Halve an `f`-homogeneous set of a doubled coloring into its even and odd
/// parts.
pub fn split_homogeneous(h: &[u64], doubled: &Coloring) -> Result<Split, ColoringError> {
    if doubled.arity() != 2 || doubled.palette().len() != 2 {
        return Err(ColoringError::Arity {
            arity: doubled.arity(),
            reason: "split needs a 2-coloring of pairs",
        });
    }
    let mut color: Option<(u32, [u64; 2])> = None;
    for (a, &x) in h.iter().enumerate() {
        for &y in &h[a + 1..] {
            let c = doubled
                .code(&[x, y])
                .ok_or_else(|| ColoringError::BadTuple { tuple: vec![x, y] })?;
            match color {
                None => color = Some((c, [x, y])),
                Some((first, pair)) if first != c => return Err(ColoringError::NotHomogeneous { pair, other: [x, y] }),
                Some(_) => {}
            }
        }
    }
    let color = match color {
        Some((c, _)) => c,
        // fewer than two points: homogeneous for either color; report 0
        None => {
            if let Some(&x) = h.iter().find(|x| doubled.domain().binary_search(x).is_err()) {
                return Err(ColoringError::BadTuple { tuple: vec![x] });
            }
            0
        }
    };
    let even = h.iter().filter(|&&x| x % 2 == 0).map(|&x| x / 2).collect();
    let odd = h.iter().filter(|&&x| x % 2 == 1).map(|&x| x / 2).collect();
    Ok(Split { even, odd, color })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalan::{is_largeness_graph, validate_graph};

    fn exact(g: impl Fn(u64) -> u64, width: u64) -> ApproxTable {
        ApproxTable::exact(&(0..width).map(g).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn gap_examples() {
        let g = exact(|x| 2 * x + 1, 16);
        let f1 = gap_coloring(1, &g, (0..5).collect()).unwrap();
        assert_eq!(f1.palette().len(), 1);
        assert_eq!(f1.color(&[3]), Some(&Color::Gap(GapVector(vec![]))));
        let f2 = gap_coloring(2, &g, (0..8).collect()).unwrap();
        assert_eq!(f2.color(&[1, 3]), Some(&Color::Gap(GapVector(vec![Gap::Large]))));
        let f3 = gap_coloring(3, &g, (0..8).collect()).unwrap();
        assert_eq!(f3.palette().len(), 4);
        assert_eq!(
            f3.color(&[1, 2, 6]),
            Some(&Color::Gap(GapVector(vec![Gap::Small, Gap::Large])))
        );
        assert_eq!(gap_coloring(4, &g, (0..8).collect()).unwrap().palette().len(), 8);
    }

    #[test]
    fn gap_domain_guard() {
        let g = ApproxTable::new(vec![vec![1, 2, 3, 4]], 2).unwrap();
        assert!(gap_coloring(2, &g, vec![0, 1, 2]).is_ok());
        assert!(matches!(
            gap_coloring(2, &g, vec![0, 1, 2, 3]),
            Err(ColoringError::Table(TableError::AboveStableBound { a: 2, bound: 2 }))
        ));
    }

    #[test]
    fn largeness_example_constant_stages() {
        let g = ApproxTable::new(vec![(2..10).collect(); 3], 8).unwrap();
        let graph = largeness_color(&[0, 1, 2, 3], &g).unwrap();
        assert_eq!(graph.edges(), vec![(0, 2), (0, 3), (1, 3)]);
        assert!(validate_graph(&graph.code()).is_valid());
    }

    #[test]
    fn largeness_sparse_tuple_has_only_adjacent_edges() {
        let g = exact(|x| x + 1, 12);
        let graph = largeness_color(&[1, 3, 6, 10], &g).unwrap();
        assert_eq!(graph.edges(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn largeness_arity_one() {
        let g = exact(|x| x + 1, 4);
        let f = largeness_coloring(1, &g, (0..4).collect()).unwrap();
        assert_eq!(f.palette().len(), 1);
        assert_eq!(f.used_codes(&[0, 1, 2, 3]), Some(vec![0]));
    }

    #[test]
    fn largeness_staged_table_stays_valid() {
        let g = normalize_approx_example();
        let domain: Vec<u64> = (0..g.stable_bound() as u64).collect();
        let f = largeness_coloring(4, &g, domain).unwrap();
        assert_eq!(f.palette().len(), 14);
        f.for_each(|_, c| match f.palette().color(c) {
            Some(Color::Graph(graph)) => assert!(is_largeness_graph(&graph.code())),
            other => panic!("unexpected color {other:?}"),
        });
    }

    fn normalize_approx_example() -> ApproxTable {
        let raw: Vec<Vec<u64>> = vec![
            vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
            vec![1, 4, 5, 6, 7, 8, 9, 10, 11, 12],
            vec![3, 4, 8, 9, 10, 11, 12, 13, 14, 15],
            vec![3, 4, 8, 9, 10, 11, 12, 13, 14, 15],
        ];
        super::super::approx::normalize_approximations(&raw).unwrap()
    }

    #[test]
    fn gap3_examples() {
        let g = exact(|x| x + 3, 10);
        assert_eq!(gap3_color(0, 1, 2, &g).unwrap(), TripleGap([0, 0, 0]));
        let g1 = exact(|x| x + 1, 10);
        let f = gap3_coloring(&g1, (0..6).collect()).unwrap();
        assert_eq!(f.used_codes(&(0..6).collect::<Vec<_>>()), Some(vec![4]));
        assert_eq!(f.palette().len(), 5);
    }

    #[test]
    fn gap3_rejects_non_increasing() {
        // passes the table checks only on its own row shape; decreasing truth is refused earlier
        let bad = ApproxTable::new(vec![vec![5, 3, 4]], 3);
        assert!(bad.is_err());
    }

    fn base(values: impl Fn(u64, u64) -> u32, m: u64) -> Coloring {
        Coloring::from_codes(2, (0..m).collect(), Palette::indexed(2), |t| values(t[0], t[1])).unwrap()
    }

    #[test]
    fn doubling_examples() {
        let zero = base(|_, _| 0, 4);
        let f = doubling_coloring(&zero).unwrap();
        f.for_each(|t, c| assert_eq!(c as u64, t[0] % 2));
        let tilde = base(|x, y| ((x * 3 + y) % 2) as u32, 5);
        let f = doubling_coloring(&tilde).unwrap();
        for a in 0..5 {
            for b in a + 1..5 {
                let t = tilde.code(&[a, b]).unwrap();
                assert_eq!(f.code(&[2 * a, 2 * b]), Some(t));
                assert_eq!(f.code(&[2 * a + 1, 2 * b + 1]), Some(1 - t));
            }
        }
        assert_eq!(f.code(&[4, 5]), Some(0));
        assert_eq!(f.code(&[5, 6]), Some(1 - tilde.code(&[2, 3]).unwrap()));
    }

    #[test]
    fn split_even_only() {
        let tilde = base(|_, _| 1, 6);
        let f = doubling_coloring(&tilde).unwrap();
        let s = split_homogeneous(&[0, 4, 8], &f).unwrap();
        assert_eq!(
            s,
            Split {
                even: vec![0, 2, 4],
                odd: vec![],
                color: 1
            }
        );
    }

    #[test]
    fn split_alternating_exhaustive() {
        // every 2-coloring of pairs on 4 points; every homogeneous set of the doubled coloring
        for mask in 0u32..64 {
            let tilde = base(
                |x, y| {
                    let r = (y * (y - 1) / 2 + x) as u32;
                    mask >> r & 1
                },
                4,
            );
            let f = doubling_coloring(&tilde).unwrap();
            for set in 1u32..256 {
                let h: Vec<u64> = (0..8).filter(|&x| set >> x & 1 == 1).collect();
                let Ok(split) = split_homogeneous(&h, &f) else { continue };
                assert_eq!(split.even.len() + split.odd.len(), h.len());
                assert!(split.even.len().max(split.odd.len()) >= h.len().div_ceil(2));
                let homogeneous = |s: &[u64], c: u32| {
                    s.iter()
                        .enumerate()
                        .all(|(i, &x)| s[i + 1..].iter().all(|&y| tilde.code(&[x, y]) == Some(c)))
                };
                assert!(homogeneous(&split.even, split.color));
                assert!(homogeneous(&split.odd, 1 - split.color));
            }
        }
    }

    #[test]
    fn split_rejects_non_homogeneous() {
        let zero = base(|_, _| 0, 4);
        let f = doubling_coloring(&zero).unwrap();
        assert!(matches!(
            split_homogeneous(&[0, 1, 2], &f),
            Err(ColoringError::NotHomogeneous {
                pair: [0, 1],
                other: [1, 2]
            })
        ));
    }
}
