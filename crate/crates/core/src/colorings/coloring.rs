//! Materialized colorings of increasing tuples over a finite domain.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::approx::{Gap, TableError};
use crate::catalan::{GraphError, LargenessGraph};

/// Largest number of tuples a [`Coloring`] will materialize.
pub const MAX_TUPLES: u64 = 1 << 26;

#[derive(Debug, Error, PartialEq)]
pub enum ColoringError {
    #[error("domain must be strictly increasing")]
    DomainNotIncreasing,
    #[error("{tuples} tuples exceed the materialization limit {max}")]
    TooManyTuples { tuples: u64, max: u64 },
    #[error("color {color} is not in the palette")]
    ColorOutsidePalette { color: Color },
    #[error("palette contains {color} twice")]
    DuplicateColor { color: Color },
    #[error("tuple {tuple:?} is not an increasing tuple over the domain")]
    BadTuple { tuple: Vec<u64> },
    #[error("tuple {tuple:?} has no color")]
    MissingTuple { tuple: Vec<u64> },
    #[error("colorings disagree on {what}")]
    Mismatch { what: &'static str },
    #[error("need at least one coloring")]
    NoColorings,
    #[error("arity {arity} is not supported here: {reason}")]
    Arity { arity: usize, reason: &'static str },
    #[error("tuple {tuple:?} colored by an invalid largeness graph: {source}")]
    InvalidGraph { tuple: Vec<u64>, source: GraphError },
    #[error("tuple {tuple:?} received the infeasible color {color}; g is not increasing")]
    InfeasibleColor { tuple: Vec<u64>, color: TripleGap },
    #[error(
        "staged family does not stabilize inside the domain (bound {bound}, {available} of {needed} stage points)"
    )]
    NoStabilization {
        bound: u64,
        available: usize,
        needed: usize,
    },
    #[error("{0}")]
    Table(#[from] TableError),
    #[error("set is not homogeneous: {pair:?} and {other:?} differ")]
    NotHomogeneous { pair: [u64; 2], other: [u64; 2] },
    #[error("malformed coloring file: {0}")]
    Parse(String),
}

/// The gap pattern `⟨gap(x_0,x_1), .., gap(x_{n-2},x_{n-1})⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GapVector(pub Vec<Gap>);

impl GapVector {
    /// All `2^len` vectors in lexicographic order (small before large).
    pub fn all(len: usize) -> Vec<GapVector> {
        (0u64..1 << len)
            .map(|code| {
                GapVector(
                    (0..len)
                        .map(|k| {
                            if code >> (len - 1 - k) & 1 == 1 {
                                Gap::Large
                            } else {
                                Gap::Small
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn all_small(&self) -> bool {
        self.0.iter().all(|&g| g == Gap::Small)
    }
}

impl fmt::Display for GapVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|g| g.symbol()).collect();
        write!(f, "⟨{s}⟩")
    }
}

impl Serialize for GapVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let text: String = self.0.iter().map(|g| g.symbol()).collect();
        s.serialize_str(&text)
    }
}

impl<'de> Deserialize<'de> for GapVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.chars()
            .map(|c| match c {
                's' => Ok(Gap::Small),
                'l' => Ok(Gap::Large),
                other => Err(serde::de::Error::custom(format!("bad gap symbol {other:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(GapVector)
    }
}

/// `⟨i(x,y), i(y,z), i(x,z)⟩` with 1 for a large interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TripleGap(pub [u8; 3]);

impl TripleGap {
    /// The five vectors an increasing `g` can produce, in lexicographic order.
    pub const FEASIBLE: [TripleGap; 5] = [
        TripleGap([0, 0, 0]),
        TripleGap([0, 0, 1]),
        TripleGap([0, 1, 1]),
        TripleGap([1, 0, 1]),
        TripleGap([1, 1, 1]),
    ];

    pub fn is_feasible(self) -> bool {
        Self::FEASIBLE.contains(&self)
    }
}

impl fmt::Display for TripleGap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "⟨{a},{b},{c}⟩")
    }
}

/// A palette entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    Index(u32),
    Gap(GapVector),
    Graph(LargenessGraph),
    Triple(TripleGap),
    Product(Vec<Color>),
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Index(i) => write!(f, "{i}"),
            Color::Gap(v) => v.fmt(f),
            Color::Graph(g) => g.fmt(f),
            Color::Triple(t) => t.fmt(f),
            Color::Product(parts) => {
                let parts: Vec<String> = parts.iter().map(|c| c.to_string()).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

/// Ordered color list; a color's position is its integer code.
#[derive(Clone, Debug, PartialEq)]
pub struct Palette {
    colors: Vec<Color>,
    codes: HashMap<Color, u32>,
}

impl Palette {
    pub fn new(colors: Vec<Color>) -> Result<Self, ColoringError> {
        let mut codes = HashMap::with_capacity(colors.len());
        for (i, c) in colors.iter().enumerate() {
            if codes.insert(c.clone(), i as u32).is_some() {
                return Err(ColoringError::DuplicateColor { color: c.clone() });
            }
        }
        Ok(Palette { colors, codes })
    }

    /// `Index(0)..Index(k-1)`.
    pub fn indexed(k: u32) -> Self {
        Palette::new((0..k).map(Color::Index).collect()).expect("distinct")
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn code(&self, color: &Color) -> Option<u32> {
        self.codes.get(color).copied()
    }

    pub fn color(&self, code: u32) -> Option<&Color> {
        self.colors.get(code as usize)
    }
}

/// Binomial coefficients `C(a, b)` for `a <= rows`.
#[derive(Clone, Debug)]
pub(crate) struct Binomials {
    table: Vec<Vec<u64>>,
}

impl Binomials {
    pub(crate) fn new(rows: usize, cols: usize) -> Self {
        let mut table = vec![vec![0u64; cols + 1]; rows + 1];
        for a in 0..=rows {
            table[a][0] = 1;
            for b in 1..=cols.min(a) {
                table[a][b] = table[a - 1][b - 1].saturating_add(if b < a { table[a - 1][b] } else { 0 });
            }
        }
        Binomials { table }
    }

    #[inline]
    pub(crate) fn get(&self, a: usize, b: usize) -> u64 {
        if b > a {
            0
        } else {
            self.table[a][b]
        }
    }
}

/// `C(a, b)` saturating at `u64::MAX`.
pub fn binomial(a: u64, b: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Calls `visit` on every increasing `k`-combination of `0..n` in
/// lexicographic order; stops early when `visit` returns false.
pub fn for_each_combination(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&idx) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// A total coloring of `[D]^n`, stored as one palette code per tuple.
#[derive(Clone, Debug)]
pub struct Coloring {
    arity: usize,
    domain: Vec<u64>,
    palette: Palette,
    codes: Vec<u32>,
    binomials: Binomials,
}

impl PartialEq for Coloring {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity
            && self.domain == other.domain
            && self.palette == other.palette
            && self.codes == other.codes
    }
}

impl Coloring {
    /// Evaluate `f` on every increasing tuple of `domain`.
    pub fn from_fn<F>(arity: usize, domain: Vec<u64>, palette: Palette, mut f: F) -> Result<Self, ColoringError>
    where
        F: FnMut(&[u64]) -> Result<Color, ColoringError>,
    {
        if arity == 0 {
            return Err(ColoringError::Arity {
                arity,
                reason: "colorings need arity >= 1",
            });
        }
        if domain.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ColoringError::DomainNotIncreasing);
        }
        let tuples = binomial(domain.len() as u64, arity as u64);
        if tuples > MAX_TUPLES {
            return Err(ColoringError::TooManyTuples {
                tuples,
                max: MAX_TUPLES,
            });
        }
        let binomials = Binomials::new(domain.len(), arity);
        let mut codes = vec![0u32; tuples as usize];
        let mut tuple = vec![0u64; arity];
        let mut failure = None;
        for_each_combination(domain.len(), arity, |idx| {
            for (t, &i) in tuple.iter_mut().zip(idx) {
                *t = domain[i];
            }
            let result =
                f(&tuple).and_then(|color| palette.code(&color).ok_or(ColoringError::ColorOutsidePalette { color }));
            match result {
                Ok(code) => {
                    codes[rank(&binomials, idx) as usize] = code;
                    true
                }
                Err(e) => {
                    failure = Some(e);
                    false
                }
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(Coloring {
            arity,
            domain,
            palette,
            codes,
            binomials,
        })
    }

    /// Coloring by palette code, e.g. `k`-colorings given as integers.
    pub fn from_codes<F>(arity: usize, domain: Vec<u64>, palette: Palette, mut f: F) -> Result<Self, ColoringError>
    where
        F: FnMut(&[u64]) -> u32,
    {
        let k = palette.len() as u32;
        Coloring::from_fn(arity, domain, palette.clone(), |t| {
            let code = f(t);
            if code < k {
                Ok(palette.colors[code as usize].clone())
            } else {
                Err(ColoringError::ColorOutsidePalette {
                    color: Color::Index(code),
                })
            }
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn domain(&self) -> &[u64] {
        &self.domain
    }

    pub fn palette(&self) -> &Palette {
        &self.palette
    }

    pub fn num_tuples(&self) -> usize {
        self.codes.len()
    }

    /// Code of the tuple given by increasing domain positions.
    #[inline]
    pub fn code_at(&self, positions: &[usize]) -> u32 {
        debug_assert_eq!(positions.len(), self.arity);
        self.codes[rank(&self.binomials, positions) as usize]
    }

    fn positions(&self, tuple: &[u64]) -> Option<Vec<usize>> {
        if tuple.len() != self.arity || tuple.windows(2).any(|w| w[0] >= w[1]) {
            return None;
        }
        tuple.iter().map(|x| self.domain.binary_search(x).ok()).collect()
    }

    pub fn code(&self, tuple: &[u64]) -> Option<u32> {
        self.positions(tuple).map(|p| self.code_at(&p))
    }

    pub fn color(&self, tuple: &[u64]) -> Option<&Color> {
        self.code(tuple).and_then(|c| self.palette.color(c))
    }

    /// Sorted, deduplicated codes used on `[subset]^n`; `None` if `subset`
    /// is not an increasing subset of the domain.
    pub fn used_codes(&self, subset: &[u64]) -> Option<Vec<u32>> {
        if subset.windows(2).any(|w| w[0] >= w[1]) {
            return None;
        }
        let positions: Vec<usize> = subset
            .iter()
            .map(|x| self.domain.binary_search(x).ok())
            .collect::<Option<_>>()?;
        let mut seen = vec![false; self.palette.len()];
        let mut tuple = vec![0usize; self.arity];
        for_each_combination(positions.len(), self.arity, |idx| {
            for (t, &i) in tuple.iter_mut().zip(idx) {
                *t = positions[i];
            }
            seen[self.code_at(&tuple) as usize] = true;
            true
        });
        Some((0..seen.len() as u32).filter(|&c| seen[c as usize]).collect())
    }

    /// Visit `(tuple, code)` for every tuple in lexicographic order.
    pub fn for_each(&self, mut visit: impl FnMut(&[u64], u32)) {
        let mut tuple = vec![0u64; self.arity];
        for_each_combination(self.domain.len(), self.arity, |idx| {
            for (t, &i) in tuple.iter_mut().zip(idx) {
                *t = self.domain[i];
            }
            visit(&tuple, self.code_at(idx));
            true
        });
    }

    /// JSON Lines, one `{"c": code, "t": [..]}` record per tuple.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        self.for_each(|t, c| {
            let rec = serde_json::json!({ "c": c, "t": t });
            out.push_str(&rec.to_string());
            out.push('\n');
        });
        out
    }

    /// The palette codec table accompanying [`Coloring::to_jsonl`].
    pub fn palette_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .palette
            .colors
            .iter()
            .enumerate()
            .map(|(code, color)| serde_json::json!({ "code": code, "color": color }))
            .collect();
        serde_json::json!({
            "arity": self.arity,
            "domain": self.domain,
            "palette": entries,
        })
    }

    /// Read records written by [`Coloring::to_jsonl`]. Without a palette the
    /// codes `0..=max` are taken as `Index` colors.
    pub fn from_jsonl(text: &str, palette: Option<Palette>) -> Result<Self, ColoringError> {
        #[derive(Deserialize)]
        struct Record {
            t: Vec<u64>,
            c: u32,
        }
        let mut records: HashMap<Vec<u64>, u32> = HashMap::new();
        let mut arity = None;
        let mut domain: Vec<u64> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let rec: Record =
                serde_json::from_str(line).map_err(|e| ColoringError::Parse(format!("line {}: {e}", lineno + 1)))?;
            if *arity.get_or_insert(rec.t.len()) != rec.t.len() {
                return Err(ColoringError::Mismatch { what: "tuple length" });
            }
            if rec.t.windows(2).any(|w| w[0] >= w[1]) {
                return Err(ColoringError::BadTuple { tuple: rec.t });
            }
            domain.extend_from_slice(&rec.t);
            records.insert(rec.t, rec.c);
        }
        let arity = arity.ok_or_else(|| ColoringError::Parse("no records".into()))?;
        domain.sort_unstable();
        domain.dedup();
        let palette = match palette {
            Some(p) => p,
            None => Palette::indexed(records.values().max().map_or(1, |m| m + 1)),
        };
        Coloring::from_codes(arity, domain, palette, |t| records.get(t).copied().unwrap_or(u32::MAX)).map_err(|e| {
            match e {
                ColoringError::ColorOutsidePalette {
                    color: Color::Index(u32::MAX),
                } => ColoringError::Parse("coloring is not total on its domain".into()),
                other => other,
            }
        })
    }
}

/// Colex rank of an increasing position tuple.
#[inline]
fn rank(binomials: &Binomials, positions: &[usize]) -> u64 {
    positions
        .iter()
        .enumerate()
        .map(|(k, &p)| binomials.get(p, k + 1))
        .sum()
}

/// Parse a palette codec table as written by [`Coloring::palette_json`].
pub fn palette_from_json(value: &serde_json::Value) -> Result<Palette, ColoringError> {
    #[derive(Deserialize)]
    struct Entry {
        code: u32,
        color: Color,
    }
    let entries: Vec<Entry> =
        serde_json::from_value(value["palette"].clone()).map_err(|e| ColoringError::Parse(e.to_string()))?;
    let mut colors = Vec::with_capacity(entries.len());
    for (i, e) in entries.into_iter().enumerate() {
        if e.code as usize != i {
            return Err(ColoringError::Parse(format!("palette code {} out of order", e.code)));
        }
        colors.push(e.color);
    }
    Palette::new(colors)
}

/// Pointwise tuple of colors; the palette is the cartesian product of the
/// component palettes, ordered lexicographically by component code.
pub fn product_coloring(colorings: &[Coloring]) -> Result<Coloring, ColoringError> {
    let first = colorings.first().ok_or(ColoringError::NoColorings)?;
    for c in &colorings[1..] {
        if c.arity != first.arity {
            return Err(ColoringError::Mismatch { what: "arity" });
        }
        if c.domain != first.domain {
            return Err(ColoringError::Mismatch { what: "domain" });
        }
    }
    let size = colorings
        .iter()
        .try_fold(1u64, |acc, c| acc.checked_mul(c.palette.len() as u64))
        .filter(|&s| s <= u32::MAX as u64)
        .ok_or(ColoringError::TooManyTuples {
            tuples: u64::MAX,
            max: u32::MAX as u64,
        })?;
    let mut colors = Vec::with_capacity(size as usize);
    let mut digits = vec![0usize; colorings.len()];
    for _ in 0..size {
        colors.push(Color::Product(
            digits
                .iter()
                .zip(colorings)
                .map(|(&d, c)| c.palette.colors[d].clone())
                .collect(),
        ));
        for k in (0..digits.len()).rev() {
            digits[k] += 1;
            if digits[k] < colorings[k].palette.len() {
                break;
            }
            digits[k] = 0;
        }
    }
    let palette = Palette::new(colors)?;
    let strides: Vec<u32> = {
        let mut s = vec![1u32; colorings.len()];
        for k in (0..colorings.len().saturating_sub(1)).rev() {
            s[k] = s[k + 1] * colorings[k + 1].palette.len() as u32;
        }
        s
    };
    let codes = (0..first.codes.len())
        .map(|r| colorings.iter().zip(&strides).map(|(c, s)| c.codes[r] * s).sum())
        .collect();
    Ok(Coloring {
        arity: first.arity,
        domain: first.domain.clone(),
        palette,
        codes,
        binomials: first.binomials.clone(),
    })
}

/// Colorings indexed by `k` stage coordinates, each in `0..stages`.
///
/// `family[index(s_1, .., s_k)]` with `s_1` most significant. The limit is
/// the entry at `(stages-1, .., stages-1)`.
#[derive(Clone, Debug)]
pub struct StagedColoring {
    extra: usize,
    stages: usize,
    family: Vec<Coloring>,
}

impl StagedColoring {
    pub fn new(extra: usize, stages: usize, family: Vec<Coloring>) -> Result<Self, ColoringError> {
        if stages == 0 || family.is_empty() {
            return Err(ColoringError::NoColorings);
        }
        let expected = u32::try_from(extra)
            .ok()
            .and_then(|e| stages.checked_pow(e))
            .ok_or(ColoringError::Mismatch { what: "family size" })?;
        if family.len() != expected {
            return Err(ColoringError::Mismatch { what: "family size" });
        }
        let first = &family[0];
        for c in &family[1..] {
            if c.arity != first.arity || c.domain != first.domain {
                return Err(ColoringError::Mismatch {
                    what: "arity or domain",
                });
            }
            if c.palette != first.palette {
                return Err(ColoringError::Mismatch { what: "palette" });
            }
        }
        Ok(StagedColoring { extra, stages, family })
    }

    /// A one-coordinate family `f_0, .., f_{S-1}`.
    pub fn sequence(family: Vec<Coloring>) -> Result<Self, ColoringError> {
        let stages = family.len();
        StagedColoring::new(1, stages, family)
    }

    pub fn limit(&self) -> &Coloring {
        self.family.last().expect("non-empty")
    }

    fn index(&self, stage_coords: &[u64]) -> usize {
        stage_coords.iter().fold(0usize, |acc, &s| {
            let s = usize::try_from(s).map_or(self.stages - 1, |s| s.min(self.stages - 1));
            acc * self.stages + s
        })
    }

    /// Least `b` such that every entry whose stage coordinates are all `>= b`
    /// equals the limit.
    pub fn stabilization_bound(&self) -> u64 {
        let limit = self.limit();
        (0..self.stages)
            .find(|&b| {
                (0..self.family.len()).all(|i| {
                    let coords_ok = {
                        let mut rest = i;
                        (0..self.extra).all(|_| {
                            let c = rest % self.stages;
                            rest /= self.stages;
                            c >= b
                        })
                    };
                    !coords_ok || self.family[i].codes == limit.codes
                })
            })
            .unwrap_or(self.stages - 1) as u64
    }
}

/// `h(x_0..x_{n+k-1}) = f_{x_n, .., x_{n+k-1}}(x_0..x_{n-1})`, stage
/// coordinates clamped to the last stage.
#[derive(Clone, Debug)]
pub struct LiftedColoring {
    pub coloring: Coloring,
    /// Stage coordinates at or above this value see the limit coloring.
    pub stabilization_bound: u64,
}

pub fn limit_lift(staged: &StagedColoring) -> Result<LiftedColoring, ColoringError> {
    let base = staged.limit();
    let n = base.arity;
    let k = staged.extra;
    let bound = staged.stabilization_bound();
    let available = base.domain.iter().filter(|&&x| x >= bound).count();
    if k > 0 && available < k {
        return Err(ColoringError::NoStabilization {
            bound,
            available,
            needed: k,
        });
    }
    let palette = base.palette.clone();
    let coloring = Coloring::from_codes(n + k, base.domain.clone(), palette, |t| {
        let member = &staged.family[staged.index(&t[n..])];
        member.code(&t[..n]).expect("prefix lies in the domain")
    })?;
    Ok(LiftedColoring {
        coloring,
        stabilization_bound: bound,
    })
}
