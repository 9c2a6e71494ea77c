//! Exact search for thin sets and extremal numbers.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::SearchError;
use crate::colorings::{binomial, for_each_combination, Coloring, Palette};

/// Largest number of subsets the brute-force oracle will enumerate.
pub const ORACLE_MAX_SUBSETS: u64 = 10_000_000;

/// `H` with `|f[H]^n| = |used| <= bound`; `avoided` is the rest of the
/// palette, in codec order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThinWitness {
    #[serde(rename = "H")]
    pub subset: Vec<u64>,
    pub used: Vec<u32>,
    pub avoided: Vec<u32>,
    pub bound: usize,
}

impl ThinWitness {
    /// Recount `f[H]^n` for an arbitrary subset.
    pub fn from_subset(f: &Coloring, subset: Vec<u64>, bound: usize) -> Option<Self> {
        let used = f.used_codes(&subset)?;
        let avoided = complement(&used, f.palette().len());
        Some(ThinWitness {
            subset,
            used,
            avoided,
            bound,
        })
    }

    /// Independent recount against `f`.
    pub fn verify(&self, f: &Coloring) -> bool {
        match f.used_codes(&self.subset) {
            Some(used) => {
                used == self.used && used.len() <= self.bound && self.avoided == complement(&used, f.palette().len())
            }
            None => false,
        }
    }
}

fn complement(used: &[u32], palette: usize) -> Vec<u32> {
    (0..palette as u32).filter(|c| used.binary_search(c).is_err()).collect()
}

/// Node and wall-clock limits; `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub max_seconds: Option<f64>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget::default()
    }
}

struct Meter {
    nodes: AtomicU64,
    start: Instant,
    max_nodes: u64,
    deadline: Option<Duration>,
    tripped: AtomicBool,
}

impl Meter {
    fn new(budget: &SearchBudget) -> Self {
        Meter {
            nodes: AtomicU64::new(0),
            start: Instant::now(),
            max_nodes: budget.max_nodes.unwrap_or(u64::MAX),
            deadline: budget.max_seconds.map(Duration::from_secs_f64),
            tripped: AtomicBool::new(false),
        }
    }

    /// Count one node; false once the budget is spent.
    #[inline]
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed);
        if n >= self.max_nodes {
            self.tripped.store(true, Ordering::Relaxed);
            return false;
        }
        if n.is_multiple_of(4096) {
            if let Some(limit) = self.deadline {
                if self.start.elapsed() > limit {
                    self.tripped.store(true, Ordering::Relaxed);
                }
            }
        }
        !self.tripped.load(Ordering::Relaxed)
    }

    fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }
}

/// Color bookkeeping for one branch of the thin-set search.
struct Branch<'a> {
    f: &'a Coloring,
    ell: usize,
    m: usize,
    chosen: Vec<usize>,
    counts: Vec<u32>,
    distinct: usize,
    log: Vec<u32>,
    tuple: Vec<usize>,
}

enum Outcome {
    Found(Vec<usize>),
    Exhausted,
    Budget,
}

impl<'a> Branch<'a> {
    fn new(f: &'a Coloring, ell: usize, m: usize) -> Self {
        Branch {
            f,
            ell,
            m,
            chosen: Vec::with_capacity(m),
            counts: vec![0; f.palette().len()],
            distinct: 0,
            log: Vec::new(),
            tuple: vec![0; f.arity()],
        }
    }

    /// Add the colors of all new tuples ending in `p`; on overflow undo and
    /// return false.
    fn push(&mut self, p: usize) -> bool {
        let n = self.f.arity();
        let mark = self.log.len();
        let mut ok = true;
        let (chosen, tuple, f) = (&self.chosen, &mut self.tuple, self.f);
        let (counts, distinct, log, ell) = (&mut self.counts, &mut self.distinct, &mut self.log, self.ell);
        for_each_combination(chosen.len(), n - 1, |idx| {
            for (t, &i) in tuple.iter_mut().zip(idx) {
                *t = chosen[i];
            }
            tuple[n - 1] = p;
            let c = f.code_at(tuple);
            counts[c as usize] += 1;
            if counts[c as usize] == 1 {
                *distinct += 1;
            }
            log.push(c);
            ok = *distinct <= ell;
            ok
        });
        if ok {
            self.log.push(u32::MAX);
            self.chosen.push(p);
        } else {
            self.rollback(mark);
        }
        ok
    }

    fn pop(&mut self) {
        self.chosen.pop();
        let sep = self.log.pop();
        debug_assert_eq!(sep, Some(u32::MAX));
        let mark = self.log.iter().rposition(|&c| c == u32::MAX).map_or(0, |i| i + 1);
        self.rollback(mark);
    }

    fn rollback(&mut self, mark: usize) {
        for c in self.log.drain(mark..) {
            self.counts[c as usize] -= 1;
            if self.counts[c as usize] == 0 {
                self.distinct -= 1;
            }
        }
    }

    fn dfs(&mut self, start: usize, meter: &Meter) -> Outcome {
        if self.chosen.len() == self.m {
            return Outcome::Found(self.chosen.clone());
        }
        let d = self.f.domain().len();
        let last = d - (self.m - self.chosen.len());
        for p in start..=last {
            if !meter.tick() {
                return Outcome::Budget;
            }
            if self.push(p) {
                match self.dfs(p + 1, meter) {
                    Outcome::Exhausted => self.pop(),
                    other => return other,
                }
            }
        }
        Outcome::Exhausted
    }
}

fn witness_from_positions(f: &Coloring, positions: &[usize], ell: usize) -> ThinWitness {
    let subset = positions.iter().map(|&p| f.domain()[p]).collect();
    ThinWitness::from_subset(f, subset, ell).expect("positions lie in the domain")
}

/// Lexicographically least `m`-subset `H` of the domain with
/// `|f[H]^n| <= ell`, or `None`.
pub fn find_thin_set(f: &Coloring, ell: usize, m: usize) -> Option<ThinWitness> {
    find_thin_set_budgeted(f, ell, m, &SearchBudget::unlimited()).expect("unlimited budget")
}

/// [`find_thin_set`] under a node/time budget.
///
/// Branches on the first element run in parallel; the first element order
/// is kept, so the answer does not depend on scheduling.
pub fn find_thin_set_budgeted(
    f: &Coloring,
    ell: usize,
    m: usize,
    budget: &SearchBudget,
) -> Result<Option<ThinWitness>, SearchError> {
    let d = f.domain().len();
    if m > d {
        return Ok(None);
    }
    if m < f.arity() {
        return Ok(Some(witness_from_positions(f, &(0..m).collect::<Vec<_>>(), ell)));
    }
    let meter = Meter::new(budget);
    let first = (0..=d - m).into_par_iter().map(|p| {
        let mut branch = Branch::new(f, ell, m);
        if !meter.tick() {
            return Outcome::Budget;
        }
        if !branch.push(p) {
            return Outcome::Exhausted;
        }
        branch.dfs(p + 1, &meter)
    });
    let result = first.find_map_first(|outcome| match outcome {
        Outcome::Found(positions) => Some(Ok(positions)),
        Outcome::Budget => Some(Err(())),
        Outcome::Exhausted => None,
    });
    match result {
        None => Ok(None),
        Some(Ok(positions)) => Ok(Some(witness_from_positions(f, &positions, ell))),
        Some(Err(())) => Err(SearchError::BudgetExceeded {
            nodes: meter.nodes(),
            lower_bound: None,
        }),
    }
}

/// Exhaustive reference for [`find_thin_set`]: every `m`-subset in
/// lexicographic order.
pub fn brute_thin_oracle(f: &Coloring, ell: usize, m: usize) -> Result<Option<ThinWitness>, SearchError> {
    let d = f.domain().len();
    if m > d {
        return Ok(None);
    }
    let subsets = binomial(d as u64, m as u64);
    if subsets > ORACLE_MAX_SUBSETS {
        return Err(SearchError::TooLarge {
            what: "subsets",
            size: subsets,
            max: ORACLE_MAX_SUBSETS,
        });
    }
    let mut found = None;
    for_each_combination(d, m, |positions| {
        let subset: Vec<u64> = positions.iter().map(|&p| f.domain()[p]).collect();
        let used = f.used_codes(&subset).expect("subset of the domain");
        if used.len() <= ell {
            found = Some(positions.to_vec());
            false
        } else {
            true
        }
    });
    Ok(found.map(|p| witness_from_positions(f, &p, ell)))
}

/// Largest `N` the extremal search will try.
pub const EXTREMAL_MAX_N: u64 = 64;

/// The least `N` with every `k`-coloring of `[N]^n` admitting an `m`-set
/// using at most `ell` colors, plus a coloring of `[N-1]^n` showing `N-1`
/// is too small (when `N > m`).
#[derive(Clone, Debug)]
pub struct ExtremalNumber {
    pub value: u64,
    pub bad_coloring: Option<Coloring>,
}

/// Tuples of `[N]^n` in colex order with, for each tuple, the `m`-subsets
/// whose colex-last tuple it is (as lists of tuple ranks).
struct ExtremalLayout {
    checks: Vec<Vec<Vec<usize>>>,
}

impl ExtremalLayout {
    fn new(size: usize, n: usize, m: usize) -> Self {
        let rank = |t: &[usize]| -> usize {
            t.iter()
                .enumerate()
                .map(|(k, &p)| binomial(p as u64, k as u64 + 1) as usize)
                .sum()
        };
        let total = binomial(size as u64, n as u64) as usize;
        let mut checks = vec![Vec::new(); total];
        let mut sub = vec![0usize; n];
        for_each_combination(size, m, |s| {
            // the colex-last n-subset of s is its top n elements
            let top = rank(&s[m - n..]);
            let mut ranks = Vec::with_capacity(binomial(m as u64, n as u64) as usize);
            for_each_combination(m, n, |idx| {
                for (t, &i) in sub.iter_mut().zip(idx) {
                    *t = s[i];
                }
                ranks.push(rank(&sub));
                true
            });
            checks[top].push(ranks);
            true
        });
        ExtremalLayout { checks }
    }
}

struct BadSearch<'a> {
    k: usize,
    ell: usize,
    layout: &'a ExtremalLayout,
    colors: Vec<u8>,
    meter: &'a Meter,
}

impl BadSearch<'_> {
    /// Find a coloring where every `m`-set sees more than `ell` colors.
    /// `used` is the number of colors seen so far; only `0..=used` may be
    /// tried next.
    fn run(&mut self, r: usize, used: usize) -> Option<bool> {
        if r == self.colors.len() {
            return Some(true);
        }
        let limit = self.k.min(used + 1);
        for c in 0..limit {
            if !self.meter.tick() {
                return None;
            }
            self.colors[r] = c as u8;
            let alive = self.layout.checks[r].iter().all(|ranks| {
                let mask = ranks.iter().fold(0u64, |acc, &t| acc | 1u64 << self.colors[t]);
                mask.count_ones() as usize > self.ell
            });
            if alive && self.run(r + 1, used.max(c + 1))? {
                return Some(true);
            }
        }
        Some(false)
    }
}

/// Least `N` such that every `k`-coloring of `[N]^n` has an `m`-subset `H`
/// with `|f[H]^n| <= ell`.
///
/// Colors are assigned tuple by tuple in colex order, using color `c` only
/// after `0..c` have appeared, and an `m`-set is checked as soon as its
/// last tuple is colored.
pub fn extremal_number(
    n: usize,
    k: usize,
    ell: usize,
    m: usize,
    budget: &SearchBudget,
) -> Result<ExtremalNumber, SearchError> {
    if n == 0 || k == 0 || k > 64 {
        return Err(SearchError::InvalidParameters(format!(
            "need n >= 1 and 1 <= k <= 64 (got n={n}, k={k})"
        )));
    }
    if ell >= k || m < n {
        return Ok(ExtremalNumber {
            value: m as u64,
            bad_coloring: None,
        });
    }
    if ell == 0 {
        return Err(SearchError::InvalidParameters(
            "ell = 0 with m >= n: no set of size m avoids every color".into(),
        ));
    }
    let meter = Meter::new(budget);
    let mut previous: Option<Vec<u8>> = None;
    for size in m as u64..=EXTREMAL_MAX_N {
        let layout = ExtremalLayout::new(size as usize, n, m);
        let tuples = layout.checks.len();
        let mut search = BadSearch {
            k,
            ell,
            layout: &layout,
            colors: vec![0; tuples],
            meter: &meter,
        };
        match search.run(0, 0) {
            None => {
                return Err(SearchError::BudgetExceeded {
                    nodes: meter.nodes(),
                    lower_bound: Some(size),
                })
            }
            Some(true) => previous = Some(search.colors),
            Some(false) => {
                let bad_coloring = match previous {
                    Some(colors) => Some(
                        Coloring::from_codes(n, (0..size - 1).collect(), Palette::indexed(k as u32), |t| {
                            let r: u64 = t.iter().enumerate().map(|(j, &x)| binomial(x, j as u64 + 1)).sum();
                            colors[r as usize] as u32
                        })
                        .map_err(|e| SearchError::InvalidParameters(e.to_string()))?,
                    ),
                    None => None,
                };
                return Ok(ExtremalNumber {
                    value: size,
                    bad_coloring,
                });
            }
        }
    }
    Err(SearchError::BudgetExceeded {
        nodes: meter.nodes(),
        lower_bound: Some(EXTREMAL_MAX_N + 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coloring(n: usize, d: u64, k: u32, f: impl Fn(&[u64]) -> u32) -> Coloring {
        Coloring::from_codes(n, (0..d).collect(), Palette::indexed(k), f).unwrap()
    }

    #[test]
    fn generous_bound_takes_first_elements() {
        let f = coloring(2, 8, 3, |t| ((t[0] + 2 * t[1]) % 3) as u32);
        let w = find_thin_set(&f, 3, 5).unwrap();
        assert_eq!(w.subset, vec![0, 1, 2, 3, 4]);
        assert!(w.verify(&f));
        let constant = coloring(3, 7, 4, |_| 2);
        let w = find_thin_set(&constant, 1, 6).unwrap();
        assert_eq!(w.subset, (0..6).collect::<Vec<_>>());
        assert_eq!(w.used, vec![2]);
        assert_eq!(w.avoided, vec![0, 1, 3]);
    }

    #[test]
    fn pentagon_has_no_monochromatic_triangle() {
        let pentagon = coloring(2, 5, 2, |t| ((t[1] - t[0]) % 5 == 1 || (t[1] - t[0]) % 5 == 4) as u32);
        assert_eq!(find_thin_set(&pentagon, 1, 3), None);
        assert_eq!(brute_thin_oracle(&pentagon, 1, 3).unwrap(), None);
    }

    #[test]
    fn agrees_with_oracle_on_parity_coloring() {
        let f = coloring(3, 9, 4, |t| ((t[0] * 7 + t[1] * 3 + t[2]) % 4) as u32);
        for ell in 1..=4 {
            for m in 0..=6 {
                assert_eq!(
                    find_thin_set(&f, ell, m),
                    brute_thin_oracle(&f, ell, m).unwrap(),
                    "ell={ell} m={m}"
                );
            }
        }
    }

    #[test]
    fn small_targets() {
        let f = coloring(2, 4, 2, |t| (t[0] % 2) as u32);
        let w = find_thin_set(&f, 1, 1).unwrap();
        assert_eq!(w.subset, vec![0]);
        assert!(w.used.is_empty());
        assert_eq!(find_thin_set(&f, 1, 5), None);
    }

    #[test]
    fn budget_is_reported() {
        let f = coloring(2, 12, 2, |t| ((t[0] * t[1] + t[0]) % 2) as u32);
        let tiny = SearchBudget {
            max_nodes: Some(3),
            max_seconds: None,
        };
        assert!(matches!(
            find_thin_set_budgeted(&f, 1, 6, &tiny),
            Err(SearchError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn oracle_guard() {
        let f = coloring(1, 60, 2, |t| (t[0] % 2) as u32);
        assert!(matches!(
            brute_thin_oracle(&f, 1, 30),
            Err(SearchError::TooLarge { .. })
        ));
    }

    #[test]
    fn extremal_small_values() {
        let unlimited = SearchBudget::unlimited();
        assert_eq!(extremal_number(1, 2, 1, 2, &unlimited).unwrap().value, 3);
        assert_eq!(extremal_number(2, 3, 3, 4, &unlimited).unwrap().value, 4);
        assert_eq!(extremal_number(3, 2, 1, 2, &unlimited).unwrap().value, 2);
        let r33 = extremal_number(2, 2, 1, 3, &unlimited).unwrap();
        assert_eq!(r33.value, 6);
        let bad = r33.bad_coloring.unwrap();
        assert_eq!(bad.domain().len(), 5);
        assert_eq!(find_thin_set(&bad, 1, 3), None);
    }

    #[test]
    fn extremal_pigeonhole_three_colors() {
        // k colors on points: need (m-1)k + 1 points for m of one color
        let v = extremal_number(1, 3, 1, 3, &SearchBudget::unlimited()).unwrap();
        assert_eq!(v.value, 7);
    }

    #[test]
    fn extremal_budget() {
        let tiny = SearchBudget {
            max_nodes: Some(10),
            max_seconds: None,
        };
        assert!(matches!(
            extremal_number(2, 2, 1, 3, &tiny),
            Err(SearchError::BudgetExceeded {
                lower_bound: Some(_),
                ..
            })
        ));
    }
}
