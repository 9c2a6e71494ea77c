use serde::{Deserialize, Serialize};

use super::approx::{is_g_large, ApproxTable, Gap};
use super::coloring::ColoringError;

/// A complete irreflexive orientation of the pairs of a finite set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TournamentFile", into = "TournamentFile")]
pub struct Tournament {
    domain: Vec<u64>,
    /// `beats[i][j]` iff `T(domain[i], domain[j])`.
    beats: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct TournamentFile {
    domain: Vec<u64>,
    arcs: Vec<[u64; 2]>,
}

impl TryFrom<TournamentFile> for Tournament {
    type Error = ColoringError;

    fn try_from(file: TournamentFile) -> Result<Self, Self::Error> {
        let arcs: Vec<(u64, u64)> = file.arcs.iter().map(|a| (a[0], a[1])).collect();
        Tournament::from_arcs(file.domain, &arcs)
    }
}

impl From<Tournament> for TournamentFile {
    fn from(t: Tournament) -> Self {
        TournamentFile {
            arcs: t.arcs().into_iter().map(|(x, y)| [x, y]).collect(),
            domain: t.domain,
        }
    }
}

impl Tournament {
    /// Orient each pair `x < y` forward iff `forward(x, y)`.
    pub fn from_fn(domain: Vec<u64>, mut forward: impl FnMut(u64, u64) -> bool) -> Result<Self, ColoringError> {
        if domain.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ColoringError::DomainNotIncreasing);
        }
        let n = domain.len();
        let mut beats = vec![vec![false; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                if forward(domain[i], domain[j]) {
                    beats[i][j] = true;
                } else {
                    beats[j][i] = true;
                }
            }
        }
        Ok(Tournament { domain, beats })
    }

    /// From an explicit arc list; every pair must be oriented exactly once.
    pub fn from_arcs(domain: Vec<u64>, arcs: &[(u64, u64)]) -> Result<Self, ColoringError> {
        if domain.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ColoringError::DomainNotIncreasing);
        }
        let n = domain.len();
        let mut beats = vec![vec![false; n]; n];
        for &(x, y) in arcs {
            let (Ok(i), Ok(j)) = (domain.binary_search(&x), domain.binary_search(&y)) else {
                return Err(ColoringError::BadTuple { tuple: vec![x, y] });
            };
            if i == j || beats[i][j] || beats[j][i] {
                return Err(ColoringError::Parse(format!(
                    "arc ({x},{y}) is a loop or orients its pair twice"
                )));
            }
            beats[i][j] = true;
        }
        for i in 0..n {
            for j in i + 1..n {
                if !beats[i][j] && !beats[j][i] {
                    return Err(ColoringError::MissingTuple {
                        tuple: vec![domain[i], domain[j]],
                    });
                }
            }
        }
        Ok(Tournament { domain, beats })
    }

    pub fn domain(&self) -> &[u64] {
        &self.domain
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    /// `T(domain[i], domain[j])` by position.
    #[inline]
    pub fn beats_at(&self, i: usize, j: usize) -> bool {
        self.beats[i][j]
    }

    pub fn beats(&self, x: u64, y: u64) -> Option<bool> {
        let i = self.domain.binary_search(&x).ok()?;
        let j = self.domain.binary_search(&y).ok()?;
        Some(self.beats[i][j])
    }

    /// All arcs `(x, y)` with `T(x, y)`, sorted.
    pub fn arcs(&self) -> Vec<(u64, u64)> {
        let n = self.len();
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in 0..n {
                if self.beats[i][j] {
                    out.push((self.domain[i], self.domain[j]));
                }
            }
        }
        out
    }

    /// Whether the subtournament on `subset` (domain values) has no 3-cycle.
    pub fn is_transitive_on(&self, subset: &[u64]) -> bool {
        let Some(idx) = subset
            .iter()
            .map(|x| self.domain.binary_search(x).ok())
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate().skip(a + 1) {
                for &k in &idx[b + 1..] {
                    let (ij, jk, ki) = (self.beats[i][j], self.beats[j][k], self.beats[k][i]);
                    if ij == jk && jk == ki {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// `T(x,y)` for `x < y` iff `[x,y]` is small; otherwise `T(y,x)`.
pub fn tournament_from_g(g: &ApproxTable, domain: Vec<u64>) -> Result<Tournament, ColoringError> {
    if domain.len() >= 2 {
        g.check_domain(&domain[..domain.len() - 1])?;
    }
    let mut failure = None;
    let t = Tournament::from_fn(domain, |x, y| match is_g_large(x, y, g) {
        Ok(gap) => gap == Gap::Small,
        Err(e) => {
            failure.get_or_insert(e);
            true
        }
    })?;
    match failure {
        Some(e) => Err(e.into()),
        None => Ok(t),
    }
}
