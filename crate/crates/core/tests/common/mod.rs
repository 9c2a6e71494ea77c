//! Oracles and generators shared by the integration tests. Nothing here
//! calls into the library's own counting or validation code.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thinset::colorings::{normalize_approximations, ApproxTable};

/// `C(2n, n) / (n + 1)` in exact arithmetic.
pub fn catalan_closed_form(n: u64) -> num_bigint::BigUint {
    let mut acc = num_bigint::BigUint::from(1u32);
    for i in 0..n {
        acc *= 2 * n - i;
        acc /= i + 1;
    }
    acc / (n + 1)
}

/// The four axioms, checked on an adjacency matrix.
pub fn axioms_hold(n: usize, e: &[Vec<bool>]) -> bool {
    for i in 0..n.saturating_sub(1) {
        // (a)
        if e[i][i + 1] && (i + 2..n).any(|j| e[i][j]) {
            return false;
        }
        // (b)
        for j in i + 1..n.saturating_sub(1) {
            if !e[i][i + 1] && e[j][j + 1] && !e[i][j + 1] {
                return false;
            }
        }
        // (c)
        for j in i + 2..n.saturating_sub(1) {
            if e[i][j] && !e[i][j + 1] {
                return false;
            }
        }
        // (d)
        for j in i + 2..n {
            for k in j + 1..n {
                if !e[i][j] && e[i][k] && !e[j - 1][k] {
                    return false;
                }
            }
        }
    }
    true
}

/// All pairs `i < j` of `0..n` in colex order, matching bit positions.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for j in 1..n {
        for i in 0..j {
            out.push((i, j));
        }
    }
    out
}

pub fn matrix(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut e = vec![vec![false; n]; n];
    for &(i, j) in edges {
        e[i][j] = true;
    }
    e
}

/// Edge sets of every graph on `n` nodes satisfying the axioms, by brute
/// force over all `2^{n(n-1)/2}` edge sets.
pub fn brute_force_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let ps = pairs(n);
    let mut out = Vec::new();
    for mask in 0u64..1 << ps.len() {
        let edges: Vec<(usize, usize)> = ps
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        if axioms_hold(n, &matrix(n, &edges)) {
            out.push(edges);
        }
    }
    out
}

/// A random normalized table with stable bound at least `min_bound`.
pub fn random_table(rng: &mut ChaCha8Rng, min_bound: usize) -> ApproxTable {
    loop {
        let width = rng.gen_range(min_bound.max(6)..=24);
        let stages = rng.gen_range(2..=width);
        let mut raw: Vec<Vec<u64>> = Vec::with_capacity(stages);
        let mut row: Vec<u64> = (0..width as u64).map(|x| x + rng.gen_range(0..=3)).collect();
        raw.push(row.clone());
        for _ in 1..stages - 1 {
            for v in row.iter_mut() {
                if rng.gen_bool(0.3) {
                    *v += rng.gen_range(1..=4);
                }
            }
            raw.push(row.clone());
        }
        raw.push(row.clone());
        let table = normalize_approximations(&raw).expect("raw rows converge by construction");
        if table.stable_bound() >= min_bound {
            return table;
        }
    }
}

/// A random increasing tuple of `n` points with every point but the last
/// below `bound` and the last at most `bound`.
pub fn random_tuple(rng: &mut ChaCha8Rng, n: usize, bound: u64) -> Vec<u64> {
    loop {
        let mut t: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=bound)).collect();
        t.sort_unstable();
        t.dedup();
        if t.len() == n && t[..n - 1].iter().all(|&x| x < bound) {
            return t;
        }
    }
}
