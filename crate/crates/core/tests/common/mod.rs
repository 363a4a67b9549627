//! Shared generators for the integration suites.
#![allow(dead_code)]

use cluster_trop::fixtures;
use cluster_trop::quiver::ExchangeMatrix;
use cluster_trop::tropical::{walk_witness, MutationState, MutationWord, Witness};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest total dimension of states used by the exact seed-level suites.
///
/// Random cyc9 words have a heavy tail (total dimension in the thousands
/// for about 1% of length-8 words); states above the budget are rejected
/// and counted, never silently dropped.
pub const DIM_BUDGET: i64 = 40;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(name: &str) -> ExchangeMatrix {
    fixtures::quiver(name).unwrap()
}

/// A random acyclic skew-symmetric matrix with `n` in `2..=max_n` and entries up to `max_b`.
pub fn random_acyclic(rng: &mut ChaCha8Rng, max_n: usize, max_b: i64) -> ExchangeMatrix {
    let n = rng.gen_range(2..=max_n);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut b = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let m = rng.gen_range(0..=max_b);
            b[perm[i]][perm[j]] = m;
            b[perm[j]][perm[i]] = -m;
        }
    }
    ExchangeMatrix::new(b).unwrap()
}

/// A random skew-symmetric matrix (cycles allowed).
pub fn random_skew(rng: &mut ChaCha8Rng, max_n: usize, max_b: i64) -> ExchangeMatrix {
    let n = rng.gen_range(2..=max_n);
    let mut b = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let m = rng.gen_range(-max_b..=max_b);
            b[i][j] = m;
            b[j][i] = -m;
        }
    }
    ExchangeMatrix::new(b).unwrap()
}

/// A random skew-symmetrizable matrix `diag(d) S` with symmetrizer `d`.
pub fn random_symmetrizable(rng: &mut ChaCha8Rng, max_n: usize, max_b: i64) -> ExchangeMatrix {
    let s = random_skew(rng, max_n, max_b);
    let n = s.n();
    let d: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let b: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| d[i] * s.get(i, j)).collect()).collect();
    ExchangeMatrix::with_symmetrizer(b, d).unwrap()
}

pub fn random_vec(rng: &mut ChaCha8Rng, n: usize, r: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-r..=r)).collect()
}

/// A random word of length `0..=max_len` without immediate repeats.
pub fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(0..=max_len);
    let mut w: Vec<usize> = Vec::with_capacity(len);
    while w.len() < len {
        let k = rng.gen_range(0..n);
        if w.last() != Some(&k) {
            w.push(k);
        }
    }
    w
}

pub fn random_witness(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Witness {
    let w = random_word(rng, n, max_len);
    Witness::new(MutationWord::from_vertices(&w), rng.gen_range(0..n))
}

/// All witnesses with words of length `<= max_len` and no immediate repeats.
pub fn all_witnesses(n: usize, max_len: usize) -> Vec<Witness> {
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut out = Vec::new();
    for _ in 0..=max_len {
        let mut next = Vec::new();
        for w in &words {
            for i in 0..n {
                out.push(Witness::new(MutationWord::from_vertices(w), i));
            }
            for k in 0..n {
                if w.last() != Some(&k) {
                    let mut v = w.clone();
                    v.push(k);
                    next.push(v);
                }
            }
        }
        words = next;
    }
    out
}

pub fn total_dim(s: &MutationState) -> i64 {
    s.dim.iter().sum()
}

/// Reachable states of `b` with words of length `<= max_len` and total
/// dimension within [`DIM_BUDGET`], one witness per distinct delta, in a
/// deterministic order. Also returns the number of rejected witnesses.
pub fn reachable_corpus(b: &ExchangeMatrix, max_len: usize) -> (Vec<(Witness, MutationState)>, usize) {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    let mut rejected = 0;
    for w in all_witnesses(b.n(), max_len) {
        let s = walk_witness(b, &w, None).unwrap();
        if total_dim(&s) > DIM_BUDGET {
            rejected += 1;
            continue;
        }
        if seen.insert(s.delta.clone()) {
            out.push((w, s));
        }
    }
    (out, rejected)
}
