//! Exact seed-level properties on random mutation sequences.

mod common;

use cluster_trop::laurent::Laurent;
use cluster_trop::quiver::ExchangeMatrix;
use cluster_trop::seed::{f_mutation_sides, separation_formula, ClusterSeed};
use cluster_trop::tropical::{mu_y, walk_witness, MutationWord, Witness};
use cluster_trop::vector::{leq, neg_vec, pos};
use common::*;
use num_traits::{One, Signed};

const QUIVERS: [&str; 4] = ["a2", "a3", "kron", "cyc9"];
const WORDS_PER_QUIVER: usize = 50;

/// Whether every variable met along the literal walk `u` stays within the budget.
fn within_budget(b: &ExchangeMatrix, u: &[usize]) -> bool {
    (0..=u.len()).all(|len| {
        let mut prefix = u[..len].to_vec();
        prefix.reverse();
        (0..b.n()).all(|i| {
            let w = Witness::new(MutationWord::from_vertices(&prefix), i);
            total_dim(&walk_witness(b, &w, None).unwrap()) <= DIM_BUDGET
        })
    })
}

/// Draws words until `WORDS_PER_QUIVER` fit the budget; returns them and the rejection count.
fn accepted_words(b: &ExchangeMatrix, seed: u64, max_len: usize) -> (Vec<Vec<usize>>, usize) {
    let mut r = rng(seed);
    let mut out = Vec::new();
    let mut rejected = 0;
    while out.len() < WORDS_PER_QUIVER {
        let u = random_word(&mut r, b.n(), max_len);
        if within_budget(b, &u) {
            out.push(u);
        } else {
            rejected += 1;
        }
    }
    (out, rejected)
}

#[test]
fn laurent_phenomenon_and_f_polynomial_shape() {
    let mut total = 0;
    for (qi, name) in QUIVERS.iter().enumerate() {
        let b = q(name);
        let n = b.n();
        let (words, rejected) = accepted_words(&b, 100 + qi as u64, 8);
        println!("{name}: {} words checked, {rejected} rejected by the dimension budget {DIM_BUDGET}", words.len());
        for u in &words {
            // Each step divides exactly or the mutation returns an error.
            let mut s = ClusterSeed::new(b.clone());
            for &k in u {
                s = s.mutate(k).unwrap_or_else(|e| panic!("{name} word {u:?}: {e}"));
            }
            let mut rev = u.clone();
            rev.reverse();
            for i in 0..n {
                let w = Witness::new(MutationWord::from_vertices(&rev), i);
                let st = walk_witness(&b, &w, None).unwrap();
                let f = s.f_polynomial(i).unwrap();
                assert!(f.is_polynomial(), "{name} {w}: F is not a polynomial");
                assert!(f.coeff(&vec![0i32; n]).is_one(), "{name} {w}: constant term of F is not 1");
                assert!(f.terms().all(|(_, c)| c.is_positive()), "{name} {w}: F has a non-positive coefficient");
                let top: Vec<i64> = (0..n).map(|j| f.support().iter().map(|e| e[j]).max().unwrap()).collect();
                assert_eq!(top, st.dim, "{name} {w}: top degree of F is not the dimension vector");
                let g = s.g_vector(i).unwrap();
                assert_eq!(g, neg_vec(&st.delta), "{name} {w}: g-vector is not -delta");
                let x = s.coefficient_free_var(i);
                assert_eq!(separation_formula(&b, &g, &f).unwrap(), x, "{name} {w}: separation formula");
                let den = x.denominator_vector().unwrap();
                if st.dim.iter().any(|&d| d > 0) {
                    assert!(leq(&den, &st.dim), "{name} {w}: den {den:?} not <= dim {:?}", st.dim);
                }
                total += 1;
            }
        }
    }
    assert!(total >= 200 * 2);
}

#[test]
fn f_polynomial_mutation_identity() {
    let mut checked = 0;
    for (qi, name) in QUIVERS.iter().enumerate() {
        let b = q(name);
        let n = b.n();
        let mut r = rng(200 + qi as u64);
        let mut rejected = 0;
        let mut local = 0;
        while local < WORDS_PER_QUIVER {
            let w = random_witness(&mut r, n, 5);
            let k = rand::Rng::gen_range(&mut r, 0..n);
            let mut w2 = w.word.tokens.clone();
            w2.push(cluster_trop::tropical::Token::Mu(k));
            let w2 = Witness::new(MutationWord { tokens: w2 }, w.start);
            let bk = b.mutate(k).unwrap();
            let s = walk_witness(&b, &w, None).unwrap();
            let s2 = walk_witness(&bk, &w2, None).unwrap();
            if total_dim(&s) > DIM_BUDGET || total_dim(&s2) > DIM_BUDGET {
                rejected += 1;
                continue;
            }
            assert_eq!(s2.delta, mu_y(&b, &s.delta, k));
            let f = ClusterSeed::at_witness(&b, &w).unwrap().f_polynomial(w.start).unwrap();
            let f2 = ClusterSeed::at_witness(&bk, &w2).unwrap().f_polynomial(w.start).unwrap();
            let (lhs, rhs) = f_mutation_sides(&b, k, &f, pos(s.delta[k]), &f2, pos(s2.delta[k])).unwrap();
            assert_eq!(lhs, rhs, "{name} {w} then mu_{}", k + 1);
            local += 1;
        }
        println!("{name}: {local} F-identity cases, {rejected} rejected by the dimension budget");
        checked += local;
    }
    assert!(checked >= 200);
}

#[test]
fn counterexample_variables_share_their_denominator() {
    let b = q("cyc9");
    let a = Witness::parse("4 3 2 4 3 1 4 2:4").unwrap();
    let c = Witness::parse("2 1 4 2 1 3 2 4:2").unwrap();
    let xa = ClusterSeed::at_witness(&b, &a).unwrap();
    let xc = ClusterSeed::at_witness(&b, &c).unwrap();
    let (fa, fc) = (xa.coefficient_free_var(a.start), xc.coefficient_free_var(c.start));
    assert_ne!(fa, fc);
    assert_eq!(fa.denominator_vector().unwrap(), vec![4, 6, 4, 6]);
    assert_eq!(fc.denominator_vector().unwrap(), vec![4, 6, 4, 6]);
    assert_eq!(xa.g_vector(a.start).unwrap(), vec![-3, 2, 0, -1]);
    assert_eq!(xc.g_vector(c.start).unwrap(), vec![0, -1, -3, 2]);
}

#[test]
fn initial_variables_have_trivial_f() {
    for name in QUIVERS {
        let b = q(name);
        let s = ClusterSeed::new(b.clone());
        for i in 0..b.n() {
            assert_eq!(s.f_polynomial(i).unwrap(), Laurent::one(b.n()));
            assert_eq!(s.g_vector(i).unwrap(), cluster_trop::vector::unit(b.n(), i));
        }
    }
}
