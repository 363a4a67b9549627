//! Cluster seeds with principal coefficients.
//!
//! Variables live in `2n` symbols `x_1..x_n, y_1..y_n`. The extended
//! `2n x n` matrix `[B; C]` (with `C = I` initially) mutates by the
//! ordinary matrix rule. Seed walks are plain left-to-right (final-seed)
//! walks; [`ClusterSeed::at_witness`] translates an initial-seed witness.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::quiver::ExchangeMatrix;
use crate::tropical::{MutationWord, SearchOutcome, Witness};
use crate::vector::{pos, IVec};

#[derive(Debug, Clone)]
pub struct ClusterSeed {
    initial: ExchangeMatrix,
    b: ExchangeMatrix,
    /// Bottom half of the extended matrix; empty when coefficient-free.
    c: Vec<Vec<i64>>,
    vars: Vec<Laurent>,
    principal: bool,
    history: Vec<usize>,
}

impl ClusterSeed {
    /// The initial seed with principal coefficients.
    pub fn new(b: ExchangeMatrix) -> Self {
        let n = b.n();
        let vars = (0..n).map(|i| Laurent::var(2 * n, i)).collect();
        let c = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        ClusterSeed { initial: b.clone(), b, c, vars, principal: true, history: Vec::new() }
    }

    /// The initial seed without coefficients (variables in `n` symbols).
    pub fn coefficient_free(b: ExchangeMatrix) -> Self {
        let n = b.n();
        let vars = (0..n).map(|i| Laurent::var(n, i)).collect();
        ClusterSeed { initial: b.clone(), b, c: Vec::new(), vars, principal: false, history: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.b.n()
    }

    pub fn b(&self) -> &ExchangeMatrix {
        &self.b
    }

    pub fn initial_b(&self) -> &ExchangeMatrix {
        &self.initial
    }

    /// Current coefficient rows (the c-vectors are its columns).
    pub fn c_matrix(&self) -> &[Vec<i64>] {
        &self.c
    }

    pub fn vars(&self) -> &[Laurent] {
        &self.vars
    }

    pub fn var(&self, i: usize) -> &Laurent {
        &self.vars[i]
    }

    pub fn is_principal(&self) -> bool {
        self.principal
    }

    pub fn history(&self) -> MutationWord {
        MutationWord::from_vertices(&self.history)
    }

    /// Mutation at `k`. The division by the old variable must be exact.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        self.b.check_mutable(k)?;
        let n = self.n();
        let nv = self.vars[0].nvars();
        let mut plus = Laurent::one(nv);
        let mut minus = Laurent::one(nv);
        for j in 0..n {
            let bjk = self.b.get(j, k);
            if bjk > 0 {
                plus = plus.checked_mul(&self.vars[j].pow(bjk as u32)?)?;
            } else if bjk < 0 {
                minus = minus.checked_mul(&self.vars[j].pow((-bjk) as u32)?)?;
            }
        }
        if self.principal {
            let mut ep = vec![0i32; nv];
            let mut em = vec![0i32; nv];
            for j in 0..n {
                let cjk = self.c[j][k];
                let e = i32::try_from(cjk.abs()).map_err(|_| Error::Overflow("coefficient exponent"))?;
                if cjk > 0 {
                    ep[n + j] = e;
                } else {
                    em[n + j] = e;
                }
            }
            plus = plus.shift(&ep)?;
            minus = minus.shift(&em)?;
        }
        let num = plus.checked_add(&minus)?;
        let new = num.div_exact(&self.vars[k]).map_err(|e| {
            Error::Invariant(format!("Laurent phenomenon violated at mutation {}: {e}", k + 1))
        })?;
        let mut vars = self.vars.clone();
        vars[k] = new;
        let c = if self.principal { mutate_coefficients(&self.b, &self.c, k) } else { Vec::new() };
        let mut history = self.history.clone();
        history.push(k);
        Ok(ClusterSeed { initial: self.initial.clone(), b: self.b.mutate(k)?, c, vars, principal: self.principal, history })
    }

    /// Literal walk: mutate at each vertex of `word` in order.
    pub fn walk(&self, word: &MutationWord) -> Result<Self> {
        let mut s = self.clone();
        for k in word.vertices()? {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// The seed holding the cluster variable of the witness `(w, i)` at
    /// position `i`: the literal walk along the reversed word.
    pub fn at_witness(base: &ExchangeMatrix, w: &Witness) -> Result<Self> {
        ClusterSeed::new(base.clone()).walk(&w.word.reversed())
    }

    /// `vars[i]` with every `x_j -> 1`, as a polynomial in `y_1..y_n`.
    pub fn f_polynomial(&self, i: usize) -> Result<Laurent> {
        if !self.principal {
            return Err(Error::Capability("F-polynomials need principal coefficients".into()));
        }
        let n = self.n();
        Ok(self.vars[i].restrict_to(&(n..2 * n).collect::<Vec<_>>()))
    }

    /// `vars[i]` with every `y_j -> 1`, in `x_1..x_n`.
    pub fn coefficient_free_var(&self, i: usize) -> Laurent {
        if !self.principal {
            return self.vars[i].clone();
        }
        self.vars[i].restrict_to(&(0..self.n()).collect::<Vec<_>>())
    }

    /// The g-vector, read from the grading `deg x_i = e_i`,
    /// `deg y_j = -(column j of the initial B)`; errors if not homogeneous.
    pub fn g_vector(&self, i: usize) -> Result<IVec> {
        if !self.principal {
            return Err(Error::Capability("g-vectors need principal coefficients".into()));
        }
        let n = self.n();
        let mut deg: Option<IVec> = None;
        for (e, _) in self.vars[i].terms() {
            let d: IVec = (0..n)
                .map(|r| e[r] as i64 - (0..n).map(|j| e[n + j] as i64 * self.initial.get(r, j)).sum::<i64>())
                .collect();
            match &deg {
                None => deg = Some(d),
                Some(d0) if *d0 != d => {
                    return Err(Error::Invariant(format!("variable {} is not g-homogeneous", i + 1)));
                }
                _ => {}
            }
        }
        deg.ok_or(Error::ZeroPolynomial("g-vector"))
    }

    /// Denominator vector of the coefficient-free variable at `i`.
    pub fn denvec_at(&self, i: usize) -> Result<IVec> {
        self.coefficient_free_var(i).denominator_vector()
    }

    /// Sorted keys of the coefficient-free cluster, for deduplication.
    pub fn cluster_key(&self) -> Vec<String> {
        let mut keys: Vec<String> = (0..self.n()).map(|i| self.coefficient_free_var(i).canonical_key()).collect();
        keys.sort();
        keys
    }
}

fn mutate_coefficients(b: &ExchangeMatrix, c: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let n = b.n();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j == k {
                        -c[i][j]
                    } else {
                        c[i][j] + pos(c[i][k]) * pos(b.get(k, j)) - pos(-c[i][k]) * pos(-b.get(k, j))
                    }
                })
                .collect()
        })
        .collect()
}

/// `x^g F(yhat)` with `yhat_j = prod_i x_i^{b_ij}` (column `j` of `b`).
pub fn separation_formula(b: &ExchangeMatrix, g: &[i64], f: &Laurent) -> Result<Laurent> {
    let n = b.n();
    let images: Vec<Laurent> = (0..n)
        .map(|j| Laurent::monomial(n, (0..n).map(|i| b.get(i, j) as i32).collect(), BigInt::one()))
        .collect();
    f.substitute(&images, n)?.shift(&g.iter().map(|&x| x as i32).collect::<Vec<_>>())
}

/// Both sides of the F-polynomial mutation identity, cleared of
/// denominators so they can be compared exactly:
///
/// `(y_k+1)^{-a} F(y) = (y'_k+1)^{-a'} F'(y')`, with `y'_k = 1/y_k` and
/// `y'_i = y_i y_k^{[-b_ik]_+} (y_k+1)^{b_ik}`.
pub fn f_mutation_sides(b: &ExchangeMatrix, k: usize, f: &Laurent, a: i64, f2: &Laurent, a2: i64) -> Result<(Laurent, Laurent)> {
    let n = b.n();
    let one = Laurent::one(n);
    let yk = Laurent::var(n, k);
    let yk1 = yk.checked_add(&one)?;
    // Each term y^e of F' becomes y^{e'} y_k^{s} (y_k+1)^{t}.
    let mut pieces = Vec::new();
    let mut min_t = 0i64;
    for (e, c) in f2.terms() {
        let mut mono = vec![0i32; n];
        let mut s = -(e[k] as i64);
        let mut t = 0i64;
        for i in 0..n {
            if i == k {
                continue;
            }
            mono[i] = e[i];
            let bik = b.get(i, k);
            s += e[i] as i64 * pos(-bik);
            t += e[i] as i64 * bik;
        }
        mono[k] = i32::try_from(s).map_err(|_| Error::Overflow("F-identity exponent"))?;
        min_t = min_t.min(t);
        pieces.push((Laurent::monomial(n, mono, c.clone()), t));
    }
    // (y'_k+1)^{-a2} = y_k^{a2} (y_k+1)^{-a2}
    let m = a.max(a2 - min_t).max(0);
    let lhs = yk1.pow((m - a) as u32)?.checked_mul(f)?;
    let mut rhs = Laurent::zero(n);
    for (mono, t) in pieces {
        rhs = rhs.checked_add(&mono.checked_mul(&yk1.pow((m + t - a2) as u32)?)?)?;
    }
    let mut shift = vec![0i32; n];
    shift[k] = a2 as i32;
    Ok((lhs, rhs.shift(&shift)?))
}

/// What [`search_variable`] looks for.
#[derive(Debug, Clone)]
pub enum SearchTarget {
    /// A coefficient-free Laurent polynomial in `x_1..x_n`.
    Variable(Laurent),
    Denominator(IVec),
}

/// A located variable: the literal walk and the position it sits at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Located {
    pub word: MutationWord,
    pub position: usize,
}

impl Located {
    /// The same variable as an initial-seed witness.
    pub fn witness(&self) -> Witness {
        Witness::new(self.word.reversed(), self.position)
    }
}

/// Breadth-first search over the exchange graph, deduplicating seeds by the
/// multiset of coefficient-free variables.
pub fn search_variable(b: &ExchangeMatrix, target: &SearchTarget, depth: usize, node_cap: usize) -> Result<SearchOutcome<Located>> {
    let n = b.n();
    if let SearchTarget::Variable(t) = target {
        if t.nvars() != n {
            return Err(Error::Dimension { expected: n, got: t.nvars() });
        }
    }
    let hit = |s: &ClusterSeed| -> Result<Option<usize>> {
        for i in 0..n {
            let ok = match target {
                SearchTarget::Variable(t) => s.var(i) == t,
                SearchTarget::Denominator(d) => &s.denvec_at(i)? == d,
            };
            if ok {
                return Ok(Some(i));
            }
        }
        Ok(None)
    };
    let root = ClusterSeed::coefficient_free(b.clone());
    if let Some(i) = hit(&root)? {
        return Ok(SearchOutcome::Found(Located { word: MutationWord::default(), position: i }));
    }
    let mut seen: HashSet<Vec<String>> = HashSet::new();
    seen.insert(root.cluster_key());
    let mut queue = VecDeque::from([root]);
    while let Some(s) = queue.pop_front() {
        if s.history.len() >= depth {
            continue;
        }
        for k in 0..n {
            if b.is_frozen(k) || s.history.last() == Some(&k) {
                continue;
            }
            let t = s.mutate(k)?;
            if !seen.insert(t.cluster_key()) {
                continue;
            }
            if let Some(position) = hit(&t)? {
                return Ok(SearchOutcome::Found(Located { word: t.history(), position }));
            }
            if seen.len() > node_cap {
                return Ok(SearchOutcome::Exhausted { nodes: seen.len() });
            }
            queue.push_back(t);
        }
    }
    Ok(SearchOutcome::NotFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{x_names, xy_names};

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]]).unwrap()
    }

    #[test]
    fn a2_first_step() {
        let s = ClusterSeed::new(a2()).mutate(0).unwrap();
        assert_eq!(s.coefficient_free_var(0), Laurent::parse("(x2+1)/x1", &x_names(2)).unwrap());
        let names: Vec<String> = (1..=2).map(|i| format!("y{i}")).collect();
        assert_eq!(s.f_polynomial(0).unwrap(), Laurent::parse("1+y1", &names).unwrap());
        assert_eq!(s.f_polynomial(1).unwrap(), Laurent::one(2));
    }

    #[test]
    fn a2_pentagon() {
        let s0 = ClusterSeed::new(a2());
        let s = s0.walk(&MutationWord::parse("1 2 1 2 1").unwrap()).unwrap();
        assert_eq!(s.var(0), s0.var(1));
        assert_eq!(s.var(1), s0.var(0));
    }

    #[test]
    fn frozen_rejected() {
        let b = ExchangeMatrix::with_parts(vec![vec![0, 1], vec![-1, 0]], vec![false, true], None).unwrap();
        assert!(matches!(ClusterSeed::new(b).mutate(1), Err(Error::Index(_))));
    }

    #[test]
    fn initial_seed_data() {
        let s = ClusterSeed::new(a2());
        for i in 0..2 {
            assert_eq!(s.f_polynomial(i).unwrap(), Laurent::one(2));
            let mut e = vec![0; 2];
            e[i] = -1;
            assert_eq!(s.denvec_at(i).unwrap(), e);
        }
        let p = Laurent::parse("x1*y1", &xy_names(2)).unwrap();
        assert_eq!(p.nvars(), 4);
    }

    #[test]
    fn a2_search() {
        let t = Laurent::parse("x1", &x_names(2)).unwrap();
        match search_variable(&a2(), &SearchTarget::Variable(t), 0, 10).unwrap() {
            SearchOutcome::Found(l) => assert!(l.word.is_empty()),
            o => panic!("{o:?}"),
        }
        let t = Laurent::parse("(x1+x2+1)/(x1*x2)", &x_names(2)).unwrap();
        assert!(matches!(search_variable(&a2(), &SearchTarget::Variable(t), 5, 100).unwrap(), SearchOutcome::Found(_)));
    }
}
