//! Tropical mutation calculus on `(B, delta, deltacheck, dim, gamma)`.
//!
//! # Word convention
//!
//! Words are read in the initial-seed sense. A witness `(w, i)` with
//! `w = (k_1, .., k_r)` relative to a base matrix `B` starts from `-e_i` at
//! `B_0 = mu_{k_1} .. mu_{k_r}(B)` and steps `k_1, .., k_r` in order, so the
//! walk ends exactly at `B`. The resulting vectors are expressed in the seed
//! of `B`. [`walk_literal`] is the plain left-to-right walk starting at `B`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::quiver::ExchangeMatrix;
use crate::vector::{add, dot, neg_unit, neg_vec, pos, sub, IVec};

/// One letter of an extended mutation word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Token {
    /// Ordinary mutation at a 0-based vertex.
    Mu(usize),
    /// The DT-transformation `tau` (written `+`).
    Tau,
    /// Its inverse (written `-`).
    TauInv,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MutationWord {
    pub tokens: Vec<Token>,
}

impl MutationWord {
    pub fn from_vertices(ks: &[usize]) -> Self {
        MutationWord { tokens: ks.iter().map(|&k| Token::Mu(k)).collect() }
    }

    /// Parses 1-based vertex tokens and `+`/`-`, separated by whitespace or commas.
    pub fn parse(s: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        for t in s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            tokens.push(match t {
                "+" => Token::Tau,
                "-" | "\u{2212}" => Token::TauInv,
                _ => {
                    let k: usize = t.parse().map_err(|_| Error::Parse(format!("bad word token {t:?}")))?;
                    if k == 0 {
                        return Err(Error::Parse("vertex indices are 1-based".into()));
                    }
                    Token::Mu(k - 1)
                }
            });
        }
        Ok(MutationWord { tokens })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn is_ordinary(&self) -> bool {
        self.tokens.iter().all(|t| matches!(t, Token::Mu(_)))
    }

    /// The vertices of an ordinary word, or an error naming the first tau step.
    pub fn vertices(&self) -> Result<Vec<usize>> {
        self.tokens
            .iter()
            .map(|t| match t {
                Token::Mu(k) => Ok(*k),
                _ => Err(Error::Precondition("extended steps are not allowed here".into())),
            })
            .collect()
    }

    pub fn reversed(&self) -> Self {
        MutationWord { tokens: self.tokens.iter().rev().copied().collect() }
    }

    /// Checks every vertex token against `b`.
    pub fn check(&self, b: &ExchangeMatrix) -> Result<()> {
        for t in &self.tokens {
            if let Token::Mu(k) = t {
                b.check_mutable(*k)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for MutationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .tokens
            .iter()
            .map(|t| match t {
                Token::Mu(k) => (k + 1).to_string(),
                Token::Tau => "+".into(),
                Token::TauInv => "-".into(),
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// A reachability witness: the vector `word(-e_start)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Witness {
    pub word: MutationWord,
    /// 0-based start vertex.
    pub start: usize,
}

impl Witness {
    pub fn new(word: MutationWord, start: usize) -> Self {
        Witness { word, start }
    }

    /// Parses `"4 3 2 4 3 1 4 2:4"` (word, colon, 1-based start).
    pub fn parse(s: &str) -> Result<Self> {
        let (w, i) = s
            .rsplit_once(':')
            .ok_or_else(|| Error::Parse(format!("witness {s:?} must look like \"word:start\"")))?;
        let i: usize = i.trim().parse().map_err(|_| Error::Parse(format!("bad start vertex {i:?}")))?;
        if i == 0 {
            return Err(Error::Parse("start vertex is 1-based".into()));
        }
        Ok(Witness { word: MutationWord::parse(w)?, start: i - 1 })
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.word, self.start + 1)
    }
}

/// Supplies dimension vectors needed by the DT-steps.
pub trait DimProvider {
    fn name(&self) -> String;
    /// Dimension vector of the generic presentation of weight `delta`.
    fn dim_of_delta(&self, b: &ExchangeMatrix, delta: &[i64]) -> Result<IVec>;
    /// Dimension vector of the generic copresentation of coweight `deltacheck`.
    fn dim_of_coweight(&self, b: &ExchangeMatrix, deltacheck: &[i64]) -> Result<IVec>;
}

// ---- the four rules; all read the matrix before it co-mutates ----

/// Weight mutation: `d'(k) = -d(k)`, `d'(i) = d(i) + [-b_ki]_+ d(k) + b_ki [d(k)]_+`.
pub fn mu_y(b: &ExchangeMatrix, delta: &[i64], k: usize) -> IVec {
    let dk = delta[k];
    (0..delta.len())
        .map(|i| if i == k { -dk } else { delta[i] + pos(-b.get(k, i)) * dk + b.get(k, i) * pos(dk) })
        .collect()
}

/// Coweight mutation: `c'(k) = -c(k)`, `c'(i) = c(i) + [b_ki]_+ c(k) - b_ki [c(k)]_+`.
pub fn mu_ycheck(b: &ExchangeMatrix, dc: &[i64], k: usize) -> IVec {
    let ck = dc[k];
    (0..dc.len())
        .map(|i| if i == k { -ck } else { dc[i] + pos(b.get(k, i)) * ck - b.get(k, i) * pos(ck) })
        .collect()
}

/// Dimension-vector mutation. The sum is written with column `k`
/// (`[-b_jk]_+`), which equals the row form `[b_kj]_+` when `B` is
/// skew-symmetric and is the form that keeps `deltacheck = delta + dim B`
/// for skew-symmetrizable `B`.
pub fn mu_dim(b: &ExchangeMatrix, delta: &[i64], dc: &[i64], dim: &[i64], k: usize) -> IVec {
    let mut d = dim.to_vec();
    let s: i64 = (0..dim.len()).map(|j| dim[j] * pos(-b.get(j, k))).sum();
    d[k] = s - dim[k] + pos(-delta[k]) + pos(dc[k]);
    d
}

/// Schur-rank mutation: `g'(k) = max(g.[b_k]_+, g.[-b_k]_+) - g(k)`.
pub fn mu_x(b: &ExchangeMatrix, gamma: &[i64], k: usize) -> IVec {
    let row = b.row(k);
    let p: i64 = gamma.iter().zip(row).map(|(g, &x)| g * pos(x)).sum();
    let m: i64 = gamma.iter().zip(row).map(|(g, &x)| g * pos(-x)).sum();
    let mut out = gamma.to_vec();
    out[k] = p.max(m) - gamma[k];
    out
}

/// The two alternative forms of `mu_x` at `k`:
/// `g.[b_k]_+ - g(k) + [-g.b_k]_+` and `g.[-b_k]_+ - g(k) + [g.b_k]_+`.
pub fn mu_x_alternatives(b: &ExchangeMatrix, gamma: &[i64], k: usize) -> (i64, i64) {
    let row = b.row(k);
    let p: i64 = gamma.iter().zip(row).map(|(g, &x)| g * pos(x)).sum();
    let m: i64 = gamma.iter().zip(row).map(|(g, &x)| g * pos(-x)).sum();
    let gb = dot(gamma, row);
    (p - gamma[k] + pos(-gb), m - gamma[k] + pos(gb))
}

/// The lock-step state of all tracked vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationState {
    pub b: ExchangeMatrix,
    pub delta: IVec,
    pub deltacheck: IVec,
    pub dim: IVec,
    /// Schur rank track; `None` when not tracked.
    pub gamma: Option<IVec>,
    /// False when `(delta, dim)` were supplied by the caller rather than
    /// reached from some `-e_i`; the dim rule is only guaranteed on reached states.
    pub checked: bool,
}

impl MutationState {
    /// The state `-e_i` with zero dimension vector and `gamma = -e_i`.
    pub fn initial(b: ExchangeMatrix, i: usize) -> Result<Self> {
        let n = b.n();
        if i >= n {
            return Err(Error::Index(format!("start vertex {} out of range 1..={n}", i + 1)));
        }
        let e = neg_unit(n, i);
        Ok(MutationState {
            b,
            delta: e.clone(),
            deltacheck: e.clone(),
            dim: vec![0; n],
            gamma: Some(e),
            checked: true,
        })
    }

    /// A caller-supplied state; `deltacheck` is derived from `delta + dim B`.
    pub fn from_parts(b: ExchangeMatrix, delta: IVec, dim: IVec, gamma: Option<IVec>) -> Result<Self> {
        let n = b.n();
        for v in [&delta, &dim].into_iter().chain(gamma.iter()) {
            if v.len() != n {
                return Err(Error::Dimension { expected: n, got: v.len() });
            }
        }
        if dim.iter().any(|&x| x < 0) {
            return Err(Error::Precondition("dimension vector must be non-negative".into()));
        }
        let deltacheck = add(&delta, &b.left_mul(&dim));
        Ok(MutationState { b, delta, deltacheck, dim, gamma, checked: false })
    }

    pub fn n(&self) -> usize {
        self.b.n()
    }

    fn assert_invariants(&self) -> Result<()> {
        let expect = add(&self.delta, &self.b.left_mul(&self.dim));
        if expect != self.deltacheck {
            return Err(Error::Invariant(format!(
                "deltacheck {:?} != delta + dim B = {:?}",
                self.deltacheck, expect
            )));
        }
        if self.checked && self.dim.iter().any(|&x| x < 0) {
            return Err(Error::Invariant(format!("negative dimension vector {:?}", self.dim)));
        }
        Ok(())
    }

    /// One ordinary mutation of every track, then of `B`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        self.b.check_mutable(k)?;
        let b = &self.b;
        let next = MutationState {
            delta: mu_y(b, &self.delta, k),
            deltacheck: mu_ycheck(b, &self.deltacheck, k),
            dim: mu_dim(b, &self.delta, &self.deltacheck, &self.dim, k),
            gamma: self.gamma.as_ref().map(|g| mu_x(b, g, k)),
            b: b.mutate(k)?,
            checked: self.checked,
        };
        next.assert_invariants()?;
        Ok(next)
    }

    /// `tau` (`inverse = false`) or `tau^{-1}`; `B` is unchanged.
    ///
    /// `tau` sends the coweight to `-delta`, `tau^{-1}` sends the weight to
    /// `-deltacheck`. The other side needs the new dimension vector, and the
    /// Schur rank needs `dim(gamma B)` (resp. `dim` of weight `-gamma B`), all
    /// taken from the provider.
    pub fn tau(&self, inverse: bool, provider: Option<&dyn DimProvider>) -> Result<Self> {
        let p = provider.ok_or_else(|| {
            Error::Capability(
                "a DT-step needs a dimension provider (pathalg oracle for acyclic B, or a fixture table)".into(),
            )
        })?;
        let b = &self.b;
        let (delta, deltacheck, dim) = if inverse {
            let delta = neg_vec(&self.deltacheck);
            let dim = p.dim_of_delta(b, &delta)?;
            let dc = add(&delta, &b.left_mul(&dim));
            (delta, dc, dim)
        } else {
            let dc = neg_vec(&self.delta);
            let dim = p.dim_of_coweight(b, &dc)?;
            let delta = sub(&dc, &b.left_mul(&dim));
            (delta, dc, dim)
        };
        let gamma = match &self.gamma {
            None => None,
            Some(g) => {
                let gb = b.left_mul(g);
                let d = if inverse { p.dim_of_delta(b, &neg_vec(&gb))? } else { p.dim_of_coweight(b, &gb)? };
                Some(sub(&d, g))
            }
        };
        let next = MutationState { b: b.clone(), delta, deltacheck, dim, gamma, checked: self.checked };
        next.assert_invariants()?;
        Ok(next)
    }

    pub fn apply(&self, t: Token, provider: Option<&dyn DimProvider>) -> Result<Self> {
        match t {
            Token::Mu(k) => self.mutate(k),
            Token::Tau => self.tau(false, provider),
            Token::TauInv => self.tau(true, provider),
        }
    }

    pub fn apply_word(&self, w: &MutationWord, provider: Option<&dyn DimProvider>) -> Result<Self> {
        let mut s = self.clone();
        for &t in &w.tokens {
            s = s.apply(t, provider)?;
        }
        Ok(s)
    }
}

/// The matrix a witness word starts from: `mu_{k_1} .. mu_{k_r}(B)`.
pub fn pullback_matrix(base: &ExchangeMatrix, word: &MutationWord) -> Result<ExchangeMatrix> {
    let mut m = base.clone();
    for t in word.tokens.iter().rev() {
        if let Token::Mu(k) = t {
            m = m.mutate(*k)?;
        }
    }
    Ok(m)
}

/// Evaluates a witness relative to `base` (initial-seed convention).
pub fn walk_witness(base: &ExchangeMatrix, w: &Witness, provider: Option<&dyn DimProvider>) -> Result<MutationState> {
    w.word.check(base)?;
    let b0 = pullback_matrix(base, &w.word)?;
    let s = MutationState::initial(b0, w.start)?.apply_word(&w.word, provider)?;
    debug_assert_eq!(&s.b, base);
    Ok(s)
}

/// Plain left-to-right walk from `-e_start` at `b`.
pub fn walk_literal(
    b: &ExchangeMatrix,
    start: usize,
    word: &MutationWord,
    provider: Option<&dyn DimProvider>,
) -> Result<MutationState> {
    word.check(b)?;
    MutationState::initial(b.clone(), start)?.apply_word(word, provider)
}

/// Schur rank of the extended-reachable vector given by a witness.
pub fn schur_rank(base: &ExchangeMatrix, w: &Witness, provider: Option<&dyn DimProvider>) -> Result<IVec> {
    Ok(walk_witness(base, w, provider)?.gamma.expect("gamma is tracked from -e_i"))
}

/// Outcome of a bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    NotFound,
    /// The node cap was hit before the depth bound was exhausted.
    Exhausted { nodes: usize },
}

/// Shortest witness `(w, i)` with `w(-e_i) = target` relative to `b`.
///
/// Searches backwards from `(b, target)`; a path `k_r, .., k_1` reaching
/// `-e_i` gives the witness `k_1, .., k_r`. This is the same search tree as
/// the forward one from all `-e_i`, since each step is an involution.
pub fn reach_search(b: &ExchangeMatrix, target: &[i64], depth: usize, node_cap: usize) -> Result<SearchOutcome<Witness>> {
    let n = b.n();
    if target.len() != n {
        return Err(Error::Dimension { expected: n, got: target.len() });
    }
    let is_neg_unit = |v: &[i64]| -> Option<usize> {
        let nz: Vec<usize> = (0..n).filter(|&i| v[i] != 0).collect();
        (nz.len() == 1 && v[nz[0]] == -1).then(|| nz[0])
    };
    if let Some(i) = is_neg_unit(target) {
        return Ok(SearchOutcome::Found(Witness::new(MutationWord::default(), i)));
    }
    let mut seen: HashSet<(ExchangeMatrix, IVec)> = HashSet::new();
    seen.insert((b.clone(), target.to_vec()));
    let mut queue: VecDeque<(ExchangeMatrix, IVec, Vec<usize>)> = VecDeque::new();
    queue.push_back((b.clone(), target.to_vec(), Vec::new()));
    while let Some((m, d, path)) = queue.pop_front() {
        if path.len() >= depth {
            continue;
        }
        for k in 0..n {
            if m.is_frozen(k) || path.last() == Some(&k) {
                continue;
            }
            let d2 = mu_y(&m, &d, k);
            let m2 = m.mutate(k)?;
            let mut p2 = path.clone();
            p2.push(k);
            if let Some(i) = is_neg_unit(&d2) {
                p2.reverse();
                return Ok(SearchOutcome::Found(Witness::new(MutationWord::from_vertices(&p2), i)));
            }
            if seen.insert((m2.clone(), d2.clone())) {
                if seen.len() > node_cap {
                    return Ok(SearchOutcome::Exhausted { nodes: seen.len() });
                }
                queue.push_back((m2, d2, p2));
            }
        }
    }
    Ok(SearchOutcome::NotFound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc9() -> ExchangeMatrix {
        ExchangeMatrix::new(vec![
            vec![0, 2, 0, -1],
            vec![-2, 0, 1, 0],
            vec![0, -1, 0, 2],
            vec![1, 0, -2, 0],
        ])
        .unwrap()
    }

    #[test]
    fn single_steps_from_minus_e4() {
        let s = MutationState::initial(cyc9(), 3).unwrap().mutate(3).unwrap();
        assert_eq!(s.delta, vec![0, 0, -2, 1]);
        assert_eq!(s.deltacheck, vec![-1, 0, 0, 1]);
        assert_eq!(s.dim, vec![0, 0, 0, 1]);
    }

    #[test]
    fn counter_example_walks() {
        let w1 = Witness::parse("4 3 2 4 3 1 4 2:4").unwrap();
        let s = walk_witness(&cyc9(), &w1, None).unwrap();
        assert_eq!(s.delta, vec![3, -2, 0, 1]);
        assert_eq!(s.dim, vec![4, 6, 4, 6]);
        assert_eq!(s.gamma.unwrap(), vec![4, 6, 4, 5]);
        let w2 = Witness::parse("2 1 4 2 1 3 2 4:2").unwrap();
        let s = walk_witness(&cyc9(), &w2, None).unwrap();
        assert_eq!(s.delta, vec![0, 1, 3, -2]);
        assert_eq!(s.dim, vec![4, 6, 4, 6]);
        assert_eq!(s.gamma.unwrap(), vec![4, 5, 4, 6]);
    }

    #[test]
    fn zero_is_fixed() {
        let s = MutationState::from_parts(cyc9(), vec![0; 4], vec![0; 4], Some(vec![0; 4])).unwrap();
        let t = s.apply_word(&MutationWord::parse("4 3 2 4 3 1 4 2").unwrap(), None).unwrap();
        assert_eq!(t.delta, vec![0; 4]);
        assert_eq!(t.deltacheck, vec![0; 4]);
        assert_eq!(t.gamma.unwrap(), vec![0; 4]);
    }

    #[test]
    fn reach_finds_the_counterexample_word() {
        match reach_search(&cyc9(), &[3, -2, 0, 1], 8, 100_000).unwrap() {
            SearchOutcome::Found(w) => {
                assert_eq!(w.word.len(), 8);
                assert_eq!(walk_witness(&cyc9(), &w, None).unwrap().delta, vec![3, -2, 0, 1]);
            }
            other => panic!("{other:?}"),
        }
        match reach_search(&cyc9(), &[0, -1, 0, 0], 3, 10).unwrap() {
            SearchOutcome::Found(w) => assert!(w.word.is_empty() && w.start == 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tau_needs_provider() {
        let s = MutationState::initial(cyc9(), 0).unwrap();
        assert!(matches!(s.tau(false, None), Err(Error::Capability(_))));
    }

    #[test]
    fn word_parsing() {
        let w = MutationWord::parse("4 3 + -").unwrap();
        assert_eq!(w.tokens, vec![Token::Mu(3), Token::Mu(2), Token::Tau, Token::TauInv]);
        assert_eq!(w.to_string(), "4 3 + -");
        assert!(MutationWord::parse("0").is_err());
        assert!(Witness::parse("1 2").is_err());
    }
}
