//! Generic-representation oracle for acyclic path algebras.
//!
//! Every generic quantity is computed by random specialization over `F_p`
//! and taking the semicontinuity-correct extreme over several trials: the
//! minimum for hom-type dimensions, the maximum for ranks. Each query draws
//! from its own RNG stream, derived from the oracle seed and the query
//! inputs, so answers do not depend on call order.

pub mod field;
pub mod rep;

use std::collections::HashMap;
use std::sync::Mutex;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{EulerMatrix, ExchangeMatrix};
use crate::tropical::DimProvider;
use crate::vector::{dot, is_zero, neg_unit, sub, IVec};
use field::Mat;
pub use rep::{Copresentation, PathData, Presentation, QuiverRep};

/// Default number of trials per generic value.
pub const TRIALS: usize = 5;
/// Trials used for the diagonal test in [`Oracle::classify_delta`].
pub const CLASSIFY_TRIALS: usize = 20;
/// Largest search box for subrepresentation and splitting searches.
pub const BOX_LIMIT: u64 = 1_000_000;

/// Summands with multiplicities, sorted in decreasing lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalDecomposition {
    pub summands: Vec<(IVec, usize)>,
}

impl CanonicalDecomposition {
    fn from_list(list: Vec<IVec>) -> Self {
        let mut counts: HashMap<IVec, usize> = HashMap::new();
        for v in list {
            *counts.entry(v).or_default() += 1;
        }
        let mut summands: Vec<(IVec, usize)> = counts.into_iter().collect();
        summands.sort_by(|a, b| b.0.cmp(&a.0));
        CanonicalDecomposition { summands }
    }

    pub fn total_multiplicity(&self) -> usize {
        self.summands.iter().map(|s| s.1).sum()
    }

    pub fn multiplicity_of(&self, v: &[i64]) -> usize {
        self.summands.iter().find(|s| s.0 == v).map_or(0, |s| s.1)
    }

    pub fn sum(&self, n: usize) -> IVec {
        let mut t = vec![0i64; n];
        for (v, m) in &self.summands {
            for (x, y) in t.iter_mut().zip(v) {
                *x += *m as i64 * y;
            }
        }
        t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeltaClass {
    Real,
    Tame,
    Wild,
    Decomposable,
}

/// The oracle for one acyclic exchange matrix.
pub struct Oracle {
    b: ExchangeMatrix,
    euler: EulerMatrix,
    pd: PathData,
    seed: u64,
    trials: usize,
    ext_cache: Mutex<HashMap<(IVec, IVec), i64>>,
    decomp_cache: Mutex<HashMap<IVec, Vec<IVec>>>,
}

impl std::fmt::Debug for Oracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Oracle").field("b", &self.b).field("seed", &self.seed).finish()
    }
}

fn fnv(seed: u64, tag: &str, parts: &[&[i64]]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |bytes: &[u8]| {
        for &x in bytes {
            h ^= x as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    eat(&seed.to_le_bytes());
    eat(tag.as_bytes());
    for p in parts {
        eat(&(p.len() as u64).to_le_bytes());
        for x in *p {
            eat(&x.to_le_bytes());
        }
    }
    h
}

fn to_usize(v: &[i64]) -> Vec<usize> {
    v.iter().map(|&x| x as usize).collect()
}

fn to_ivec(v: &[usize]) -> IVec {
    v.iter().map(|&x| x as i64).collect()
}

fn box_size(v: &[i64]) -> u64 {
    v.iter().fold(1u64, |acc, &x| acc.saturating_mul(x as u64 + 1))
}

/// All vectors `0 <= g <= v`.
fn box_points(v: &[i64]) -> Vec<IVec> {
    let mut out = vec![Vec::new()];
    for &x in v {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=x).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

impl Oracle {
    pub fn new(b: &ExchangeMatrix, seed: u64) -> Result<Self> {
        let pd = PathData::new(b)?;
        let euler = b.euler_matrix()?;
        Ok(Oracle {
            b: b.clone(),
            euler,
            pd,
            seed,
            trials: TRIALS,
            ext_cache: Mutex::new(HashMap::new()),
            decomp_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials.max(1);
        self
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.b
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn euler(&self) -> &EulerMatrix {
        &self.euler
    }

    pub fn paths(&self) -> &PathData {
        &self.pd
    }

    fn rng(&self, tag: &str, parts: &[&[i64]]) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(fnv(self.seed, tag, parts))
    }

    fn check_len(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.b.n() {
            return Err(Error::Dimension { expected: self.b.n(), got: v.len() });
        }
        Ok(())
    }

    fn check_dim(&self, v: &[i64]) -> Result<()> {
        self.check_len(v)?;
        if let Some(x) = v.iter().find(|&&x| x < 0) {
            return Err(Error::Precondition(format!("dimension vector has negative entry {x}")));
        }
        Ok(())
    }

    /// A general representation of dimension `alpha` for `rng`.
    pub fn random_rep(&self, alpha: &[i64], rng: &mut ChaCha8Rng) -> QuiverRep {
        QuiverRep::random(&self.pd, &to_usize(alpha), rng)
    }

    pub fn generic_hom(&self, alpha: &[i64], beta: &[i64]) -> Result<i64> {
        self.check_dim(alpha)?;
        self.check_dim(beta)?;
        let mut rng = self.rng("hom", &[alpha, beta]);
        let mut best = usize::MAX;
        for _ in 0..self.trials {
            let m = self.random_rep(alpha, &mut rng);
            let n = self.random_rep(beta, &mut rng);
            best = best.min(m.hom_dim(&self.pd, &n));
        }
        Ok(best as i64)
    }

    pub fn generic_ext(&self, alpha: &[i64], beta: &[i64]) -> Result<i64> {
        let key = (alpha.to_vec(), beta.to_vec());
        if let Some(&v) = self.ext_cache.lock().expect("cache lock").get(&key) {
            return Ok(v);
        }
        let v = self.generic_hom(alpha, beta)? - self.euler.form(alpha, beta);
        self.ext_cache.lock().expect("cache lock").insert(key, v);
        Ok(v)
    }

    fn presentation(&self, delta: &[i64], rng: &mut ChaCha8Rng) -> Presentation {
        Presentation::random(&self.pd, delta, rng)
    }

    fn copresentation(&self, coweight: &[i64], rng: &mut ChaCha8Rng) -> Copresentation {
        Copresentation::random(&self.pd, coweight, rng)
    }

    /// Dimension vector of the cokernel of a general presentation of weight `delta`.
    pub fn dim_of_delta(&self, delta: &[i64]) -> Result<IVec> {
        self.check_len(delta)?;
        let mut rng = self.rng("dim", &[delta]);
        let mut best: Option<IVec> = None;
        for _ in 0..self.trials {
            let d = self.presentation(delta, &mut rng);
            let c = to_ivec(&d.coker(&self.pd).alpha);
            best = Some(match best {
                None => c,
                Some(b) => b.iter().zip(&c).map(|(x, y)| *x.min(y)).collect(),
            });
        }
        Ok(best.expect("at least one trial"))
    }

    /// Multiplicities of the summands `P_i -> 0` in a general presentation.
    ///
    /// The general presentation splits as the minimal presentation of its
    /// cokernel, of weight `dim E`, plus `P(m) -> 0`; so `m = dim E - delta`.
    pub fn negative_part(&self, delta: &[i64]) -> Result<IVec> {
        let dim = self.dim_of_delta(delta)?;
        let m = sub(&self.euler.weight(&dim), delta);
        if m.iter().any(|&x| x < 0) {
            return Err(Error::Invariant(format!("negative part {m:?} of {delta:?} is not effective")));
        }
        Ok(m)
    }

    /// Dimension vector of the kernel of a general copresentation of coweight `coweight`.
    pub fn dim_of_coweight(&self, coweight: &[i64]) -> Result<IVec> {
        self.check_len(coweight)?;
        let mut rng = self.rng("codim", &[coweight]);
        let mut best: Option<IVec> = None;
        for _ in 0..self.trials {
            let d = self.copresentation(coweight, &mut rng);
            let k = to_ivec(&d.kernel(&self.pd).alpha);
            best = Some(match best {
                None => k,
                Some(b) => b.iter().zip(&k).map(|(x, y)| *x.min(y)).collect(),
            });
        }
        Ok(best.expect("at least one trial"))
    }

    /// Multiplicities of the summands `0 -> I_i` in a general copresentation.
    pub fn negative_copart(&self, coweight: &[i64]) -> Result<IVec> {
        let dim = self.dim_of_coweight(coweight)?;
        let m = sub(&self.euler.coweight(&dim), coweight);
        if m.iter().any(|&x| x < 0) {
            return Err(Error::Invariant(format!("negative part {m:?} of coweight {coweight:?} is not effective")));
        }
        Ok(m)
    }

    /// Generic `(hom, e)` of a presentation of weight `delta` against the
    /// kernel of a general copresentation of coweight `etacheck`.
    pub fn hom_e_pres(&self, delta: &[i64], etacheck: &[i64]) -> Result<(i64, i64)> {
        self.check_len(delta)?;
        self.check_len(etacheck)?;
        let mut rng = self.rng("hompres", &[delta, etacheck]);
        let mut best = (usize::MAX, usize::MAX);
        for _ in 0..self.trials {
            let d = self.presentation(delta, &mut rng);
            let n = self.copresentation(etacheck, &mut rng).kernel(&self.pd);
            let (h, e) = d.hom_e(&self.pd, &n);
            best = (best.0.min(h), best.1.min(e));
        }
        Ok((best.0 as i64, best.1 as i64))
    }

    pub fn hom_pres(&self, delta: &[i64], etacheck: &[i64]) -> Result<i64> {
        Ok(self.hom_e_pres(delta, etacheck)?.0)
    }

    /// Generic `e(delta, eta)`: a presentation of weight `delta` against the
    /// cokernel of an independent general presentation of weight `eta`.
    pub fn e_inv(&self, delta: &[i64], eta: &[i64]) -> Result<i64> {
        self.check_len(delta)?;
        self.check_len(eta)?;
        let mut rng = self.rng("einv", &[delta, eta]);
        let mut best = usize::MAX;
        for _ in 0..self.trials {
            let d = self.presentation(delta, &mut rng);
            let n = self.presentation(eta, &mut rng).coker(&self.pd);
            best = best.min(d.hom_e(&self.pd, &n).1);
        }
        Ok(best as i64)
    }

    /// `max gamma . delta` over generic subrepresentation dimension vectors
    /// `gamma` of the general kernel of coweight `etacheck`.
    pub fn tropical_f_generic(&self, etacheck: &[i64], delta: &[i64]) -> Result<i64> {
        self.check_len(delta)?;
        let beta = self.dim_of_coweight(etacheck)?;
        if box_size(&beta) > BOX_LIMIT {
            return Err(Error::Capacity(format!(
                "subrepresentation box for dimension {beta:?} exceeds {BOX_LIMIT} cells; use smaller inputs"
            )));
        }
        let mut cands: Vec<(i64, IVec)> = box_points(&beta).into_iter().map(|g| (dot(&g, delta), g)).collect();
        cands.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
        for (val, g) in cands {
            let rest = sub(&beta, &g);
            if self.generic_ext(&g, &rest)? == 0 {
                return Ok(val);
            }
        }
        unreachable!("gamma = 0 is always a subrepresentation")
    }

    fn split(&self, alpha: &[i64]) -> Result<Option<(IVec, IVec)>> {
        for b in box_points(alpha) {
            let c = sub(alpha, &b);
            if is_zero(&b) || is_zero(&c) || b > c {
                continue;
            }
            if self.euler.form(&b, &c) < 0 || self.euler.form(&c, &b) < 0 {
                continue;
            }
            if self.generic_ext(&b, &c)? == 0 && self.generic_ext(&c, &b)? == 0 {
                return Ok(Some((b, c)));
            }
        }
        Ok(None)
    }

    fn decompose(&self, alpha: &[i64]) -> Result<Vec<IVec>> {
        if let Some(v) = self.decomp_cache.lock().expect("cache lock").get(alpha) {
            return Ok(v.clone());
        }
        let out = if is_zero(alpha) {
            Vec::new()
        } else {
            match self.split(alpha)? {
                None => vec![alpha.to_vec()],
                Some((b, c)) => {
                    let mut l = self.decompose(&b)?;
                    l.extend(self.decompose(&c)?);
                    l
                }
            }
        };
        self.decomp_cache.lock().expect("cache lock").insert(alpha.to_vec(), out.clone());
        Ok(out)
    }

    /// Canonical decomposition of a dimension vector.
    pub fn canonical_decomposition(&self, alpha: &[i64]) -> Result<CanonicalDecomposition> {
        self.check_dim(alpha)?;
        if box_size(alpha) > BOX_LIMIT {
            return Err(Error::Capacity(format!("splitting box for {alpha:?} exceeds {BOX_LIMIT} cells")));
        }
        Ok(CanonicalDecomposition::from_list(self.decompose(alpha)?))
    }

    /// Canonical decomposition of a weight: the summands `-e_i` of the
    /// negative part, and `beta E` for each summand `beta` of the dimension.
    pub fn canonical_decomposition_delta(&self, delta: &[i64]) -> Result<CanonicalDecomposition> {
        let dim = self.dim_of_delta(delta)?;
        let m = self.negative_part(delta)?;
        let mut list = Vec::new();
        for (i, &mi) in m.iter().enumerate() {
            for _ in 0..mi {
                list.push(neg_unit(self.b.n(), i));
            }
        }
        for (beta, k) in self.canonical_decomposition(&dim)?.summands {
            for _ in 0..k {
                list.push(self.euler.weight(&beta));
            }
        }
        Ok(CanonicalDecomposition::from_list(list))
    }

    /// Schur rank of an indecomposable coweight.
    ///
    /// `End(L)` of an indecomposable `L` is local, so over the generic point
    /// its radical is the trace-zero part: `f - (tr f / dim L) id` is
    /// nilpotent. Valid only under the indecomposability precondition, which
    /// is checked.
    pub fn schur_rank_rep(&self, etacheck: &[i64]) -> Result<IVec> {
        self.check_len(etacheck)?;
        let n = self.b.n();
        let dim = self.dim_of_coweight(etacheck)?;
        let neg = self.negative_copart(etacheck)?;
        if is_zero(&dim) {
            if neg.iter().sum::<i64>() == 1 {
                return Ok(sub(&vec![0; n], &neg));
            }
            return Err(Error::Precondition(format!("coweight {etacheck:?} is not indecomposable")));
        }
        let dec = self.canonical_decomposition(&dim)?;
        if !is_zero(&neg) || dec.total_multiplicity() != 1 {
            return Err(Error::Precondition(format!("coweight {etacheck:?} is not indecomposable")));
        }
        let mut rng = self.rng("schur", &[etacheck]);
        let l = self.copresentation(etacheck, &mut rng).kernel(&self.pd);
        let basis = l.endomorphism_basis(&self.pd);
        let total = field::from_i64(l.total_dim() as i64);
        let mut max_rank = vec![0usize; n];
        for _ in 0..self.trials {
            let coeffs: Vec<u64> = basis.iter().map(|_| field::random(&mut rng)).collect();
            let mut f: Vec<Mat> = l.alpha.iter().map(|&d| Mat::zeros(d, d)).collect();
            for (c, elt) in coeffs.iter().zip(&basis) {
                for (fv, ev) in f.iter_mut().zip(elt) {
                    *fv = fv.plus(&ev.scale(*c));
                }
            }
            let tr = f.iter().fold(0, |acc, m| field::add(acc, m.trace()));
            let lambda = field::mul(tr, field::inv(total));
            for (v, fv) in f.iter().enumerate() {
                let nil = fv.plus(&Mat::identity(l.alpha[v]).scale(field::sub(0, lambda)));
                if !nilpotent(&nil) {
                    return Err(Error::Invariant(format!("endomorphism ring of {etacheck:?} is not local")));
                }
                max_rank[v] = max_rank[v].max(nil.rank());
            }
        }
        Ok((0..n).map(|v| dim[v] - max_rank[v] as i64).collect())
    }

    /// Classifies the general presentation of weight `delta`.
    pub fn classify_delta(&self, delta: &[i64]) -> Result<DeltaClass> {
        if self.canonical_decomposition_delta(delta)?.total_multiplicity() > 1 {
            return Ok(DeltaClass::Decomposable);
        }
        let mut rng = self.rng("classify", &[delta]);
        let mut diag = usize::MAX;
        for _ in 0..CLASSIFY_TRIALS.max(self.trials) {
            let d = self.presentation(delta, &mut rng);
            let n = d.coker(&self.pd);
            diag = diag.min(d.hom_e(&self.pd, &n).1);
            if diag == 0 {
                return Ok(DeltaClass::Real);
            }
        }
        if self.e_inv(delta, delta)? == 0 {
            Ok(DeltaClass::Tame)
        } else {
            Ok(DeltaClass::Wild)
        }
    }

    /// The oracle for `b`, reusing `self` when the matrix matches.
    fn for_matrix(&self, b: &ExchangeMatrix) -> Result<Option<Oracle>> {
        if b == &self.b {
            Ok(None)
        } else {
            Ok(Some(Oracle::new(b, self.seed)?.with_trials(self.trials)))
        }
    }
}

fn nilpotent(m: &Mat) -> bool {
    let mut p = m.clone();
    for _ in 0..m.rows {
        p = p.mul(m);
    }
    p.data.iter().all(|&x| x == 0)
}

impl DimProvider for Oracle {
    fn name(&self) -> String {
        "pathalg".into()
    }

    fn dim_of_delta(&self, b: &ExchangeMatrix, delta: &[i64]) -> Result<IVec> {
        match self.for_matrix(b)? {
            None => Oracle::dim_of_delta(self, delta),
            Some(o) => Oracle::dim_of_delta(&o, delta),
        }
    }

    fn dim_of_coweight(&self, b: &ExchangeMatrix, deltacheck: &[i64]) -> Result<IVec> {
        match self.for_matrix(b)? {
            None => Oracle::dim_of_coweight(self, deltacheck),
            Some(o) => Oracle::dim_of_coweight(&o, deltacheck),
        }
    }
}
