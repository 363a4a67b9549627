//! Lattice polytopes given by vertex lists, used as tropical evaluators.
//!
//! Vertex extraction is exact: a point is a vertex iff it is not a convex
//! combination of the other points, decided by a rational phase-one simplex.

use std::collections::HashSet;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::{dot, IVec};

/// Supports at or above this size are pre-filtered by a midpoint test before
/// the per-point LP.
pub const BRUTE_FORCE_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    n: usize,
    vertices: Vec<IVec>,
}

/// Polytope fixture format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolytopeFixture {
    pub n: usize,
    pub vertices: Vec<IVec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top: Option<IVec>,
    /// The coweight whose generic object this polytope belongs to, if known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coweight: Option<IVec>,
    #[serde(default)]
    pub provenance: String,
}

impl PolytopeFixture {
    pub fn load(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        crate::error::parse_json(&s, &path.display().to_string())
    }

    pub fn polytope(&self) -> Result<LatticePolytope> {
        LatticePolytope::from_vertices(self.n, self.vertices.clone())
    }
}

impl LatticePolytope {
    /// Wraps a vertex list as given. Use [`LatticePolytope::check_irredundant`]
    /// to verify it.
    pub fn from_vertices(n: usize, vertices: Vec<IVec>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Precondition("polytope needs at least one vertex".into()));
        }
        for v in &vertices {
            if v.len() != n {
                return Err(Error::Dimension { expected: n, got: v.len() });
            }
        }
        Ok(LatticePolytope { n, vertices })
    }

    /// Vertices of the convex hull of `points`.
    pub fn hull_of(n: usize, points: Vec<IVec>) -> Result<Self> {
        let mut pts: Vec<IVec> = points;
        pts.sort();
        pts.dedup();
        if pts.is_empty() {
            return Err(Error::Precondition("empty point set".into()));
        }
        for p in &pts {
            if p.len() != n {
                return Err(Error::Dimension { expected: n, got: p.len() });
            }
        }
        let candidates = if pts.len() >= BRUTE_FORCE_LIMIT { drop_midpoints(&pts) } else { pts.clone() };
        // Removing a non-vertex does not change the hull, so test against the
        // shrinking candidate set.
        let mut verts = candidates;
        let mut i = 0;
        while i < verts.len() {
            let p = verts[i].clone();
            let others: Vec<&IVec> = verts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q).collect();
            if separating_functional(&p, &others).is_none() {
                verts.remove(i);
            } else {
                i += 1;
            }
        }
        Ok(LatticePolytope { n, vertices: verts })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[IVec] {
        &self.vertices
    }

    pub fn contains_vertex(&self, v: &[i64]) -> bool {
        self.vertices.iter().any(|u| u == v)
    }

    fn check_dim(&self, w: &[i64]) -> Result<()> {
        if w.len() != self.n {
            return Err(Error::Dimension { expected: self.n, got: w.len() });
        }
        Ok(())
    }

    /// `max_v v . w` over the vertices.
    pub fn tropical_eval(&self, w: &[i64]) -> Result<i64> {
        self.check_dim(w)?;
        Ok(self.vertices.iter().map(|v| dot(v, w)).max().expect("nonempty"))
    }

    /// Coordinatewise maximum, required to be a vertex.
    pub fn top_vertex(&self) -> Result<IVec> {
        let top: IVec = (0..self.n).map(|i| self.vertices.iter().map(|v| v[i]).max().unwrap()).collect();
        if !self.contains_vertex(&top) {
            return Err(Error::Precondition(format!("coordinatewise maximum {top:?} is not a vertex")));
        }
        Ok(top)
    }

    /// Dual evaluation `f(-w) + w . t` with top vertex `t`.
    pub fn dual_eval(&self, w: &[i64], top: Option<&[i64]>) -> Result<i64> {
        self.check_dim(w)?;
        let t = match top {
            Some(t) => {
                self.check_dim(t)?;
                t.to_vec()
            }
            None => self.top_vertex()?,
        };
        let neg: IVec = w.iter().map(|x| -x).collect();
        Ok(self.tropical_eval(&neg)? + dot(w, &t))
    }

    /// For each listed vertex, an integer functional maximized uniquely there.
    /// Errors if some listed point lies in the hull of the others.
    pub fn check_irredundant(&self) -> Result<Vec<IVec>> {
        let mut out = Vec::with_capacity(self.vertices.len());
        for (i, p) in self.vertices.iter().enumerate() {
            let others: Vec<&IVec> =
                self.vertices.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q).collect();
            match separating_functional(p, &others) {
                Some(w) => out.push(w),
                None => {
                    return Err(Error::Invariant(format!("listed point {p:?} is not a vertex")));
                }
            }
        }
        Ok(out)
    }
}

/// `f_P(delta) - gamma . delta`.
pub fn compat_from_polytope(gamma: &[i64], p: &LatticePolytope, delta: &[i64]) -> Result<i64> {
    if gamma.len() != p.dim() {
        return Err(Error::Dimension { expected: p.dim(), got: gamma.len() });
    }
    Ok(p.tropical_eval(delta)? - dot(gamma, delta))
}

/// Removes points that are midpoints of two other points; never removes a vertex.
fn drop_midpoints(pts: &[IVec]) -> Vec<IVec> {
    let set: HashSet<&IVec> = pts.iter().collect();
    let mut interior = HashSet::new();
    for a in 0..pts.len() {
        for b in (a + 1)..pts.len() {
            let s: IVec = pts[a].iter().zip(&pts[b]).map(|(x, y)| x + y).collect();
            if s.iter().all(|x| x % 2 == 0) {
                let m: IVec = s.iter().map(|x| x / 2).collect();
                if set.contains(&m) {
                    interior.insert(m);
                }
            }
        }
    }
    pts.iter().filter(|p| !interior.contains(*p)).cloned().collect()
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Decides whether `p` is outside the convex hull of `others`.
///
/// Solves `sum l_q (q - p) = 0, sum l_q = 1, l >= 0` by phase one. When this
/// is infeasible the phase-one multipliers give `u` with `u . p > u . q` for
/// all `q`, returned scaled to integers.
pub fn separating_functional(p: &[i64], others: &[&IVec]) -> Option<IVec> {
    let n = p.len();
    if others.is_empty() {
        return Some(vec![0; n]);
    }
    let m = n + 1;
    let k = others.len();
    // Columns: k structural then m artificial. Rows already have rhs >= 0:
    // the first n right-hand sides are 0, the last is 1.
    let cols = k + m;
    let mut t: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); cols + 1]; m];
    for (j, q) in others.iter().enumerate() {
        for i in 0..n {
            t[i][j] = rat(q[i] - p[i]);
        }
        t[n][j] = BigRational::one();
    }
    for i in 0..m {
        t[i][k + i] = BigRational::one();
    }
    t[n][cols] = BigRational::one();
    let mut basis: Vec<usize> = (k..k + m).collect();
    // Reduced costs for minimizing the sum of artificials.
    let mut rc: Vec<BigRational> = vec![BigRational::zero(); cols + 1];
    for j in 0..=cols {
        if j >= k && j < k + m {
            continue;
        }
        let mut s = BigRational::zero();
        for row in t.iter() {
            s -= &row[j];
        }
        rc[j] = s;
    }
    loop {
        // Bland: first improving column.
        let enter = (0..cols).find(|&j| rc[j].is_negative());
        let Some(e) = enter else { break };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if t[i][e].is_positive() {
                let ratio = &t[i][cols] / &t[i][e];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (r, _) = leave.expect("phase one is bounded below");
        let piv = t[r][e].clone();
        for x in t[r].iter_mut() {
            *x /= &piv;
        }
        let prow = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[e].is_zero() {
                let f = row[e].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        if !rc[e].is_zero() {
            let f = rc[e].clone();
            for (x, y) in rc.iter_mut().zip(&prow) {
                *x -= &f * y;
            }
        }
        basis[r] = e;
    }
    // Objective value is -rc[cols].
    if rc[cols].is_zero() {
        return None;
    }
    // Simplex multipliers y_i = 1 - rc(artificial i). Optimality gives
    // y . (q - p, 1) <= 0 and y_n > 0, so y restricted to the first n rows
    // separates p.
    let u: Vec<BigRational> = (0..n).map(|i| BigRational::one() - &rc[k + i]).collect();
    let mut denom = BigInt::one();
    for v in &u {
        denom = num_integer::Integer::lcm(&denom, v.denom());
    }
    let w: Vec<BigInt> = u.iter().map(|v| (v * BigRational::from_integer(denom.clone())).to_integer()).collect();
    let g = w.iter().fold(BigInt::zero(), |acc, v| num_integer::Integer::gcd(&acc, v));
    let w: IVec = w
        .iter()
        .map(|v| {
            let v = if g.is_zero() { v.clone() } else { v / &g };
            i64::try_from(v).ok()
        })
        .collect::<Option<IVec>>()?;
    debug_assert!(others.iter().all(|q| dot(&w, p) > dot(&w, q)));
    Some(w)
}
