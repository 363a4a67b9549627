//! Exchange matrices, matrix mutation, acyclicity and the Euler matrix.
//!
//! Arrow convention: `b[i][j] = #(i -> j) - #(j -> i)`. Rows `b_k` are what the
//! tropical rules read. Indices are 0-based in memory and 1-based in files.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::{pos, vec_mat, IVec};

/// A skew-symmetrizable integer matrix with a frozen-vertex mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    n: usize,
    frozen: Vec<bool>,
    b: Vec<Vec<i64>>,
    d: Option<Vec<i64>>,
}

/// On-disk quiver format with 1-based frozen indices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuiverFile {
    pub n: usize,
    #[serde(default)]
    pub frozen: Vec<usize>,
    pub b: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<i64>>,
}

impl ExchangeMatrix {
    /// Builds a skew-symmetric matrix with no frozen vertices.
    pub fn new(b: Vec<Vec<i64>>) -> Result<Self> {
        let n = b.len();
        Self::with_parts(b, vec![false; n], None)
    }

    /// Builds a skew-symmetrizable matrix: `BD` must be skew-symmetric.
    pub fn with_symmetrizer(b: Vec<Vec<i64>>, d: Vec<i64>) -> Result<Self> {
        let n = b.len();
        Self::with_parts(b, vec![false; n], Some(d))
    }

    pub fn with_parts(b: Vec<Vec<i64>>, frozen: Vec<bool>, d: Option<Vec<i64>>) -> Result<Self> {
        let n = b.len();
        if b.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix("matrix is not square".into()));
        }
        if frozen.len() != n {
            return Err(Error::Dimension { expected: n, got: frozen.len() });
        }
        let m = ExchangeMatrix { n, frozen, b, d };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        match &self.d {
            None => {
                for i in 0..n {
                    for j in 0..n {
                        if self.b[i][j] != -self.b[j][i] {
                            return Err(Error::InvalidMatrix(format!(
                                "not skew-symmetric at ({}, {})",
                                i + 1,
                                j + 1
                            )));
                        }
                    }
                }
            }
            Some(d) => {
                if d.len() != n {
                    return Err(Error::Dimension { expected: n, got: d.len() });
                }
                if d.iter().any(|&x| x <= 0) {
                    return Err(Error::InvalidMatrix("symmetrizer entries must be positive".into()));
                }
                for i in 0..n {
                    for j in 0..n {
                        let lhs = self.b[i][j] as i128 * d[j] as i128;
                        let rhs = self.b[j][i] as i128 * d[i] as i128;
                        if lhs != -rhs {
                            return Err(Error::InvalidMatrix(format!(
                                "BD is not skew-symmetric at ({}, {})",
                                i + 1,
                                j + 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_file(q: &QuiverFile) -> Result<Self> {
        if q.b.len() != q.n {
            return Err(Error::Dimension { expected: q.n, got: q.b.len() });
        }
        let mut frozen = vec![false; q.n];
        for &f in &q.frozen {
            if f == 0 || f > q.n {
                return Err(Error::Index(format!("frozen index {f} out of range 1..={}", q.n)));
            }
            frozen[f - 1] = true;
        }
        Self::with_parts(q.b.clone(), frozen, q.d.clone())
    }

    pub fn to_file(&self) -> QuiverFile {
        QuiverFile {
            n: self.n,
            frozen: (0..self.n).filter(|&i| self.frozen[i]).map(|i| i + 1).collect(),
            b: self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let q: QuiverFile = crate::error::parse_json(s, "quiver")?;
        Self::from_file(&q)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.b
    }

    /// Row `b_k`.
    pub fn row(&self, k: usize) -> &[i64] {
        &self.b[k]
    }

    /// Column `b_k^T`.
    pub fn column(&self, k: usize) -> IVec {
        self.b.iter().map(|r| r[k]).collect()
    }

    pub fn is_frozen(&self, k: usize) -> bool {
        self.frozen[k]
    }

    pub fn frozen_mask(&self) -> &[bool] {
        &self.frozen
    }

    pub fn symmetrizer(&self) -> Option<&[i64]> {
        self.d.as_deref()
    }

    /// The symmetrizer, or all ones for skew-symmetric matrices.
    pub fn symmetrizer_or_identity(&self) -> IVec {
        self.d.clone().unwrap_or_else(|| vec![1; self.n])
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.b[i][j] == -self.b[j][i]))
    }

    /// Checks that `k` is an in-range mutable index.
    pub fn check_mutable(&self, k: usize) -> Result<()> {
        if k >= self.n {
            return Err(Error::Index(format!("vertex {} out of range 1..={}", k + 1, self.n)));
        }
        if self.frozen[k] {
            return Err(Error::Index(format!("vertex {} is frozen", k + 1)));
        }
        Ok(())
    }

    /// Matrix mutation in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        self.check_mutable(k)?;
        let n = self.n;
        let mut b = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                b[i][j] = if i == k || j == k {
                    self.b[i][j].checked_neg().ok_or(Error::Overflow("matrix mutation"))?
                } else {
                    let (bik, bkj) = (self.b[i][k], self.b[k][j]);
                    let plus = pos(bik).checked_mul(pos(bkj));
                    let minus = pos(-bik).checked_mul(pos(-bkj));
                    plus.zip(minus)
                        .and_then(|(p, m)| self.b[i][j].checked_add(p)?.checked_sub(m))
                        .ok_or(Error::Overflow("matrix mutation"))?
                };
            }
        }
        Ok(ExchangeMatrix { n, frozen: self.frozen.clone(), b, d: self.d.clone() })
    }

    /// Applies mutations in the given order.
    pub fn mutate_seq(&self, ks: &[usize]) -> Result<Self> {
        let mut m = self.clone();
        for &k in ks {
            m = m.mutate(k)?;
        }
        Ok(m)
    }

    pub fn negated(&self) -> Self {
        let b = self.b.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        ExchangeMatrix { n: self.n, frozen: self.frozen.clone(), b, d: self.d.clone() }
    }

    /// `vB` for a row vector `v`.
    pub fn left_mul(&self, v: &[i64]) -> IVec {
        vec_mat(v, &self.b)
    }

    /// Adjacency matrix of the positive part, `A_ij = [b_ij]_+`.
    pub fn arrow_counts(&self) -> Vec<Vec<i64>> {
        self.b.iter().map(|r| r.iter().map(|&x| pos(x)).collect()).collect()
    }

    /// Returns some directed cycle of the positive part if one exists (0-based).
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let n = self.n;
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut color = vec![0u8; n];
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            if color[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            color[root] = 1;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next >= n {
                    color[v] = 2;
                    stack.pop();
                    continue;
                }
                let w = *next;
                *next += 1;
                if self.b[v][w] <= 0 {
                    continue;
                }
                match color[w] {
                    0 => {
                        parent[w] = v;
                        color[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => {
                        let mut cyc = vec![w];
                        let mut u = v;
                        while u != w {
                            cyc.push(u);
                            u = parent[u];
                        }
                        cyc.reverse();
                        cyc.rotate_right(1);
                        return Some(cyc);
                    }
                    _ => {}
                }
            }
        }
        None
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// A topological order of the vertices (sources first), if acyclic.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        if let Some(c) = self.find_cycle() {
            return Err(Error::Acyclicity { cycle: c.iter().map(|v| v + 1).collect() });
        }
        let n = self.n;
        let mut indeg: Vec<usize> = (0..n).map(|j| (0..n).filter(|&i| self.b[i][j] > 0).count()).collect();
        let mut order = Vec::with_capacity(n);
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        ready.reverse();
        while let Some(v) = ready.pop() {
            order.push(v);
            for w in (0..n).rev() {
                if self.b[v][w] > 0 {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        ready.push(w);
                    }
                }
            }
        }
        Ok(order)
    }

    /// The Euler matrix `E = I - A` of the positive part.
    pub fn euler_matrix(&self) -> Result<EulerMatrix> {
        if let Some(c) = self.find_cycle() {
            return Err(Error::Acyclicity { cycle: c.iter().map(|v| v + 1).collect() });
        }
        let n = self.n;
        let mut e = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                e[i][j] = i64::from(i == j) - pos(self.b[i][j]);
            }
        }
        Ok(EulerMatrix { e })
    }
}

/// `E = I - A` for an acyclic quiver; `alpha E beta^T` is the Euler form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerMatrix {
    pub e: Vec<Vec<i64>>,
}

impl EulerMatrix {
    /// `<alpha, beta> = alpha E beta^T`.
    pub fn form(&self, alpha: &[i64], beta: &[i64]) -> i64 {
        crate::vector::dot(&vec_mat(alpha, &self.e), beta)
    }

    /// `alpha E`: the weight of a general representation of dimension `alpha`.
    pub fn weight(&self, alpha: &[i64]) -> IVec {
        vec_mat(alpha, &self.e)
    }

    /// `alpha E^T`: the coweight of a general representation of dimension `alpha`.
    pub fn coweight(&self, alpha: &[i64]) -> IVec {
        let n = self.e.len();
        (0..n).map(|j| (0..n).map(|i| alpha[i] * self.e[j][i]).sum()).collect()
    }
}
