//! Paths, representations, presentations and copresentations of an acyclic quiver.
//!
//! Conventions: a representation `M` has spaces `M_v` and, for an arrow
//! `a: s -> t`, a matrix `M_a` of shape `dim M_t x dim M_s`. Paths are arrow
//! sequences in travel order. `P_i(v)` has basis the paths `i ~> v`, and
//! `I_i(v)` has basis the paths `v ~> i`. A map `P_i -> P_j` or `I_i -> I_j`
//! is a combination of paths `j ~> i`.

use std::collections::HashMap;

use rand::Rng;

use super::field::{self, Mat};
use crate::error::{Error, Result};
use crate::quiver::ExchangeMatrix;

/// Upper bound on the number of enumerated paths.
pub const PATH_LIMIT: usize = 100_000;

/// All paths of an acyclic quiver, indexed by endpoints.
#[derive(Debug, Clone)]
pub struct PathData {
    pub n: usize,
    /// `(source, target)` per arrow; parallel arrows are listed separately.
    pub arrows: Vec<(usize, usize)>,
    /// `paths[i][j]`: the paths `i ~> j`.
    pub paths: Vec<Vec<Vec<Vec<usize>>>>,
    index: Vec<Vec<HashMap<Vec<usize>, usize>>>,
}

impl PathData {
    pub fn new(b: &ExchangeMatrix) -> Result<Self> {
        if let Some(c) = b.find_cycle() {
            return Err(Error::Capability(format!(
                "path-algebra oracle needs an acyclic quiver; found cycle {:?}",
                c.iter().map(|v| v + 1).collect::<Vec<_>>()
            )));
        }
        let n = b.n();
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for _ in 0..b.get(i, j).max(0) {
                    arrows.push((i, j));
                }
            }
        }
        let mut paths = vec![vec![Vec::new(); n]; n];
        let mut total = 0usize;
        for (s, row) in paths.iter_mut().enumerate() {
            let mut stack: Vec<(usize, Vec<usize>)> = vec![(s, Vec::new())];
            while let Some((v, p)) = stack.pop() {
                total += 1;
                if total > PATH_LIMIT {
                    return Err(Error::Capacity(format!("more than {PATH_LIMIT} paths")));
                }
                for (a, &(src, tgt)) in arrows.iter().enumerate() {
                    if src == v {
                        let mut q = p.clone();
                        q.push(a);
                        stack.push((tgt, q));
                    }
                }
                row[v].push(p);
            }
            for list in row.iter_mut() {
                list.sort();
            }
        }
        let index = paths
            .iter()
            .map(|row| {
                row.iter()
                    .map(|list| list.iter().enumerate().map(|(k, p)| (p.clone(), k)).collect())
                    .collect()
            })
            .collect();
        Ok(PathData { n, arrows, paths, index })
    }

    pub fn count(&self, i: usize, j: usize) -> usize {
        self.paths[i][j].len()
    }

    pub fn find(&self, i: usize, j: usize, p: &[usize]) -> Option<usize> {
        self.index[i][j].get(p).copied()
    }
}

/// Vertex of each summand in `P(v)` or `I(v)`.
fn copies(v: &[i64]) -> Vec<usize> {
    v.iter().enumerate().flat_map(|(i, &m)| std::iter::repeat(i).take(m.max(0) as usize)).collect()
}

/// A representation with matrices over `F_p`.
#[derive(Debug, Clone)]
pub struct QuiverRep {
    pub alpha: Vec<usize>,
    pub mats: Vec<Mat>,
}

impl QuiverRep {
    pub fn random<R: Rng>(pd: &PathData, alpha: &[usize], rng: &mut R) -> Self {
        let mats = pd.arrows.iter().map(|&(s, t)| Mat::random(alpha[t], alpha[s], rng)).collect();
        QuiverRep { alpha: alpha.to_vec(), mats }
    }

    pub fn dim(&self) -> Vec<i64> {
        self.alpha.iter().map(|&a| a as i64).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.alpha.iter().sum()
    }

    /// `M(p): M_s -> M_t` for a path `p: s ~> t`.
    pub fn path_map(&self, pd: &PathData, s: usize, t: usize, p: &[usize]) -> Mat {
        let mut m = Mat::identity(self.alpha[s]);
        for &a in p {
            m = self.mats[a].mul(&m);
        }
        debug_assert_eq!(m.rows, self.alpha[t]);
        debug_assert!(p.last().map_or(s == t, |&a| pd.arrows[a].1 == t));
        m
    }

    /// Offsets of each vertex block in the flattened space of maps `self -> other`.
    fn hom_layout(&self, other: &QuiverRep) -> (Vec<usize>, usize) {
        let mut off = Vec::with_capacity(self.alpha.len());
        let mut total = 0;
        for v in 0..self.alpha.len() {
            off.push(total);
            total += self.alpha[v] * other.alpha[v];
        }
        (off, total)
    }

    /// Linear system whose kernel is `Hom(self, other)`; unknowns are the
    /// row-major entries of `f_v: self_v -> other_v`.
    fn intertwiner_system(&self, pd: &PathData, other: &QuiverRep) -> Mat {
        let (off, unknowns) = self.hom_layout(other);
        let rows: usize = pd.arrows.iter().map(|&(s, t)| other.alpha[t] * self.alpha[s]).sum();
        let mut sys = Mat::zeros(rows, unknowns);
        let mut r0 = 0;
        for (a, &(s, t)) in pd.arrows.iter().enumerate() {
            let (ms, mt) = (self.alpha[s], self.alpha[t]);
            let (ns, nt) = (other.alpha[s], other.alpha[t]);
            let ma = &self.mats[a];
            let na = &other.mats[a];
            // (N_a f_s - f_t M_a)[r][c] = 0 for r < nt, c < ms.
            for r in 0..nt {
                for c in 0..ms {
                    let row = r0 + r * ms + c;
                    for k in 0..ns {
                        let v = na.get(r, k);
                        if v != 0 {
                            sys.add_to(row, off[s] + k * ms + c, v);
                        }
                    }
                    for k in 0..mt {
                        let v = ma.get(k, c);
                        if v != 0 {
                            sys.add_to(row, off[t] + r * mt + k, field::sub(0, v));
                        }
                    }
                }
            }
            r0 += nt * ms;
        }
        sys
    }

    pub fn hom_dim(&self, pd: &PathData, other: &QuiverRep) -> usize {
        let sys = self.intertwiner_system(pd, other);
        sys.cols - sys.rank()
    }

    /// A basis of `End(self)`, each element given by its vertex matrices.
    pub fn endomorphism_basis(&self, pd: &PathData) -> Vec<Vec<Mat>> {
        let (off, _) = self.hom_layout(self);
        let ker = self.intertwiner_system(pd, self).nullspace();
        (0..ker.cols)
            .map(|c| {
                (0..self.alpha.len())
                    .map(|v| {
                        let d = self.alpha[v];
                        let mut m = Mat::zeros(d, d);
                        for r in 0..d {
                            for k in 0..d {
                                m.set(r, k, ker.get(off[v] + r * d + k, c));
                            }
                        }
                        m
                    })
                    .collect()
            })
            .collect()
    }
}

/// A map `P([-delta]_+) -> P([delta]_+)` with random path coefficients.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub delta: Vec<i64>,
    /// Vertex of each summand of `P([-delta]_+)`.
    pub src: Vec<usize>,
    /// Vertex of each summand of `P([delta]_+)`.
    pub dst: Vec<usize>,
    /// `coef[a][b][p]`: coefficient of path `p: dst[b] ~> src[a]`.
    pub coef: Vec<Vec<Vec<u64>>>,
}

impl Presentation {
    pub fn random<R: Rng>(pd: &PathData, delta: &[i64], rng: &mut R) -> Self {
        let src = copies(&delta.iter().map(|&d| -d).collect::<Vec<_>>());
        let dst = copies(delta);
        let coef = src
            .iter()
            .map(|&i| dst.iter().map(|&j| (0..pd.count(j, i)).map(|_| field::random(rng)).collect()).collect())
            .collect();
        Presentation { delta: delta.to_vec(), src, dst, coef }
    }

    /// `d_v: P_-(v) -> P_+(v)` in path bases.
    pub fn map_at(&self, pd: &PathData, v: usize) -> Mat {
        let (col_off, cols) = offsets(&self.src, |i| pd.count(i, v));
        let (row_off, rows) = offsets(&self.dst, |j| pd.count(j, v));
        let mut m = Mat::zeros(rows, cols);
        for (a, &i) in self.src.iter().enumerate() {
            for (b, &j) in self.dst.iter().enumerate() {
                for (pi, p) in pd.paths[j][i].iter().enumerate() {
                    let c = self.coef[a][b][pi];
                    for (qi, q) in pd.paths[i][v].iter().enumerate() {
                        let r: Vec<usize> = p.iter().chain(q).copied().collect();
                        let ri = pd.find(j, v, &r).expect("composite path exists");
                        m.add_to(row_off[b] + ri, col_off[a] + qi, c);
                    }
                }
            }
        }
        m
    }

    /// The cokernel representation.
    pub fn coker(&self, pd: &PathData) -> QuiverRep {
        let quot: Vec<Mat> = (0..pd.n).map(|v| self.map_at(pd, v).left_nullspace()).collect();
        let alpha: Vec<usize> = quot.iter().map(|q| q.rows).collect();
        let mats = pd
            .arrows
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let lift = if alpha[s] == 0 { Mat::zeros(quot[s].cols, 0) } else { quot[s].right_inverse() };
                let act = self.positive_arrow(pd, a, s, t);
                quot[t].mul(&act).mul(&lift)
            })
            .collect();
        QuiverRep { alpha, mats }
    }

    /// Action of arrow `a: s -> t` on `P([delta]_+)`.
    fn positive_arrow(&self, pd: &PathData, a: usize, s: usize, t: usize) -> Mat {
        let (src_off, cols) = offsets(&self.dst, |j| pd.count(j, s));
        let (dst_off, rows) = offsets(&self.dst, |j| pd.count(j, t));
        let mut m = Mat::zeros(rows, cols);
        for (b, &j) in self.dst.iter().enumerate() {
            for (qi, q) in pd.paths[j][s].iter().enumerate() {
                let mut r = q.clone();
                r.push(a);
                let ri = pd.find(j, t, &r).expect("extended path exists");
                m.set(dst_off[b] + ri, src_off[b] + qi, 1);
            }
        }
        m
    }

    /// `Hom(P_+, N) -> Hom(P_-, N)` induced by the presentation.
    pub fn hom_map(&self, pd: &PathData, n: &QuiverRep) -> Mat {
        let (col_off, cols) = offsets(&self.dst, |j| n.alpha[j]);
        let (row_off, rows) = offsets(&self.src, |i| n.alpha[i]);
        let mut m = Mat::zeros(rows, cols);
        for (a, &i) in self.src.iter().enumerate() {
            for (b, &j) in self.dst.iter().enumerate() {
                for (pi, p) in pd.paths[j][i].iter().enumerate() {
                    let c = self.coef[a][b][pi];
                    let np = n.path_map(pd, j, i, p);
                    for r in 0..np.rows {
                        for k in 0..np.cols {
                            let x = np.get(r, k);
                            if x != 0 {
                                m.add_to(row_off[a] + r, col_off[b] + k, field::mul(c, x));
                            }
                        }
                    }
                }
            }
        }
        m
    }

    /// `(hom, e)`: kernel and cokernel dimensions of [`Self::hom_map`].
    pub fn hom_e(&self, pd: &PathData, n: &QuiverRep) -> (usize, usize) {
        let m = self.hom_map(pd, n);
        let r = m.rank();
        (m.cols - r, m.rows - r)
    }
}

/// A map `I([etacheck]_+) -> I([-etacheck]_+)` with random path coefficients.
#[derive(Debug, Clone)]
pub struct Copresentation {
    pub coweight: Vec<i64>,
    /// Vertex of each summand of `I([etacheck]_+)`.
    pub src: Vec<usize>,
    /// Vertex of each summand of `I([-etacheck]_+)`.
    pub dst: Vec<usize>,
    /// `coef[a][b][p]`: coefficient of path `p: dst[b] ~> src[a]`.
    pub coef: Vec<Vec<Vec<u64>>>,
}

impl Copresentation {
    pub fn random<R: Rng>(pd: &PathData, coweight: &[i64], rng: &mut R) -> Self {
        let src = copies(coweight);
        let dst = copies(&coweight.iter().map(|&d| -d).collect::<Vec<_>>());
        let coef = src
            .iter()
            .map(|&i| dst.iter().map(|&j| (0..pd.count(j, i)).map(|_| field::random(rng)).collect()).collect())
            .collect();
        Copresentation { coweight: coweight.to_vec(), src, dst, coef }
    }

    /// `d_v: I_+(v) -> I_-(v)` in path bases.
    pub fn map_at(&self, pd: &PathData, v: usize) -> Mat {
        let (col_off, cols) = offsets(&self.src, |i| pd.count(v, i));
        let (row_off, rows) = offsets(&self.dst, |j| pd.count(v, j));
        let mut m = Mat::zeros(rows, cols);
        for (a, &i) in self.src.iter().enumerate() {
            for (b, &j) in self.dst.iter().enumerate() {
                for (pi, p) in pd.paths[j][i].iter().enumerate() {
                    let c = self.coef[a][b][pi];
                    for (qi, q) in pd.paths[v][i].iter().enumerate() {
                        // q = r . p sends the basis element q to r.
                        if q.len() < p.len() || q[q.len() - p.len()..] != p[..] {
                            continue;
                        }
                        let r = &q[..q.len() - p.len()];
                        if let Some(ri) = pd.find(v, j, r) {
                            m.add_to(row_off[b] + ri, col_off[a] + qi, c);
                        }
                    }
                }
            }
        }
        m
    }

    /// Action of arrow `a: s -> t` on `I([etacheck]_+)`.
    fn positive_arrow(&self, pd: &PathData, a: usize, s: usize, t: usize) -> Mat {
        let (src_off, cols) = offsets(&self.src, |i| pd.count(s, i));
        let (dst_off, rows) = offsets(&self.src, |i| pd.count(t, i));
        let mut m = Mat::zeros(rows, cols);
        for (b, &i) in self.src.iter().enumerate() {
            for (qi, q) in pd.paths[s][i].iter().enumerate() {
                if q.first() == Some(&a) {
                    let ri = pd.find(t, i, &q[1..]).expect("tail path exists");
                    m.set(dst_off[b] + ri, src_off[b] + qi, 1);
                }
            }
        }
        m
    }

    /// The kernel representation.
    pub fn kernel(&self, pd: &PathData) -> QuiverRep {
        let kers: Vec<Mat> = (0..pd.n).map(|v| self.map_at(pd, v).nullspace()).collect();
        let alpha: Vec<usize> = kers.iter().map(|k| k.cols).collect();
        let mats = pd
            .arrows
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let act = self.positive_arrow(pd, a, s, t);
                let proj = if alpha[t] == 0 { Mat::zeros(0, kers[t].rows) } else { kers[t].left_inverse() };
                proj.mul(&act).mul(&kers[s])
            })
            .collect();
        QuiverRep { alpha, mats }
    }
}

fn offsets(vertices: &[usize], size: impl Fn(usize) -> usize) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(vertices.len());
    let mut total = 0;
    for &v in vertices {
        off.push(total);
        total += size(v);
    }
    (off, total)
}
