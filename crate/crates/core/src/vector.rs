//! Small integer-vector helpers shared by the tropical and representation code.

use crate::error::{Error, Result};

pub type IVec = Vec<i64>;

#[inline]
pub fn pos(x: i64) -> i64 {
    x.max(0)
}

pub fn pos_vec(v: &[i64]) -> IVec {
    v.iter().map(|&x| pos(x)).collect()
}

pub fn neg_vec(v: &[i64]) -> IVec {
    v.iter().map(|&x| -x).collect()
}

pub fn unit(n: usize, i: usize) -> IVec {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

pub fn neg_unit(n: usize, i: usize) -> IVec {
    let mut e = vec![0; n];
    e[i] = -1;
    e
}

fn narrow(x: i128, what: &'static str) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow(what))
}

/// Dot product, accumulated in 128 bits.
pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    try_dot(a, b).expect("dot product overflow")
}

pub fn try_dot(a: &[i64], b: &[i64]) -> Result<i64> {
    if a.len() != b.len() {
        return Err(Error::Dimension { expected: a.len(), got: b.len() });
    }
    let s: i128 = a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum();
    narrow(s, "dot product")
}

pub fn add(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[i64], c: i64) -> IVec {
    a.iter().map(|x| x * c).collect()
}

/// Row vector times matrix: `(vM)_j = sum_i v_i m_ij`.
pub fn vec_mat(v: &[i64], m: &[Vec<i64>]) -> IVec {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| {
            let s: i128 = v.iter().zip(m).map(|(&x, row)| x as i128 * row[j] as i128).sum();
            narrow(s, "vector-matrix product").expect("vector-matrix product overflow")
        })
        .collect()
}

/// Componentwise `a <= b`.
pub fn leq(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn is_zero(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// Parses whitespace- or comma-separated integers, e.g. `"-1 2 10 -6"`.
pub fn parse_ivec(s: &str) -> Result<IVec> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            let t = t.replace('\u{2212}', "-");
            t.parse::<i64>().map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
        })
        .collect()
}
