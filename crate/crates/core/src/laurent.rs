//! Exact multivariate Laurent polynomials over the integers.
//!
//! Terms live in a hash map keyed by exponent vectors. A canonical (sorted)
//! ordering is produced only for printing, hashing and serialization.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::LatticePolytope;

pub type Exponent = Vec<i32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Laurent {
    nvars: usize,
    terms: HashMap<Exponent, BigInt>,
}

/// Serialized form; coefficients are decimal strings.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct LaurentJson {
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub e: Vec<i32>,
    pub c: String,
}

fn add_term(map: &mut HashMap<Exponent, BigInt>, e: Exponent, c: BigInt) {
    if c.is_zero() {
        return;
    }
    match map.entry(e) {
        std::collections::hash_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
        std::collections::hash_map::Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

fn exp_overflow() -> Error {
    Error::Overflow("Laurent exponent")
}

fn add_exp(a: &[i32], b: &[i32]) -> Result<Exponent> {
    a.iter().zip(b).map(|(x, y)| x.checked_add(*y).ok_or_else(exp_overflow)).collect()
}

impl Laurent {
    pub fn zero(nvars: usize) -> Self {
        Laurent { nvars, terms: HashMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, BigInt::one())
    }

    pub fn monomial(nvars: usize, e: Exponent, c: BigInt) -> Self {
        assert_eq!(e.len(), nvars, "exponent length must equal nvars");
        let mut terms = HashMap::new();
        add_term(&mut terms, e, c);
        Laurent { nvars, terms }
    }

    /// Builds from `(exponent, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Exponent, BigInt)>>(nvars: usize, it: I) -> Result<Self> {
        let mut terms = HashMap::new();
        for (e, c) in it {
            if e.len() != nvars {
                return Err(Error::Dimension { expected: nvars, got: e.len() });
            }
            add_term(&mut terms, e, c);
        }
        Ok(Laurent { nvars, terms })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[i32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    /// Terms sorted by exponent, lexicographically descending.
    pub fn sorted_terms(&self) -> Vec<(&Exponent, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.cmp(a.0));
        v
    }

    /// Whether this is `c * x^e` for a unit `c = ±1`.
    pub fn as_unit_monomial(&self) -> Option<(Exponent, BigInt)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        (c.abs().is_one()).then(|| (e.clone(), c.clone()))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension { expected: self.nvars, got: other.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            add_term(&mut terms, e.clone(), c.clone());
        }
        Ok(Laurent { nvars: self.nvars, terms })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut terms = HashMap::with_capacity(self.terms.len() * other.terms.len().min(64));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                add_term(&mut terms, add_exp(e1, e2)?, c1 * c2);
            }
        }
        Ok(Laurent { nvars: self.nvars, terms })
    }

    pub fn neg(&self) -> Self {
        Laurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Laurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Multiplies by the monomial `x^v`.
    pub fn shift(&self, v: &[i32]) -> Result<Self> {
        if v.len() != self.nvars {
            return Err(Error::Dimension { expected: self.nvars, got: v.len() });
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| Ok((add_exp(e, v)?, c.clone())))
            .collect::<Result<HashMap<_, _>>>()?;
        Ok(Laurent { nvars: self.nvars, terms })
    }

    /// Componentwise minimum exponent over the support.
    pub fn min_exponents(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect()))
    }

    pub fn max_exponents(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.max(b)).collect()))
    }

    /// Exact quotient in the Laurent ring.
    ///
    /// Lex leading-term division. If `self = q * den` then every exponent of `q`
    /// lies in the box `[min(self) - min(den), max(self) - max(den)]`, so a
    /// quotient term outside it proves non-divisibility and bounds the loop.
    pub fn div_exact(&self, den: &Self) -> Result<Self> {
        self.check_same(den)?;
        if den.is_zero() {
            return Err(Error::Divisibility("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        // Fast path: monomial divisor.
        if den.len() == 1 {
            let (de, dc) = den.terms.iter().next().unwrap();
            let mut terms = HashMap::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                let (q, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return Err(Error::Divisibility(format!("coefficient {c} not divisible by {dc}")));
                }
                let ne = e.iter().zip(de).map(|(a, b)| a - b).collect();
                terms.insert(ne, q);
            }
            return Ok(Laurent { nvars: self.nvars, terms });
        }
        let (lo_n, hi_n) = (self.min_exponents().unwrap(), self.max_exponents().unwrap());
        let (lo_d, hi_d) = (den.min_exponents().unwrap(), den.max_exponents().unwrap());
        let lo: Vec<i32> = lo_n.iter().zip(&lo_d).map(|(a, b)| a - b).collect();
        let hi: Vec<i32> = hi_n.iter().zip(&hi_d).map(|(a, b)| a - b).collect();
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(Error::Divisibility("support box is empty".into()));
        }
        let (lead_e, lead_c) = den.terms.iter().max_by(|a, b| a.0.cmp(b.0)).unwrap();
        let den_terms: Vec<(&Exponent, &BigInt)> = den.terms.iter().collect();
        let mut rem: BTreeMap<Exponent, BigInt> = self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        let mut quot = HashMap::new();
        while let Some((re, rc)) = rem.pop_last() {
            let qe: Exponent = re.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            if qe.iter().zip(lo.iter().zip(&hi)).any(|(q, (l, h))| q < l || q > h) {
                return Err(Error::Divisibility("quotient term leaves the support box".into()));
            }
            let (qc, r) = rc.div_rem(lead_c);
            if !r.is_zero() {
                return Err(Error::Divisibility(format!("coefficient {rc} not divisible by {lead_c}")));
            }
            for &(de, dc) in &den_terms {
                if de == lead_e {
                    continue;
                }
                let e: Exponent = qe.iter().zip(de).map(|(a, b)| a + b).collect();
                let delta = -(&qc * dc);
                match rem.entry(e) {
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(delta);
                    }
                }
            }
            quot.insert(qe, qc);
        }
        Ok(Laurent { nvars: self.nvars, terms: quot })
    }

    /// Substitutes each variable by a Laurent polynomial in `target_nvars`
    /// variables. A variable that occurs with a negative exponent must map to a
    /// unit monomial, otherwise the result would leave the Laurent ring.
    pub fn substitute(&self, images: &[Laurent], target_nvars: usize) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::Dimension { expected: self.nvars, got: images.len() });
        }
        for im in images {
            if im.nvars != target_nvars {
                return Err(Error::Dimension { expected: target_nvars, got: im.nvars });
            }
        }
        let lo = self.min_exponents().unwrap_or_else(|| vec![0; self.nvars]);
        let mut inverses: Vec<Option<Laurent>> = vec![None; self.nvars];
        for i in 0..self.nvars {
            if lo[i] < 0 {
                let (e, c) = images[i].as_unit_monomial().ok_or_else(|| {
                    Error::Precondition(format!(
                        "variable {} has negative exponent but its image is not a unit monomial",
                        i + 1
                    ))
                })?;
                let ne: Exponent = e.iter().map(|x| -x).collect();
                inverses[i] = Some(Laurent::monomial(target_nvars, ne, c));
            }
        }
        let mut powers: Vec<HashMap<i32, Laurent>> = vec![HashMap::new(); self.nvars];
        let mut out = Laurent::zero(target_nvars);
        for (e, c) in &self.terms {
            let mut t = Laurent::constant(target_nvars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !powers[i].contains_key(&k) {
                    let p = if k > 0 {
                        images[i].pow(k as u32)?
                    } else {
                        inverses[i].as_ref().unwrap().pow((-k) as u32)?
                    };
                    powers[i].insert(k, p);
                }
                t = t.checked_mul(&powers[i][&k])?;
            }
            out = out.checked_add(&t)?;
        }
        Ok(out)
    }

    /// Sets the variables outside `keep` to 1 and re-indexes onto `keep`.
    pub fn restrict_to(&self, keep: &[usize]) -> Self {
        let mut terms = HashMap::new();
        for (e, c) in &self.terms {
            add_term(&mut terms, keep.iter().map(|&i| e[i]).collect(), c.clone());
        }
        Laurent { nvars: keep.len(), terms }
    }

    /// Sum of the coefficients, i.e. the value at the all-ones point.
    pub fn eval_at_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Negated minimum exponent per variable.
    pub fn denominator_vector(&self) -> Result<Vec<i64>> {
        let lo = self.min_exponents().ok_or(Error::ZeroPolynomial("denominator vector"))?;
        Ok(lo.iter().map(|&x| -(x as i64)).collect())
    }

    /// Exponents of the support as `i64` points.
    pub fn support(&self) -> Vec<Vec<i64>> {
        let mut pts: Vec<Vec<i64>> = self.terms.keys().map(|e| e.iter().map(|&x| x as i64).collect()).collect();
        pts.sort();
        pts
    }

    /// Max of `e . w` over the full support.
    pub fn support_max(&self, w: &[i64]) -> Result<i64> {
        self.terms
            .keys()
            .map(|e| e.iter().zip(w).map(|(&a, &b)| a as i64 * b).sum::<i64>())
            .max()
            .ok_or(Error::ZeroPolynomial("tropical evaluation"))
    }

    pub fn newton_polytope(&self) -> Result<LatticePolytope> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("Newton polytope"));
        }
        LatticePolytope::hull_of(self.nvars, self.support())
    }

    /// Whether every exponent is non-negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// A stable key for hashing and deduplication.
    pub fn canonical_key(&self) -> String {
        let mut s = String::new();
        for (e, c) in self.sorted_terms() {
            s.push_str(&c.to_string());
            s.push(':');
            for x in e {
                s.push_str(&x.to_string());
                s.push(',');
            }
            s.push(';');
        }
        s
    }

    pub fn to_json(&self) -> LaurentJson {
        LaurentJson {
            nvars: self.nvars,
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(e, c)| TermJson { e: e.clone(), c: c.to_string() })
                .collect(),
        }
    }

    pub fn from_json(j: &LaurentJson) -> Result<Self> {
        let terms = j
            .terms
            .iter()
            .map(|t| {
                let c: BigInt = t.c.parse().map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.c)))?;
                Ok((t.e.clone(), c))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(j.nvars, terms)
    }

    /// Renders with the given variable names.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{}", names[i], k) })
                .collect();
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    out.push_str(&a.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }

    /// Parses an expression such as `(x1^2+2*x1*x3+x3^2+x2)/(x1*x2*x3)`.
    /// Division must be exact.
    pub fn parse(s: &str, names: &[String]) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), i: 0, names, nvars: names.len() };
        let v = p.expr()?;
        p.skip_ws();
        if p.i != p.s.len() {
            return Err(Error::Parse(format!("unexpected input at byte {}", p.i)));
        }
        Ok(v)
    }
}

/// Default variable names `x1..xn`.
pub fn x_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Names `x1..xn, y1..yn` for the principal-coefficient ring.
pub fn xy_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("y{i}"))).collect()
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&x_names(self.nvars)))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl std::ops::$tr<&Laurent> for &Laurent {
            type Output = Laurent;
            fn $m(self, rhs: &Laurent) -> Laurent {
                self.$checked(rhs).expect("Laurent operands must share nvars")
            }
        }
        impl std::ops::$tr for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: Laurent) -> Laurent {
                (&self).$checked(&rhs).expect("Laurent operands must share nvars")
            }
        }
    };
}
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    names: &'a [String],
    nvars: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse(format!("{msg} at byte {}", self.i)))
    }

    fn expr(&mut self) -> Result<Laurent> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.i += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.i += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.i += 1;
                    acc = acc.checked_add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.i += 1;
                    acc = acc.checked_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Laurent> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    acc = acc.checked_mul(&self.power()?)?;
                }
                Some(b'/') => {
                    self.i += 1;
                    acc = acc.div_exact(&self.power()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Laurent> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            let neg = if self.peek() == Some(b'-') {
                self.i += 1;
                true
            } else {
                false
            };
            let k = self.number()?;
            let k: u32 = k.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
            if neg {
                let (e, c) = base
                    .as_unit_monomial()
                    .ok_or_else(|| Error::Parse("negative power of a non-monomial".into()))?;
                let inv = Laurent::monomial(self.nvars, e.iter().map(|x| -x).collect(), c);
                return inv.pow(k);
            }
            return base.pow(k);
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return self.err("expected a number");
        }
        let txt = std::str::from_utf8(&self.s[start..self.i]).unwrap();
        Ok(txt.parse().unwrap())
    }

    fn atom(&mut self) -> Result<Laurent> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.i += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(Laurent::constant(self.nvars, self.number()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.i;
                while self.i < self.s.len() && self.s[self.i].is_ascii_alphanumeric() {
                    self.i += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.i]).unwrap();
                match self.names.iter().position(|n| n == name) {
                    Some(idx) => Ok(Laurent::var(self.nvars, idx)),
                    None => Err(Error::Parse(format!("unknown variable {name:?} at byte {start}"))),
                }
            }
            _ => self.err("unexpected token"),
        }
    }
}
