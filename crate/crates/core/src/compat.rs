//! Fock-Goncharov pairing, compatibility degrees and canonical-decomposition
//! multiplicities.
//!
//! Every value needs the tropical F-polynomial `f_{gamma B}` of the coweight
//! `gamma B`. It comes from an explicitly chosen [`FProvider`], and each
//! result is stamped with the provider that produced it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pathalg::{DeltaClass, Oracle};
use crate::polytope::PolytopeFixture;
use crate::quiver::ExchangeMatrix;
use crate::seed::ClusterSeed;
use crate::tropical::{walk_witness, DimProvider, Witness};
use crate::vector::{add, dot, pos, scale, IVec};

/// A value together with the provider that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stamped {
    pub value: i64,
    pub provider: String,
}

/// Tropical F-polynomials of cluster monomials in one cluster.
#[derive(Debug, Clone)]
pub struct ClusterMonomialProvider {
    b: ExchangeMatrix,
    coweight: IVec,
    /// Subrepresentation dimensions of each factor with its exponent in the monomial.
    parts: Vec<(Vec<IVec>, i64)>,
    label: String,
}

impl ClusterMonomialProvider {
    /// The monomial `prod X(w_j)^{c_j}`; all witnesses must share one word,
    /// so the variables lie in a common cluster.
    pub fn new(base: &ExchangeMatrix, factors: &[(Witness, i64)]) -> Result<Self> {
        let n = base.n();
        let Some((first, _)) = factors.first() else {
            return Err(Error::Precondition("cluster monomial needs at least one factor".into()));
        };
        let mut coweight = vec![0i64; n];
        let mut parts = Vec::new();
        let seed = ClusterSeed::at_witness(base, first)?;
        for (w, c) in factors {
            if w.word != first.word {
                return Err(Error::Precondition("cluster-monomial factors must share one mutation word".into()));
            }
            if *c < 0 {
                return Err(Error::Precondition("cluster-monomial exponents must be non-negative".into()));
            }
            let state = walk_witness(base, w, None)?;
            coweight = add(&coweight, &scale(&state.deltacheck, *c));
            // The seed engine's F runs over quotient dimensions; reflect to subrepresentations.
            let support = seed.f_polynomial(w.start)?.support();
            let top: IVec = (0..n).map(|j| support.iter().map(|e| e[j]).max().unwrap_or(0)).collect();
            let subs = support.iter().map(|e| top.iter().zip(e).map(|(t, x)| t - x).collect()).collect();
            parts.push((subs, *c));
        }
        let label = factors.iter().map(|(w, c)| format!("{w}^{c}")).collect::<Vec<_>>().join(" ");
        Ok(ClusterMonomialProvider { b: base.clone(), coweight, parts, label })
    }

    pub fn coweight(&self) -> &[i64] {
        &self.coweight
    }
}

/// Source of tropical F-polynomial values `f_{coweight}(delta)`.
pub enum FProvider<'a> {
    /// Generic hom from the acyclic path-algebra oracle.
    Oracle(&'a Oracle),
    /// Tropical evaluation of a stored Newton polytope.
    Fixture(PolytopeFixture),
    /// Supports of F-polynomials computed by the seed engine.
    ClusterMonomial(ClusterMonomialProvider),
}

impl FProvider<'_> {
    pub fn name(&self) -> String {
        match self {
            FProvider::Oracle(o) => format!("oracle(seed={})", o.seed()),
            FProvider::Fixture(f) => {
                let short: String = f.provenance.chars().take(60).collect();
                format!("fixture({short})")
            }
            FProvider::ClusterMonomial(c) => format!("cluster-monomial({})", c.label),
        }
    }

    /// `f_{coweight}(delta)`; refuses inputs outside the provider's domain.
    pub fn eval(&self, b: &ExchangeMatrix, coweight: &[i64], delta: &[i64]) -> Result<i64> {
        let n = b.n();
        for v in [coweight, delta] {
            if v.len() != n {
                return Err(Error::Dimension { expected: n, got: v.len() });
            }
        }
        match self {
            FProvider::Oracle(o) => {
                if o.matrix() != b {
                    return Err(Error::ProviderDomain("oracle was built for a different exchange matrix".into()));
                }
                o.hom_pres(delta, coweight)
            }
            FProvider::Fixture(f) => {
                if f.n != n {
                    return Err(Error::ProviderDomain(format!("fixture has rank {}, input has rank {n}", f.n)));
                }
                match &f.coweight {
                    Some(c) if c == coweight => f.polytope()?.tropical_eval(delta),
                    Some(c) => Err(Error::ProviderDomain(format!(
                        "fixture describes coweight {c:?}, asked for {coweight:?}"
                    ))),
                    None => Err(Error::ProviderDomain(
                        "fixture does not declare the coweight it describes".into(),
                    )),
                }
            }
            FProvider::ClusterMonomial(c) => {
                if &c.b != b {
                    return Err(Error::ProviderDomain("cluster monomial was built for a different exchange matrix".into()));
                }
                if c.coweight != coweight {
                    return Err(Error::ProviderDomain(format!(
                        "cluster monomial has coweight {:?}, asked for {coweight:?}",
                        c.coweight
                    )));
                }
                let mut total = 0i64;
                for (support, m) in &c.parts {
                    let best = support.iter().map(|e| dot(e, delta)).max().ok_or(Error::ZeroPolynomial("F-polynomial"))?;
                    total += m * best;
                }
                Ok(total)
            }
        }
    }
}

/// `(gamma, delta) = f_{gamma B}(delta) - gamma . delta`.
pub fn fg_pairing(b: &ExchangeMatrix, gamma: &[i64], delta: &[i64], provider: &FProvider) -> Result<Stamped> {
    if gamma.len() != b.n() {
        return Err(Error::Dimension { expected: b.n(), got: gamma.len() });
    }
    let value = provider.eval(b, &b.left_mul(gamma), delta)? - dot(gamma, delta);
    Ok(Stamped { value, provider: provider.name() })
}

/// `(eta || delta)`: the pairing with the Schur rank of the witness `eta`.
pub fn compat_degree(
    b: &ExchangeMatrix,
    eta: &Witness,
    delta: &[i64],
    provider: &FProvider,
    dims: Option<&dyn DimProvider>,
) -> Result<Stamped> {
    let gamma = walk_witness(b, eta, dims)?.gamma.expect("gamma is tracked from -e_i");
    fg_pairing(b, &gamma, delta, provider)
}

/// Multiplicity of the real summand `eta` in the canonical decomposition of `delta`.
pub fn multiplicity_real(
    b: &ExchangeMatrix,
    eta: &Witness,
    delta: &[i64],
    provider: &FProvider,
    dims: Option<&dyn DimProvider>,
) -> Result<Stamped> {
    let s = compat_degree(b, eta, delta, provider, dims)?;
    Ok(Stamped { value: pos(-s.value), provider: s.provider })
}

/// Multiplicity of the real Schur root `beta` in the canonical decomposition of `alpha`.
///
/// Computed as `[alpha E beta^T - hom(alpha E, beta B)]_+`, i.e. `[-(eta || delta)]_+`
/// with `eta = beta E`, `delta = alpha E` and Schur rank `beta`.
pub fn kac_multiplicity(oracle: &Oracle, alpha: &[i64], beta: &[i64]) -> Result<i64> {
    if alpha.iter().any(|&x| x < 0) {
        return Err(Error::Precondition(format!("alpha {alpha:?} is not a dimension vector")));
    }
    let e = oracle.euler();
    let eta = e.weight(beta);
    if beta.iter().any(|&x| x < 0)
        || oracle.classify_delta(&eta)? != DeltaClass::Real
        || oracle.generic_hom(beta, beta)? != 1
    {
        return Err(Error::Precondition(format!("{beta:?} is not a real Schur root")));
    }
    let delta = e.weight(alpha);
    let coweight = oracle.matrix().left_mul(beta);
    Ok(pos(dot(&delta, beta) - oracle.hom_pres(&delta, &coweight)?))
}

/// `(1/d_i) (f_{gamma B}(delta D) - gamma . delta D)` for the witness `(w, i)`.
///
/// The result must be an integer; a fractional value means the provider
/// or fixture does not match the exchange matrix.
pub fn compat_degree_symmetrizable(
    b: &ExchangeMatrix,
    eta: &Witness,
    delta: &[i64],
    provider: &FProvider,
    d: &[i64],
) -> Result<Stamped> {
    let n = b.n();
    if d.len() != n || delta.len() != n {
        return Err(Error::Dimension { expected: n, got: d.len().min(delta.len()) });
    }
    if d.iter().any(|&x| x <= 0) {
        return Err(Error::Precondition("symmetrizer entries must be positive".into()));
    }
    let gamma = walk_witness(b, eta, None)?.gamma.expect("gamma is tracked from -e_i");
    let dd: IVec = delta.iter().zip(d).map(|(x, y)| x * y).collect();
    let raw = provider.eval(b, &b.left_mul(&gamma), &dd)? - dot(&gamma, &dd);
    let di = d[eta.start];
    if raw % di != 0 {
        return Err(Error::Integrality(format!("({raw})/{di} is not an integer")));
    }
    Ok(Stamped { value: raw / di, provider: provider.name() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::MutationWord;

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]]).unwrap()
    }

    #[test]
    fn trivial_pairings() {
        let b = a2();
        let o = Oracle::new(&b, 1).unwrap();
        let p = FProvider::Oracle(&o);
        assert_eq!(fg_pairing(&b, &[-1, 0], &[-1, 0], &p).unwrap().value, -1);
        assert_eq!(fg_pairing(&b, &[0, 0], &[3, -2], &p).unwrap().value, 0);
        assert!(p.name().starts_with("oracle"));
    }

    #[test]
    fn a2_pentagon_degrees() {
        let b = a2();
        let o = Oracle::new(&b, 2).unwrap();
        let p = FProvider::Oracle(&o);
        // Variables of seeds along the pentagon, as witnesses.
        let w1 = Witness::new(MutationWord::from_vertices(&[0]), 0);
        let d1 = walk_witness(&b, &w1, None).unwrap().delta;
        let x2 = Witness::new(MutationWord::default(), 1);
        let d2 = walk_witness(&b, &x2, None).unwrap().delta;
        let x1 = Witness::new(MutationWord::default(), 0);
        let dx1 = walk_witness(&b, &x1, None).unwrap().delta;
        // x_1' and x_2 lie in a common cluster; x_1' and x_1 are exchanged.
        assert_eq!(compat_degree(&b, &w1, &d2, &p, None).unwrap().value, 0);
        assert_eq!(compat_degree(&b, &w1, &dx1, &p, None).unwrap().value, 1);
        assert_eq!(compat_degree(&b, &x1, &d1, &p, None).unwrap().value, 1);
        let twice: IVec = d1.iter().map(|x| 2 * x).collect();
        assert_eq!(multiplicity_real(&b, &w1, &twice, &p, None).unwrap().value, 2);
    }

    #[test]
    fn kac_examples() {
        let o = Oracle::new(&a2(), 4).unwrap();
        assert_eq!(kac_multiplicity(&o, &[1, 1], &[1, 1]).unwrap(), 1);
        assert_eq!(kac_multiplicity(&o, &[2, 0], &[1, 0]).unwrap(), 2);
        assert_eq!(kac_multiplicity(&o, &[0, 1], &[1, 0]).unwrap(), 0);
        let k = Oracle::new(&ExchangeMatrix::new(vec![vec![0, 2], vec![-2, 0]]).unwrap(), 4).unwrap();
        assert!(matches!(kac_multiplicity(&k, &[2, 2], &[1, 1]), Err(Error::Precondition(_))));
    }

    #[test]
    fn fixture_domain_is_enforced() {
        let b = a2();
        let f = PolytopeFixture { n: 2, vertices: vec![vec![0, 0]], top: None, coweight: Some(vec![0, -1]), provenance: "test".into() };
        let p = FProvider::Fixture(f);
        assert_eq!(p.eval(&b, &[0, -1], &[1, 1]).unwrap(), 0);
        assert!(matches!(p.eval(&b, &[1, -1], &[1, 1]), Err(Error::ProviderDomain(_))));
    }
}
