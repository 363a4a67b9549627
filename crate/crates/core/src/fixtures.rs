//! Named exchange matrices and polytope fixtures shipped with the repository.
//!
//! The JSON files under `fixtures/` are embedded at build time, so library
//! users and tests see the same data as the command-line tool.

use crate::error::{Error, Result};
use crate::polytope::PolytopeFixture;
use crate::quiver::ExchangeMatrix;

const FILES: &[(&str, &str)] = &[
    ("a2", include_str!("../../../fixtures/a2.json")),
    ("a3", include_str!("../../../fixtures/a3.json")),
    ("kron", include_str!("../../../fixtures/kron.json")),
    ("kron3", include_str!("../../../fixtures/kron3.json")),
    ("cyc9", include_str!("../../../fixtures/cyc9.json")),
    ("fk", include_str!("../../../fixtures/fk.json")),
    ("b2", include_str!("../../../fixtures/b2.json")),
];

const POLYTOPES: &[(&str, &str)] = &[
    ("sec63", include_str!("../../../fixtures/sec63_polytope.json")),
    ("b2_zero", include_str!("../../../fixtures/b2_zero.json")),
];

/// Names accepted by [`quiver`].
pub fn names() -> Vec<&'static str> {
    FILES.iter().map(|f| f.0).collect()
}

/// The embedded JSON text of a named quiver.
pub fn quiver_json(name: &str) -> Option<&'static str> {
    FILES.iter().find(|f| f.0 == name).map(|f| f.1)
}

/// A named exchange matrix.
pub fn quiver(name: &str) -> Result<ExchangeMatrix> {
    let s = quiver_json(name).ok_or_else(|| Error::Index(format!("unknown quiver fixture {name:?}")))?;
    ExchangeMatrix::from_json(s)
}

/// Names accepted by [`polytope`].
pub fn polytope_names() -> Vec<&'static str> {
    POLYTOPES.iter().map(|f| f.0).collect()
}

/// A named polytope fixture.
pub fn polytope(name: &str) -> Result<PolytopeFixture> {
    let (_, s) = POLYTOPES
        .iter()
        .find(|f| f.0 == name)
        .ok_or_else(|| Error::Index(format!("unknown polytope fixture {name:?}")))?;
    crate::error::parse_json(s, name)
}

/// The Newton polytope of the cyc9 coweight `(-4,4,-7,4)`.
pub fn sec63_polytope() -> PolytopeFixture {
    polytope("sec63").expect("embedded fixture parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_load() {
        for name in names() {
            let b = quiver(name).unwrap();
            assert!(b.n() >= 2, "{name}");
        }
        assert_eq!(quiver("b2").unwrap().symmetrizer(), Some(&[1, 2][..]));
        let p = sec63_polytope();
        assert_eq!(p.vertices.len(), 15);
        assert_eq!(p.polytope().unwrap().tropical_eval(&[-1, 2, 10, -6]).unwrap(), 8);
        assert!(quiver("nope").is_err());
        for name in polytope_names() {
            polytope(name).unwrap().polytope().unwrap();
        }
    }
}
