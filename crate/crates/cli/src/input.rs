//! Loading quivers, polytopes and vectors from arguments.

use std::path::Path;

use cluster_trop::error::parse_json;
use cluster_trop::fixtures;
use cluster_trop::polytope::PolytopeFixture;
use cluster_trop::quiver::{ExchangeMatrix, QuiverFile};
use cluster_trop::vector::{parse_ivec, IVec};

use crate::error::{CliError, CliResult};

fn read(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))
}

/// Fixture name for a path such as `cyc9.json` when no such file exists.
fn embedded_name(arg: &str) -> &str {
    Path::new(arg).file_stem().and_then(|s| s.to_str()).unwrap_or(arg)
}

/// A quiver from a file, or from an embedded fixture name (`cyc9` or `cyc9.json`).
///
/// Files hold either the quiver format or a bare matrix, so the output of
/// `mutate-matrix` can be fed back in.
pub fn quiver(arg: &str) -> CliResult<ExchangeMatrix> {
    let text = if Path::new(arg).exists() {
        read(arg)?
    } else if let Some(s) = fixtures::quiver_json(embedded_name(arg)) {
        s.to_string()
    } else {
        return Err(CliError::Input(format!(
            "cannot read {arg}: no such file or embedded fixture (known: {})",
            fixtures::names().join(", ")
        )));
    };
    quiver_from_str(&text, arg)
}

pub fn quiver_from_str(text: &str, what: &str) -> CliResult<ExchangeMatrix> {
    if text.trim_start().starts_with('[') {
        let b: Vec<Vec<i64>> = parse_json(text, what)?;
        return Ok(ExchangeMatrix::new(b)?);
    }
    let q: QuiverFile = parse_json(text, what)?;
    Ok(ExchangeMatrix::from_file(&q)?)
}

/// A polytope fixture from a file, or an embedded name such as `sec63`.
pub fn polytope(arg: &str) -> CliResult<PolytopeFixture> {
    if Path::new(arg).exists() {
        return Ok(parse_json(&read(arg)?, arg)?);
    }
    let name = embedded_name(arg).trim_end_matches("_polytope");
    if fixtures::polytope_names().contains(&name) {
        return Ok(fixtures::polytope(name)?);
    }
    Err(CliError::Input(format!(
        "cannot read {arg}: no such file or embedded polytope (known: {})",
        fixtures::polytope_names().join(", ")
    )))
}

/// A vector of length `n`, written `"-1 2 10 -6"`, `"-1,2,10,-6"` or as a JSON array.
pub fn vector(s: &str, n: usize, what: &str) -> CliResult<IVec> {
    let t = s.trim();
    let v = parse_ivec(t.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(t))?;
    if v.len() != n {
        return Err(CliError::Input(format!("{what} {s:?} has {} entries, the quiver has {n} vertices", v.len())));
    }
    Ok(v)
}

/// A start vertex written `-e4`, `e4` or `4` (1-based).
pub fn start_vertex(s: &str, n: usize) -> CliResult<usize> {
    let t = s.trim().replace('\u{2212}', "-");
    let t = t.trim_start_matches('-').trim_start_matches('e');
    let i: usize = t.parse().map_err(|_| CliError::Input(format!("bad start vertex {s:?}; write e.g. -e4")))?;
    if i == 0 || i > n {
        return Err(CliError::Input(format!("start vertex {s:?} out of range 1..={n}")));
    }
    Ok(i - 1)
}
