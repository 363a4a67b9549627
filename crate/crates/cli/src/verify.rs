//! The fixture registry and its runner.
//!
//! Each case is a list of ordinary `ctrop` invocations with their expected
//! JSON. Objects in `expected` match as subsets, so a case pins only the keys
//! it cares about. Cases run in parallel, each with a seed derived from the
//! base seed and the case id, so the schedule does not affect results.

use clap::Parser;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::commands::{execute, Ctx};
use crate::error::{CliError, CliResult};
use crate::output::Output;
use crate::Cli;

const REGISTRY: &str = include_str!("../../../fixtures/verify_cases.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// The expected value appears in the published example.
    Published,
    /// The expected value was derived by hand or by an independent route.
    Derived,
    Trivial,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixtureCase {
    pub id: String,
    pub tags: Vec<String>,
    pub source: Source,
    /// Where the value is published, with a verbatim quote, or the derivation.
    pub provenance: String,
    /// Argument lists, without the program name.
    pub runs: Vec<Vec<String>>,
    /// One expected value per run.
    pub expected: Vec<Value>,
    /// A field that must differ between all runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distinct: Option<String>,
}

/// The built-in cases, or those of a case file.
pub fn registry(path: Option<&str>) -> CliResult<Vec<FixtureCase>> {
    let cases: Vec<FixtureCase> = match path {
        None => cluster_trop::error::parse_json(REGISTRY, "verify_cases.json")?,
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("cannot read {p}: {e}")))?;
            cluster_trop::error::parse_json(&text, p)?
        }
    };
    for c in &cases {
        if c.runs.len() != c.expected.len() {
            return Err(CliError::Input(format!("case {}: {} runs but {} expected values", c.id, c.runs.len(), c.expected.len())));
        }
    }
    Ok(cases)
}

/// FNV-1a, so derived seeds are stable across platforms and releases.
fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

pub fn derived_seed(base: u64, id: &str) -> u64 {
    base ^ fnv1a(id)
}

/// `expected` matches `got` when equal, or, for objects, key by key.
fn matches(expected: &Value, got: &Value) -> bool {
    match (expected, got) {
        (Value::Object(e), Value::Object(g)) => e.iter().all(|(k, v)| g.get(k).is_some_and(|x| matches(v, x))),
        (Value::Array(e), Value::Array(g)) => e.len() == g.len() && e.iter().zip(g).all(|(a, b)| matches(a, b)),
        _ => expected == got,
    }
}

fn run_case(case: &FixtureCase, base: u64) -> Value {
    let ctx = Ctx { seed: derived_seed(base, &case.id) };
    let mut got = Vec::new();
    let mut error = None;
    for args in &case.runs {
        let argv = std::iter::once("ctrop".to_string()).chain(args.iter().cloned());
        let out = Cli::try_parse_from(argv)
            .map_err(|e| CliError::Input(e.to_string()))
            .and_then(|cli| execute(&cli.command, &ctx));
        match out {
            Ok(o) => got.push(o.json),
            Err(e) => {
                error = Some(e.to_string());
                break;
            }
        }
    }
    let mut pass = error.is_none() && got.iter().zip(&case.expected).all(|(g, e)| matches(e, g));
    if let (true, Some(field)) = (pass, &case.distinct) {
        let vals: Vec<&Value> = got.iter().filter_map(|g| g.get(field)).collect();
        pass = vals.len() == got.len() && (0..vals.len()).all(|i| (0..i).all(|j| vals[i] != vals[j]));
    }
    let mut v = json!({
        "id": case.id,
        "tags": case.tags,
        "source": case.source,
        "provenance": case.provenance,
        "seed": ctx.seed,
        "pass": pass,
        "expected": case.expected,
        "got": got,
    });
    if let Some(e) = error {
        v["error"] = json!(e);
    }
    v
}

pub fn run(tags: &[String], list: bool, path: Option<&str>, ctx: &Ctx) -> CliResult<Output> {
    let cases: Vec<FixtureCase> = registry(path)?
        .into_iter()
        .filter(|c| tags.is_empty() || c.tags.iter().any(|t| tags.contains(t)))
        .collect();
    if list {
        let rows: Vec<Value> = cases.iter().map(|c| json!({ "id": c.id, "tags": c.tags, "source": c.source })).collect();
        return Ok(Output::json(Value::Array(rows)));
    }
    let results: Vec<Value> = cases.par_iter().map(|c| run_case(c, ctx.seed)).collect();
    let passed = results.iter().filter(|r| r["pass"] == json!(true)).count();
    for r in &results {
        let status = if r["pass"] == json!(true) { "PASS" } else { "FAIL" };
        eprintln!("{status} {}", r["id"].as_str().unwrap_or_default());
    }
    let failed = results.len() - passed;
    let mut out = Output::json(json!({ "passed": passed, "failed": failed, "cases": results }));
    out.failed = failed > 0;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_parses_and_ids_are_unique() {
        let cases = registry(None).unwrap();
        let mut ids: Vec<&str> = cases.iter().map(|c| c.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), cases.len());
        assert!(cases.iter().all(|c| !c.provenance.is_empty()));
    }

    #[test]
    fn subset_matching() {
        assert!(matches(&json!({"a": 1}), &json!({"a": 1, "b": 2})));
        assert!(!matches(&json!({"a": 1}), &json!({"a": 2})));
        assert!(!matches(&json!([1, 2]), &json!([1, 2, 3])));
    }

    #[test]
    fn derived_seeds_depend_on_the_id() {
        assert_ne!(derived_seed(1, "a"), derived_seed(1, "b"));
        assert_eq!(derived_seed(7, "x"), derived_seed(7, "x"));
    }
}
