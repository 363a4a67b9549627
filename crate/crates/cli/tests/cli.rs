use std::process::{Command, Output};

use serde_json::{json, Value};

fn ctrop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ctrop")).args(args).output().expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = ctrop(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn tropical_walk_example() {
    let out = ctrop(&["tropical-walk", "--quiver", "cyc9.json", "--start", "-e4", "--word", "4 3 2 4 3 1 4 2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), r#"{"delta":[3,-2,0,1],"dim":[4,6,4,6],"gamma":[4,6,4,5]}"#);
}

#[test]
fn tropical_walk_tracks_keep_the_requested_order() {
    let v = ok_json(&[
        "tropical-walk", "--quiver", "cyc9", "--start", "-e4", "--word", "4 3 2 4 3 1 4 2", "--tracks",
        "delta,deltacheck,dim,gamma",
    ]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["delta", "deltacheck", "dim", "gamma"]);
    // deltacheck = delta + dim B
    let b = ok_json(&["mutate-matrix", "--quiver", "cyc9", "--k", ""]);
    let n = 4;
    for j in 0..n {
        let dim_b: i64 = (0..n).map(|i| v["dim"][i].as_i64().unwrap() * b[i][j].as_i64().unwrap()).sum();
        assert_eq!(v["deltacheck"][j].as_i64().unwrap(), v["delta"][j].as_i64().unwrap() + dim_b);
    }
}

#[test]
fn mutate_matrix_example() {
    let out = ctrop(&["mutate-matrix", "--quiver", "a2.json", "--k", "1"]);
    assert_eq!(stdout(&out).trim(), "[[0,-1],[1,0]]");
}

#[test]
fn candecomp_example() {
    let out = ctrop(&["candecomp", "--quiver", "kron.json", "--alpha", "1 3", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), r#"[{"v":[1,2],"m":1},{"v":[0,1],"m":1}]"#);
}

#[test]
fn verify_ex_counter_runs_four_passing_cases() {
    let v = ok_json(&["verify", "--tag", "ex-counter"]);
    assert_eq!(v["passed"], json!(4));
    assert_eq!(v["failed"], json!(0));
}

#[test]
fn verify_polytope_cases_pass() {
    let v = ok_json(&["verify", "--tag", "polytope"]);
    assert_eq!(v["failed"], json!(0));
    assert!(v["passed"].as_u64().unwrap() >= 2);
    let degree = v["cases"].as_array().unwrap().iter().find(|c| c["id"] == "polytope/degree").expect("degree case");
    assert_eq!(degree["got"][0]["degree"], json!(-2));
}

#[test]
fn verify_everything_passes() {
    let out = ctrop(&["verify"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["failed"], json!(0));
    assert!(stderr(&out).lines().all(|l| l.starts_with("PASS ")));
}

#[test]
fn verify_with_no_matching_tag_is_empty_and_succeeds() {
    let v = ok_json(&["verify", "--tag", "no-such-tag"]);
    assert_eq!(v, json!({"passed": 0, "failed": 0, "cases": []}));
}

#[test]
fn verify_is_deterministic_for_a_fixed_seed() {
    let a = ctrop(&["verify", "--seed", "42"]);
    let b = ctrop(&["verify", "--seed", "42"]);
    assert_eq!(a.stdout, b.stdout);
    let c = ok_json(&["verify", "--seed", "43"]);
    let seeds = |v: &Value| v["cases"].as_array().unwrap().iter().map(|c| c["seed"].clone()).collect::<Vec<_>>();
    let a: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_ne!(seeds(&a), seeds(&c));
}

#[test]
fn verify_list_reports_ids_without_running() {
    let v = ok_json(&["verify", "--list", "--tag", "ex-counter"]);
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert!(v[0].get("pass").is_none());
}

#[test]
fn failing_case_file_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cases.json");
    let cases = json!([{
        "id": "wrong", "tags": ["t"], "source": "trivial", "provenance": "deliberately wrong",
        "runs": [["mutate-matrix", "--quiver", "a2", "--k", "1"]],
        "expected": [[[0, 1], [-1, 0]]]
    }, {
        "id": "right", "tags": ["t"], "source": "trivial", "provenance": "mu_1 negates row and column 1",
        "runs": [["mutate-matrix", "--quiver", "a2", "--k", "1"]],
        "expected": [[[0, -1], [1, 0]]]
    }]);
    std::fs::write(&path, cases.to_string()).unwrap();
    let out = ctrop(&["verify", "--registry", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((v["passed"].clone(), v["failed"].clone()), (json!(1), json!(1)));
    assert!(stderr(&out).contains("FAIL wrong"));
}

#[test]
fn malformed_json_is_an_input_error_with_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"n": 2, "B": [[0, 1], [-1, 0]"#).unwrap();
    let out = ctrop(&["mutate-matrix", "--quiver", path.to_str().unwrap(), "--k", "1"]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert!(err.contains("bad.json"), "{err}");
    assert!(err.contains("byte"), "{err}");
}

#[test]
fn missing_file_is_an_input_error() {
    let out = ctrop(&["mutate-matrix", "--quiver", "/nonexistent/q.json", "--k", "1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("/nonexistent/q.json"));
}

#[test]
fn bad_arguments_are_input_errors() {
    assert_eq!(code(&ctrop(&["mutate-matrix", "--quiver", "a2", "--k", "3"])), 2);
    assert_eq!(code(&ctrop(&["tropical-walk", "--quiver", "a2", "--start", "-e1", "--delta"])), 2);
    assert_eq!(code(&ctrop(&["polytope-eval", "--polytope", "sec63", "--delta", "1 2"])), 2);
}

#[test]
fn oracle_on_a_cyclic_quiver_is_a_capability_error() {
    let out = ctrop(&["oracle", "hom", "--quiver", "cyc9", "--alpha", "1 0 0 0", "--beta", "0 1 0 0"]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));
}

#[test]
fn dt_step_without_a_dimension_provider_is_a_capability_error() {
    let out = ctrop(&["tropical-walk", "--quiver", "cyc9", "--start", "-e1", "--word", "+"]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));
}

#[test]
fn oracle_hom_of_presentations_reports_the_seed() {
    let v = ok_json(&["oracle", "hom", "--quiver", "a2", "--delta", "1 0", "--etacheck", "0 2", "--seed", "42"]);
    assert_eq!(v["seed"], json!(42));
    assert!(v["hom"].as_i64().unwrap() >= 0);
    let again = ok_json(&["oracle", "hom", "--quiver", "a2", "--delta", "1 0", "--etacheck", "0 2", "--seed", "42"]);
    assert_eq!(v, again);
}

#[test]
fn csv_lists_one_row_per_coordinate() {
    let out = ctrop(&[
        "tropical-walk", "--quiver", "cyc9", "--start", "-e4", "--word", "4 3 2 4 3 1 4 2", "--format", "csv",
    ]);
    assert_eq!(code(&out), 0);
    let mut r = csv::Reader::from_reader(&out.stdout[..]);
    assert_eq!(r.headers().unwrap(), vec!["coordinate", "delta", "dim", "gamma"]);
    let rows: Vec<Vec<i64>> =
        r.records().map(|rec| rec.unwrap().iter().map(|f| f.parse().unwrap()).collect()).collect();
    assert_eq!(rows, vec![vec![1, 3, 4, 4], vec![2, -2, 6, 6], vec![3, 0, 4, 4], vec![4, 1, 6, 5]]);
}

#[test]
fn csv_of_a_non_vector_result_is_refused() {
    let out = ctrop(&["candecomp", "--quiver", "kron", "--alpha", "1 3", "--format", "csv"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn mutated_matrix_feeds_back_as_a_quiver() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mu.json");
    let once = ctrop(&["mutate-matrix", "--quiver", "cyc9", "--k", "2 3"]);
    std::fs::write(&path, &once.stdout).unwrap();
    let back = ok_json(&["mutate-matrix", "--quiver", path.to_str().unwrap(), "--k", "3 2"]);
    assert_eq!(back, ok_json(&["mutate-matrix", "--quiver", "cyc9", "--k", ""]));
}

#[test]
fn vector_outputs_feed_back_as_arguments() {
    let walk = ok_json(&["tropical-walk", "--quiver", "kron", "--start", "-e1", "--word", "1 2"]);
    let delta = walk["delta"].to_string();
    let dim = ok_json(&["oracle", "dim", "--quiver", "kron", "--delta", &delta]);
    assert_eq!(dim["dim"], walk["dim"]);
}

#[test]
fn seed_walk_conventions_agree_with_denvec() {
    let word = "4 3 2 4 3 1 4 2";
    let walk = ok_json(&["seed-walk", "--quiver", "cyc9", "--word", word, "--convention", "initial"]);
    let den = ok_json(&["denvec", "--quiver", "cyc9", "--witness", &format!("{word}:4")]);
    assert_eq!(walk["cluster"][3]["variable"], den["variable"]);
    assert_eq!(den["den"], json!([4, 6, 4, 6]));
    let reversed = ok_json(&["seed-walk", "--quiver", "cyc9", "--word", "2 4 1 3 4 2 3 4"]);
    assert_eq!(reversed["cluster"], walk["cluster"]);
}

#[test]
fn compat_providers_agree_on_the_kronecker_quiver() {
    // eta = "1:2" asks for coweight (2, 0), the square of the variable at "1:1".
    for delta in ["1 -2", "-1 0", "0 -1", "3 -1"] {
        let args = |p: &'static str| ["compat", "--quiver", "kron", "--eta-word", "1:2", "--delta", delta, "--provider", p];
        let oracle = ok_json(&args("oracle"));
        let monomial = ok_json(&args("cluster-monomial:1:1^2"));
        assert_eq!(oracle["degree"], monomial["degree"], "delta {delta}");
    }
}

#[test]
fn provider_for_the_wrong_coweight_is_a_capability_error() {
    let out = ctrop(&[
        "compat", "--quiver", "kron", "--eta-word", "1 2:1", "--delta", "1 -2", "--provider", "cluster-monomial:1 2:1",
    ]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));
    assert!(stderr(&out).contains("coweight"));
}

#[test]
fn polytope_fixture_file_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("square.json");
    std::fs::write(&path, r#"{"n":2,"coweight":[0,0],"vertices":[[0,0],[1,0],[0,1],[1,1]],"provenance":"unit square"}"#)
        .unwrap();
    let v = ok_json(&["polytope-eval", "--polytope", path.to_str().unwrap(), "--delta", "[2,-1]"]);
    assert_eq!(v["value"], json!(2));
}

#[test]
fn fk_variable_is_found() {
    let v = ok_json(&["search", "--quiver", "fk", "--target-expr", "(x1^2+2*x1*x3+x3^2+x2)/(x1*x2*x3)"]);
    assert_eq!(v["found"], json!(true));
    assert_eq!(v["den"], json!([1, 1, 1]));
}

#[test]
fn help_documents_every_subcommand() {
    let out = ctrop(&["--help"]);
    let text = stdout(&out);
    for sub in ["verify", "mutate-matrix", "seed-walk", "denvec", "tropical-walk", "schur-rank", "compat", "candecomp", "oracle", "search"] {
        assert!(text.contains(sub), "--help lacks {sub}");
    }
}

#[test]
fn shipped_schemas_are_json_schemas() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../schemas");
    let mut count = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert!(v["$schema"].as_str().unwrap().contains("json-schema.org"), "{path:?}");
        count += 1;
    }
    assert!(count >= 10);
}
