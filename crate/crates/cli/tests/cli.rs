use serde_json::{json, Value};
use xtri_cli::run;

fn ok_json(args: &[&str]) -> Value {
    let mut argv = vec!["xtri"];
    argv.extend_from_slice(args);
    let (code, out) = run(argv);
    assert_eq!(code, 0, "{out}");
    serde_json::from_str(&out).unwrap()
}

fn exit_code(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["xtri"];
    argv.extend_from_slice(args);
    run(argv)
}

#[test]
fn census_reports_the_single_bad_pair_of_s4() {
    let v = ok_json(&["census", "--n", "4"]);
    assert_eq!(v["bad_pairs"], json!([{ "w1": "1,3,2,4", "w2": "4,2,3,1" }]));
    assert_eq!(v["comparable_pairs"], 213);
    let (code, csv) = exit_code(&["census", "--n", "4", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(csv, "w1,w2\n\"1,3,2,4\",\"4,2,3,1\"\n");
}

#[test]
fn dim_on_the_diagonal_is_dim_xtri() {
    let v = ok_json(&["dim", "--w", "1,2,3;1,2,3", "--wsat", "1,2,3;1,2,3", "--h", "0,1,2;0,2,5"]);
    assert_eq!(v["total"], v["dim_xtri"]);
    assert_eq!(v["dim_xtri"], 21);
    let v = ok_json(&["dim", "--n", "2", "--sigma", "1", "--w", "2,1", "--wsat", "1,2", "--h", "0,1"]);
    assert_eq!(v["total"], 7);
    assert_eq!(v["status"], "theorem");
}

#[test]
fn dim_refuses_bad_pairs_unless_overridden() {
    let args = ["dim", "--w", "4,2,3,1", "--wsat", "1,3,2,4", "--h", "0,1,2,3"];
    let (code, out) = exit_code(&args);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["kind"], "not_good_pair");
    let mut with = args.to_vec();
    with.push("--override");
    assert_eq!(ok_json(&with)["status"], "conjectural");
}

#[test]
fn schubert_tangent_both_methods() {
    let v = ok_json(&["schubert", "tangent", "--n", "4", "--w", "3,4,1,2", "--tau", "1,2,3,4"]);
    assert_eq!(v, json!({ "dim": 5, "method": "combinatorial" }));
    let v = ok_json(&["schubert", "tangent", "--n", "4", "--w", "3,4,1,2", "--tau", "1,2,3,4", "--oracle"]);
    assert_eq!(v, json!({ "dim": 5, "method": "jacobian" }));
    let (code, _) = exit_code(&["schubert", "tangent", "--w", "1,2,3", "--tau", "2,1,3"]);
    assert_eq!(code, 1);
}

#[test]
fn schubert_table_matches_the_golden_file() {
    let (code, out) = exit_code(&["schubert", "table", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 20);
    let golden_rows: Vec<&str> = xtri_cli::golden::SCHUBERT_TABLE.lines().filter(|l| l.starts_with("3,")).collect();
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows, golden_rows);
}

#[test]
fn linkage_examples() {
    let v = ok_json(&["linkage", "--mu=-1,2", "--lam", "1,0"]);
    assert_eq!(v, json!({ "linked": true, "chain": [{ "tau": 0, "i": 1, "j": 2 }] }));
    let v = ok_json(&["linkage", "--mu", "1,0", "--lam=-1,2"]);
    assert_eq!(v["linked"], false);
    let (code, out) = exit_code(&["linkage", "--mu", "1/2,0", "--lam", "1,0"]);
    assert_eq!(code, 1);
    assert!(out.contains("non_integral"));
}

#[test]
fn artin_eigen_from_a_file() {
    let dir = std::env::temp_dir().join(format!("xtri-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f.json");
    std::fs::write(&path, r#"[["0","0"],["e","1"]]"#).unwrap();
    let p = path.to_str().unwrap();
    let v = ok_json(&["artin", "eigen", "--algebra", "e^2", "--matrix", p, "--lams", "0;1"]);
    assert_eq!(v["basis"], json!([["1 + 0*e", "0 + 0*e"], ["0 + -1*e", "1 + 0*e"]]));
    let v = ok_json(&["artin", "eigen", "--algebra", "e^2", "--matrix", p]);
    assert_eq!(v["eigenvalues"], json!(["0 + 0*e", "1 + 0*e"]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(exit_code(&["census"]).0, 2);
    assert_eq!(exit_code(&["frobnicate"]).0, 2);
    assert_eq!(exit_code(&["census", "--n", "4", "--format", "xml"]).0, 2);
    assert_eq!(exit_code(&["verify", "--suite", "nonsense"]).0, 2);
    let (code, out) = exit_code(&["census", "--n", "3,1"]);
    assert_eq!(code, 2, "{out}");
}

#[test]
fn domain_errors_exit_with_one() {
    let (code, out) = exit_code(&["census", "--n", "9"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["kind"], "bound_exceeded");
    let (code, out) = exit_code(&["dim", "--w", "1,1", "--wsat", "1,2", "--h", "0,1"]);
    assert_eq!(code, 1);
    assert!(out.contains("invalid_permutation"));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = std::env::temp_dir().join(format!("xtri-cfg-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("xtri.toml");
    std::fs::write(&path, "n = 4\nformat = \"csv\"\nworkers = 1\n").unwrap();
    let p = path.to_str().unwrap();
    let (code, out) = exit_code(&["census", "--config", p]);
    assert_eq!(code, 0);
    assert!(out.starts_with("w1,w2\n"));
    std::fs::write(&path, "bogus = 1\n").unwrap();
    assert_eq!(exit_code(&["census", "--n", "2", "--config", p]).0, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let args = ["verify", "--suite", "flags", "--seed", "5"];
    let a = exit_code(&args);
    let b = exit_code(&args);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
    let v: Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(xtri_cli::render(&v), a.1);

    let census: xtri_core::CensusReport = serde_json::from_str(&exit_code(&["census", "--n", "3"]).1).unwrap();
    assert!(census.bad_pairs.is_empty());
    let dim = exit_code(&["dim", "--w", "3,2,1", "--wsat", "2,1,3", "--h", "0,1,5"]).1;
    let report: xtri_core::FormulaReport = serde_json::from_str(&dim).unwrap();
    assert_eq!(xtri_cli::render(&serde_json::to_value(&report).unwrap()), dim);
}

#[test]
fn golden_suite_passes() {
    let v = ok_json(&["verify", "--suite", "golden"]);
    assert_eq!(v["passed"], true);
}
