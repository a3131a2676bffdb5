//! End-to-end runs of the `cutlab` binary over the fixture corpus: the
//! exit-code contract (0 property holds / query succeeds, 1 counterexample
//! found, 2 invalid input) and the shape of the JSON reports.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut path = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    path.push("tests/fixtures");
    path.push(name);
    path.to_string_lossy().into_owned()
}

fn cutlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cutlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

#[test]
fn const_command_exits_zero_with_table() {
    let out = cutlab(&["const"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    let two_v3 = doc["two_v3"].as_f64().unwrap();
    assert!((2.02..2.03).contains(&two_v3));
    assert_eq!(doc["v2"].as_f64().unwrap(), std::f64::consts::PI);
}

#[test]
fn obstruct_weeks_exits_zero_and_reports_obstruction() {
    let out = cutlab(&["obstruct", "--volume", "0.9427"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["verdict"], "obstructed");
    assert_eq!(doc["reasons"][0], "Corollary4");
    let margin = doc["margin"].as_f64().unwrap();
    assert!((margin - 1.087).abs() < 5e-3);

    let out = cutlab(&["obstruct", "--volume", "2.5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["verdict"], "not obstructed");

    // The empty-guts exclusion upgrades the conclusion.
    let out = cutlab(&["obstruct", "--volume", "0.9427", "--empty-guts-excluded"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["reasons"][1], "Corollary5");
}

#[test]
fn analyze_clean_systems_exit_zero() {
    for name in ["parallel_pair.json", "corner_ladder.json"] {
        let out = cutlab(&["analyze", "-c", &fixture(name)]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let doc = stdout_json(&out);
        assert_eq!(doc["violations"], 0);
        assert_eq!(doc["colourings"].as_array().unwrap().len(), 1);
        assert_eq!(doc["colourings"][0]["verdict"], "holds");
        assert_eq!(doc["colourings"][0]["admissible_labeling"], true);
    }
}

#[test]
fn analyze_violating_system_exits_one() {
    let out = cutlab(&["analyze", "-c", &fixture("nested_pair_with_corners.json")]);
    assert_eq!(out.status.code(), Some(1));
    let doc = stdout_json(&out);
    assert!(doc["violations"].as_u64().unwrap() >= 1);
}

#[test]
fn dichotomy_small_grid_exits_zero() {
    let out = cutlab(&[
        "dichotomy",
        "--n",
        "2",
        "--max-sections",
        "3",
        "--jobs",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["summary"]["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn dichotomy_full_grid_reports_the_counterexamples() {
    let out = cutlab(&["dichotomy", "--n", "2", "--max-sections", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = stdout_json(&out);
    assert_eq!(doc["summary"]["violations"].as_array().unwrap().len(), 3);

    // Restricting to colourings with a black side on every section clears
    // the grid.
    let out = cutlab(&[
        "dichotomy",
        "--n",
        "2",
        "--max-sections",
        "4",
        "--one-black-side",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn jobs_env_var_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_cutlab"))
        .args(["dichotomy", "--n", "2", "--max-sections", "3"])
        .env("CUTLAB_JOBS", "1")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn symmetry_reduction_flag_shrinks_the_sweep() {
    let full = cutlab(&["dichotomy", "--n", "3", "--max-sections", "4"]);
    let reduced = cutlab(&[
        "dichotomy",
        "--n",
        "3",
        "--max-sections",
        "4",
        "--symmetry-reduction",
    ]);
    assert_eq!(full.status.code(), Some(0));
    assert_eq!(reduced.status.code(), Some(0));
    let full_count = stdout_json(&full)["summary"]["multisets"].as_u64().unwrap();
    let reduced_count = stdout_json(&reduced)["summary"]["multisets"]
        .as_u64()
        .unwrap();
    assert!(reduced_count < full_count);
}

#[test]
fn lemma8_pair_reports_witness_face() {
    let out = cutlab(&["lemma8", "-c", &fixture("lemma8_pair.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["outcome"], "parallel-arc witness");
    assert_eq!(doc["witness_face"][0], 0);
}

#[test]
fn tree_median_query() {
    let out = cutlab(&["tree", "-c", &fixture("h_tree_median.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["point"], "node 0");
}

#[test]
fn bounds_command() {
    let out = cutlab(&["bounds", "--chi", "-1", "--faces", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["guts"]["thm2_simplex"].as_f64().unwrap(), 1.0);
    assert_eq!(doc["guts"]["thm2_poly"].as_f64().unwrap(), 1.0);
    let agol = doc["guts"]["agol_vol"].as_f64().unwrap();
    assert!((agol - 2.0299).abs() < 5e-3);

    let out = cutlab(&["bounds", "--norm", "4.0"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["hypersurface"]["norm_bound"].as_f64().unwrap(), 8.0);
}

#[test]
fn invalid_inputs_exit_two() {
    let fixtures = [
        "broken.json",
        "float_level.json",
        "wrong_schema.json",
        "not_disjoint.json",
    ];
    for name in fixtures {
        let path = fixture(name);
        let out = cutlab(&["analyze", "-c", &path]);
        assert_eq!(out.status.code(), Some(2), "fixture {name}");
    }
    let flag_cases: Vec<Vec<&str>> = vec![
        vec!["analyze", "-c", "/nonexistent/path.json"],
        vec!["dichotomy", "--n", "9", "--max-sections", "3"],
        vec!["obstruct"],
        vec!["no-such-command"],
    ];
    for args in &flag_cases {
        let out = cutlab(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn parse_diagnostics_name_the_json_path() {
    let out = cutlab(&["analyze", "-c", &fixture("float_level.json")]);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("sections[0].level"),
        "diagnostic did not name the path: {stderr}"
    );
}

#[test]
fn not_disjoint_diagnostic_carries_a_witness() {
    let out = cutlab(&["analyze", "-c", &fixture("not_disjoint.json")]);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("meet at"), "{stderr}");
}
