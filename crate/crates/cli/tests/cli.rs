//! End-to-end tests of the `bhzeta` binary: argument handling, exit codes,
//! text and JSON output.

use std::process::{Command, Output};

use bhzeta_cli::Report;

fn bhzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bhzeta"))
        .args(args)
        .env_remove("BHH_ENUM_BOUND")
        .output()
        .expect("binary runs")
}

fn bhzeta_with_bound(bound: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bhzeta"))
        .args(args)
        .env("BHH_ENUM_BOUND", bound)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

fn report(output: &Output) -> Report {
    serde_json::from_str(&stdout(output)).expect("stdout parses as a report")
}

#[test]
fn analyze_reports_weights_group_and_transpose() {
    let out = bhzeta(&["analyze", "x^3"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("det E: 3"));
    assert!(text.contains("weights: (1/3)"));
    assert!(text.contains("symmetry group G_f: Z/3"));
    assert!(text.contains("transpose polynomial: x^3"));

    let out = bhzeta(&["analyze", "x^2*y + y^3"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("det E: 6"));
    assert!(text.contains("weights: (1/3, 1/3)"));
    assert!(text.contains("transpose polynomial: x^2 + x*y^3"));
}

#[test]
fn analyze_accepts_an_exponent_matrix() {
    let out = bhzeta(&["analyze", "--matrix", "2,1;0,3"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("polynomial: x^2*y + y^3"));
}

#[test]
fn analyze_reports_loop_transpose_weights() {
    let out = bhzeta(&["analyze", "x^2 + x*y^3"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("det E: 6"));
    assert!(text.contains("weights: (1/2, 1/6)"));
}

#[test]
fn malformed_input_exits_one_with_a_message() {
    let out = bhzeta(&["analyze", "x^2 + x*y"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("error:"));

    let out = bhzeta(&["analyze", "x^3", "--matrix", "3"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("not both"));

    let out = bhzeta(&["analyze"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("missing input"));
}

#[test]
fn zeta_matches_the_named_one_variable_values() {
    let out = bhzeta(&["zeta", "x^3", "--reduced"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("orbifold zeta: (1-t^3)^1"));
    assert!(text.contains("reduced orbifold zeta: (1-t^3)^1 * (1-t)^-1"));

    let out = bhzeta(&["zeta", "x^3", "--group", "full", "--reduced"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("orbifold zeta: (1-t)^1"));
    assert!(text.contains("reduced orbifold zeta: (1-t)^1 * (1-t^3)^-1"));
}

#[test]
fn zeta_matches_the_named_two_variable_value() {
    let out = bhzeta(&["zeta", "x^2*y + y^3"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("orbifold zeta: (1-t^3)^-1"));
    assert!(text.contains("orbifold Euler characteristic: -3"));
}

#[test]
fn zeta_cross_checks_both_routes() {
    let out = bhzeta(&["zeta", "x^2*y + y^3", "--group", "full", "--method", "both"]);
    assert_eq!(exit_code(&out), 0);

    let out = bhzeta(&["zeta", "x^2*y + y^3", "--group", "1/2,0", "--method", "definition"]);
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn zeta_group_keywords_resolve() {
    for keyword in ["full", "trivial", "monodromy", "sl"] {
        let out = bhzeta(&["zeta", "x^2*y + y^3", "--group", keyword]);
        assert_eq!(exit_code(&out), 0, "group keyword {keyword}");
    }
}

#[test]
fn dual_verifies_the_named_chain_pair() {
    let out = bhzeta(&["dual", "x^2*y + y^3"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("dual polynomial: x^2 + x*y^3"));
    assert!(text.contains("dual group: order 6"));
    assert!(text.contains("mainTheorem: pass"));
    assert!(text.contains("routeEquivalence: pass"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn dual_rejects_a_non_symmetry_generator() {
    let out = bhzeta(&["dual", "x^2*y + y^3", "--group", "1/2,1/2"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("not a symmetry"));
}

#[test]
fn verify_single_entry_covers_all_subgroups() {
    let out = bhzeta(&["verify", "x^3", "--all-subgroups"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("summary: 2 pairs verified — 2 pass, 0 fail, 0 skipped"));
}

#[test]
fn verify_sweeps_the_builtin_corpus() {
    let out = bhzeta(&["verify", "--max-vars", "2", "--max-exponent", "3", "--all-subgroups"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("0 fail"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_rejects_an_empty_corpus_selection() {
    let out = bhzeta(&["verify", "--max-vars", "0"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("empty corpus selection"));
}

#[test]
fn corpus_lists_the_one_variable_ladder() {
    let out = bhzeta(&["corpus", "--max-vars", "1", "--max-exponent", "4"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("fermat2: x^2 (det 2)"));
    assert!(text.contains("fermat3: x^3 (det 3)"));
    assert!(text.contains("fermat4: x^4 (det 4)"));
    assert!(text.contains("3 corpus entries"));
}

#[test]
fn corpus_includes_the_named_chain_and_loop() {
    let out = bhzeta(&["corpus", "--max-vars", "2", "--max-exponent", "3"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("chain2_3: x^2*y + y^3"));
    assert!(text.contains("loop2_2: x^2*y + x*y^2"));
}

#[test]
fn corpus_with_positive_but_tight_bounds_is_empty_not_an_error() {
    let out = bhzeta(&["corpus", "--max-vars", "1", "--max-exponent", "1"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("0 corpus entries"));

    let out = bhzeta(&["corpus", "--max-vars", "0"]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn json_report_round_trips() {
    let out = bhzeta(&["--json", "analyze", "x^3"]);
    assert_eq!(exit_code(&out), 0);
    let parsed = report(&out);
    assert_eq!(parsed.command, "analyze");
    assert_eq!(parsed.exit_status, 0);
    assert_eq!(parsed.result.det.as_deref(), Some("3"));
    assert_eq!(parsed.result.weights, Some(vec!["1/3".to_string()]));

    let out = bhzeta(&["zeta", "x^3", "--reduced", "--json"]);
    let parsed = report(&out);
    let zeta = parsed.result.zeta.expect("zeta terms");
    assert_eq!(zeta.len(), 1);
    assert_eq!((zeta[0].m.as_str(), zeta[0].c.as_str(), zeta[0].s.as_str()), ("3", "0", "1"));
    let reduced = parsed.result.reduced_zeta.expect("reduced terms");
    assert_eq!(reduced.len(), 2);

    let out = bhzeta(&["dual", "x^2*y + y^3", "--json"]);
    let parsed = report(&out);
    let verdicts = parsed.result.verdicts.expect("verdicts");
    assert_eq!(verdicts.main_theorem, "pass");
    assert_eq!(verdicts.m_i0_equals_k_tilde, "pass");
    assert!(stdout(&out).contains("\"mI0equalsKtilde\""));
}

#[test]
fn enumeration_bound_env_var_skips_instead_of_failing() {
    let out = bhzeta_with_bound("1", &["verify", "x^3", "--all-subgroups"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("skipped (bound)"));
    assert!(text.contains("0 fail"));

    let out = bhzeta_with_bound("banana", &["zeta", "x^3"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("BHH_ENUM_BOUND"));

    // An explicit flag wins over the environment.
    let out = bhzeta_with_bound("1", &["verify", "x^3", "--all-subgroups", "--bound", "100"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("2 pass"));
}

#[test]
fn definition_route_error_is_an_input_error() {
    let out = bhzeta_with_bound("1", &["zeta", "x^3", "--group", "full", "--method", "definition"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("enumeration bound exceeded"));
}

#[test]
fn output_is_deterministic() {
    let first = stdout(&bhzeta(&["dual", "x^2*y + y^3", "--group", "full", "--json"]));
    let second = stdout(&bhzeta(&["dual", "x^2*y + y^3", "--group", "full", "--json"]));
    assert_eq!(first, second);
}
