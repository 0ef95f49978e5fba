//! Black-box tests of the `robust-mst` binary: subcommand plumbing, file
//! round trips, determinism, and the exit-code contract.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use robust_mst::report::SolutionReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_robust-mst"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_solve_eval_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    let gen = run(&[
        "generate", "--kind", "random", "--n", "6", "--m", "10", "--k", "3", "--out",
        path_str(&inst),
    ]);
    assert_eq!(code(&gen), 0, "{}", stderr(&gen));
    // The metadata sidecar appears next to the instance by default.
    assert!(dir.path().join("inst.meta.json").exists());

    let solved = run(&["solve", path_str(&inst), "--algo", "exact"]);
    assert_eq!(code(&solved), 0, "{}", stderr(&solved));
    let report = SolutionReport::from_json(solved.stdout.as_slice()).unwrap();
    assert_eq!(report.algorithm, "exact");
    let tree = report.tree_edges.clone().unwrap();
    assert_eq!(tree.len(), 5);

    // Re-evaluating the emitted report reproduces the same value.
    let report_path = dir.path().join("report.json");
    fs::write(&report_path, &solved.stdout).unwrap();
    let eval = run(&[
        "eval", path_str(&inst), "--solution", path_str(&report_path), "--objective", "minmax",
    ]);
    assert_eq!(code(&eval), 0, "{}", stderr(&eval));
    let evaluated = SolutionReport::from_json(eval.stdout.as_slice()).unwrap();
    assert_eq!(evaluated.algorithm, "eval-minmax");
    assert_eq!(evaluated.value, report.value);
    assert_eq!(evaluated.tree_edges.unwrap(), tree);
}

#[test]
fn generation_is_reproducible_and_seed_sensitive() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let c = dir.path().join("c.json");
    for (out, seed) in [(&a, "7"), (&b, "7"), (&c, "8")] {
        let gen = run(&[
            "generate", "--kind", "random", "--n", "6", "--m", "9", "--k", "2", "--seed", seed,
            "--out", path_str(out),
        ]);
        assert_eq!(code(&gen), 0, "{}", stderr(&gen));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
}

#[test]
fn solve_reports_are_byte_identical_across_runs_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("ts.json");
    let gen = run(&[
        "generate", "--kind", "random", "--n", "5", "--m", "8", "--k", "2", "--two-stage",
        "--out", path_str(&inst),
    ]);
    assert_eq!(code(&gen), 0, "{}", stderr(&gen));
    let mut outputs = Vec::new();
    for threads in ["1", "1", "3"] {
        let solved = run(&[
            "solve", path_str(&inst), "--algo", "lp-round-2stage", "--threads", threads,
        ]);
        assert_eq!(code(&solved), 0, "{}", stderr(&solved));
        outputs.push(solved.stdout);
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
}

#[test]
fn algorithm_instance_mismatch_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("mm.json");
    run(&[
        "generate", "--kind", "random", "--n", "4", "--m", "5", "--k", "2", "--out",
        path_str(&inst),
    ]);
    let out = run(&["solve", path_str(&inst), "--algo", "exact-2stage"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("two-stage"));
}

#[test]
fn negative_costs_on_an_lp_route_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("neg.json");
    fs::write(
        &inst,
        r#"{"edges":[[0,1],[1,2]],"name":"neg","num_vertices":3,"scenarios":[[-1.0,2.0]]}"#,
    )
    .unwrap();
    let out = run(&["solve", path_str(&inst), "--algo", "lp-round"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("NegativeCosts"));
    // The exact route accepts the same file.
    let exact = run(&["solve", path_str(&inst), "--algo", "exact"]);
    assert_eq!(code(&exact), 0, "{}", stderr(&exact));
}

#[test]
fn disconnected_instances_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("disc.json");
    fs::write(
        &inst,
        r#"{"edges":[[0,1]],"name":"disc","num_vertices":3,"scenarios":[[1.0]]}"#,
    )
    .unwrap();
    let out = run(&["solve", path_str(&inst), "--algo", "exact"]);
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).contains("not connected"));
}

#[test]
fn scenario_blowup_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("lc.json");
    fs::write(
        &spec,
        r#"{"num_left":1,"num_right":1,"num_labels":2,
            "edges":[{"left":0,"right":0,"pairs":[[1,1],[2,2]]}]}"#,
    )
    .unwrap();
    let out = run(&[
        "generate", "--kind", "labelcover", "--spec", path_str(&spec), "--g", "1",
        "--scenario-cap", "2", "--out", path_str(&dir.path().join("lc-inst.json")),
    ]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("cap"));
}

#[test]
fn time_limited_bnb_exits_5_but_writes_the_incumbent() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("big.json");
    let gen = run(&[
        "generate", "--kind", "random", "--n", "14", "--m", "42", "--k", "4", "--out",
        path_str(&inst),
    ]);
    assert_eq!(code(&gen), 0, "{}", stderr(&gen));
    let report_path = dir.path().join("incumbent.json");
    let out = run(&[
        "solve", path_str(&inst), "--algo", "bnb", "--time-limit-s", "0.000001", "--out",
        path_str(&report_path),
    ]);
    assert_eq!(code(&out), 5);
    let report = SolutionReport::from_json(&fs::read(&report_path).unwrap()).unwrap();
    assert_eq!(report.algorithm, "bnb");
    assert!(report.tree_edges.unwrap().len() == 13);
}

#[test]
fn unreadable_input_and_bad_flags_exit_2() {
    let missing = run(&["solve", "/nonexistent/path.json", "--algo", "exact"]);
    assert_eq!(code(&missing), 2);
    let bad_algo = run(&["solve", "x.json", "--algo", "nonsense"]);
    assert_eq!(code(&bad_algo), 2);
    let bad_tol = run(&["solve", "x.json", "--algo", "exact", "--tol", "-1.0"]);
    assert_eq!(code(&bad_tol), 2);
}

#[test]
fn eval_rejects_mismatched_objective_and_foreign_edges() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("mm.json");
    run(&[
        "generate", "--kind", "random", "--n", "5", "--m", "7", "--k", "2", "--out",
        path_str(&inst),
    ]);
    let report_path = dir.path().join("sol.json");
    let solved = run(&["solve", path_str(&inst), "--algo", "exact"]);
    fs::write(&report_path, &solved.stdout).unwrap();

    let wrong_objective = run(&[
        "eval", path_str(&inst), "--solution", path_str(&report_path), "--objective", "2stage",
    ]);
    assert_eq!(code(&wrong_objective), 2);

    // Corrupt the solution with an out-of-range edge index.
    let mut report = SolutionReport::from_json(solved.stdout.as_slice()).unwrap();
    report.tree_edges = Some(vec![0, 1, 2, 99]);
    fs::write(&report_path, report.to_canonical_json()).unwrap();
    let foreign = run(&[
        "eval", path_str(&inst), "--solution", path_str(&report_path), "--objective", "minmax",
    ]);
    assert_eq!(code(&foreign), 2);
    assert!(stderr(&foreign).contains("out of range"));

    // A non-tree edge set is rejected by the evaluator itself.
    report.tree_edges = Some(vec![0, 1]);
    fs::write(&report_path, report.to_canonical_json()).unwrap();
    let non_tree = run(&[
        "eval", path_str(&inst), "--solution", path_str(&report_path), "--objective", "minmax",
    ]);
    assert_eq!(code(&non_tree), 2);
}

#[test]
fn two_stage_eval_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("ts.json");
    run(&[
        "generate", "--kind", "random", "--n", "5", "--m", "9", "--k", "3", "--two-stage",
        "--out", path_str(&inst),
    ]);
    let solved = run(&["solve", path_str(&inst), "--algo", "exact-2stage"]);
    assert_eq!(code(&solved), 0, "{}", stderr(&solved));
    let report_path = dir.path().join("sol.json");
    fs::write(&report_path, &solved.stdout).unwrap();
    let eval = run(&[
        "eval", path_str(&inst), "--solution", path_str(&report_path), "--objective", "2stage",
    ]);
    assert_eq!(code(&eval), 0, "{}", stderr(&eval));
    let original = SolutionReport::from_json(solved.stdout.as_slice()).unwrap();
    let evaluated = SolutionReport::from_json(eval.stdout.as_slice()).unwrap();
    assert_eq!(evaluated.value, original.value);
    assert_eq!(evaluated.first_stage_edges, original.first_stage_edges);
    assert_eq!(evaluated.completions, original.completions);
}

#[test]
fn bench_writes_a_sorted_csv_with_oracle_columns() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    run(&[
        "generate", "--kind", "random", "--n", "5", "--m", "8", "--k", "2", "--out",
        path_str(&inst),
    ]);
    let manifest = dir.path().join("manifest.json");
    // Instance paths are relative to the manifest's own directory.
    fs::write(
        &manifest,
        r#"{"runs":[
            {"instance":"inst.json","algo":"lp-round","seeds":[2,1]},
            {"instance":"inst.json","algo":"exact","seeds":[1]}
        ]}"#,
    )
    .unwrap();
    let out = run(&["bench", path_str(&manifest)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let csv = stdout(&out);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "instance,algo,seed,value,lp_bound,opt,ratio,time_ms");
    assert_eq!(lines.len(), 4);
    // Rows sort by (instance, algo, seed): exact first, then lp-round 1, 2.
    assert!(lines[1].contains(",exact,1,"));
    assert!(lines[2].contains(",lp-round,1,"));
    assert!(lines[3].contains(",lp-round,2,"));
    // The exact row's value equals the oracle, so its ratio is exactly 1.
    let exact_cells: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(exact_cells[3], exact_cells[5], "value == opt");
    assert_eq!(exact_cells[6], "1");
    // Without --timings every duration is 0.
    assert!(lines.iter().skip(1).all(|l| l.ends_with(",0")));

    // Rerunning produces identical bytes.
    let again = run(&["bench", path_str(&manifest)]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn bench_with_an_empty_manifest_is_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("empty.json");
    fs::write(&manifest, r#"{"runs":[]}"#).unwrap();
    let out = run(&["bench", path_str(&manifest)]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "instance,algo,seed,value,lp_bound,opt,ratio,time_ms\n"
    );
}

#[test]
fn generate_all_structured_kinds() {
    let dir = tempfile::tempdir().unwrap();

    let cover_spec = dir.path().join("cover.json");
    fs::write(&cover_spec, r#"{"num_elements":2,"sets":[[0],[1],[0,1]]}"#).unwrap();
    let sc = dir.path().join("sc.json");
    let out = run(&[
        "generate", "--kind", "setcover", "--spec", path_str(&cover_spec), "--out", path_str(&sc),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("setcover-m3-n2"));
    let solved = run(&["solve", path_str(&sc), "--algo", "exact-2stage"]);
    let report = SolutionReport::from_json(solved.stdout.as_slice()).unwrap();
    assert_eq!(report.value, 1.0, "the third set covers everything alone");

    let lc_spec = dir.path().join("lc.json");
    fs::write(
        &lc_spec,
        r#"{"num_left":1,"num_right":1,"num_labels":2,
            "edges":[{"left":0,"right":0,"pairs":[[1,1],[2,2]]}]}"#,
    )
    .unwrap();
    let lc = dir.path().join("lc-inst.json");
    let out = run(&[
        "generate", "--kind", "labelcover", "--spec", path_str(&lc_spec), "--out", path_str(&lc),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let cnf = dir.path().join("phi.cnf");
    fs::write(&cnf, "p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n").unwrap();
    let sat = dir.path().join("sat.json");
    let out = run(&[
        "generate", "--kind", "3sat", "--cnf", path_str(&cnf), "--out", path_str(&sat),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let solved = run(&["solve", path_str(&sat), "--algo", "bnb"]);
    let report = SolutionReport::from_json(solved.stdout.as_slice()).unwrap();
    assert_eq!(report.value, 0.0, "satisfiable formulas reach value 0");

    // Missing required flag for the kind.
    let out = run(&[
        "generate", "--kind", "3sat", "--out", path_str(&dir.path().join("x.json")),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("--cnf"));
}
