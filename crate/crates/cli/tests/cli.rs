use std::path::Path;
use std::process::{Command, Output};

fn cotopo(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cotopo"))
        .args(args)
        .current_dir(cwd)
        .env_remove(cotopo_cli::DATA_DIR_ENV)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn construct(dir: &Path, name: &str, params: &[&str], file: &str) {
    let mut args = vec!["construct", name];
    args.extend_from_slice(params);
    args.extend_from_slice(&["-o", file]);
    let o = cotopo(&args, dir);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn check_exit_codes_follow_the_property() {
    let dir = tempfile::tempdir().unwrap();
    construct(dir.path(), "example2", &[], "e2.cplx");
    construct(dir.path(), "standard-sphere", &["2"], "s2.cplx");
    assert_eq!(cotopo(&["check", "complementary", "e2.cplx"], dir.path()).status.code(), Some(0));
    assert_eq!(cotopo(&["check", "complementary", "s2.cplx"], dir.path()).status.code(), Some(1));
    assert_eq!(cotopo(&["check", "pseudomanifold", "s2.cplx"], dir.path()).status.code(), Some(0));
    assert_eq!(cotopo(&["check", "k-neighbourly:3", "s2.cplx"], dir.path()).status.code(), Some(0));
    assert_eq!(cotopo(&["check", "k-neighbourly:4", "s2.cplx"], dir.path()).status.code(), Some(1));
    assert_eq!(cotopo(&["check", "collapsible", "s2.cplx"], dir.path()).status.code(), Some(1));

    let o = cotopo(&["check", "orientable", "s2.cplx"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown property"));
}

#[test]
fn malformed_input_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.cplx"), "0 1 2\n1 2 x\n").unwrap();
    let o = cotopo(&["inspect", "bad.cplx"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let o = cotopo(&["inspect", "missing.cplx"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(cotopo(&["frobnicate"], dir.path()).status.code(), Some(2));
    assert_eq!(cotopo(&["verify-lemma", "L9.9"], dir.path()).status.code(), Some(2));
    let o = cotopo(&["search-complementary", "--n", "12", "--d", "6"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(!stderr(&o).is_empty());
    // The long-tier check is opt-in.
    assert_eq!(cotopo(&["verify-lemma", "CP29"], dir.path()).status.code(), Some(2));
    assert_eq!(cotopo(&["--help"], dir.path()).status.code(), Some(0));
}

#[test]
fn json_output_parses() {
    let dir = tempfile::tempdir().unwrap();
    construct(dir.path(), "rp2-6", &[], "rp2.cplx");
    let o = cotopo(&["--json", "inspect", "rp2.cplx"], dir.path());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["f_vector"], serde_json::json!([6, 15, 10]));
    assert_eq!(v["euler"], 1);
    assert_eq!(v["complementary"], true);
    assert_eq!(v["classification"], "pseudomanifold");

    let o = cotopo(&["homology", "rp2.cplx", "--json"], dir.path());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["groups"][1]["torsion"], serde_json::json!([2]));

    let o = cotopo(&["--json", "verify-lemma", "L4.1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["pass"], true);
    }
}

#[test]
fn data_dir_is_a_fallback_for_inputs() {
    let data = tempfile::tempdir().unwrap();
    let work = tempfile::tempdir().unwrap();
    construct(data.path(), "kuehnel", &["2"], "k2.cplx");
    assert_eq!(cotopo(&["inspect", "k2.cplx"], work.path()).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_cotopo"))
        .args(["check", "k-neighbourly:2", "k2.cplx"])
        .current_dir(work.path())
        .env(cotopo_cli::DATA_DIR_ENV, data.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let flag = data.path().to_str().unwrap();
    assert_eq!(cotopo(&["--data-dir", flag, "inspect", "k2.cplx"], work.path()).status.code(), Some(0));
}

#[test]
fn construct_then_inspect() {
    let dir = tempfile::tempdir().unwrap();
    construct(dir.path(), "kuehnel", &["3"], "k3.cplx");
    let text = std::fs::read_to_string(dir.path().join("k3.cplx")).unwrap();
    assert!(text.starts_with("# generated-by: cotopo construct kuehnel 3"));
    let o = cotopo(&["inspect", "k3.cplx"], dir.path());
    let out = stdout(&o);
    assert!(out.contains("facets: 27"), "{out}");
    assert!(out.contains("euler: 0"), "{out}");
    assert!(out.contains("neighbourly: 2"), "{out}");
}

#[test]
fn collapse_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("strip.cplx"), "0 1 2\n1 2 3\n").unwrap();
    let o = cotopo(&["collapse", "strip.cplx"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let trace: String = stdout(&o).lines().filter(|l| l.contains("->")).map(|l| format!("{l}\n")).collect();
    std::fs::write(dir.path().join("good.trace"), &trace).unwrap();
    assert_eq!(cotopo(&["collapse", "strip.cplx", "--replay", "good.trace"], dir.path()).status.code(), Some(0));

    // Removing a face that is not free.
    std::fs::write(dir.path().join("illegal.trace"), "1 2 -> 1 2 3\n").unwrap();
    assert_eq!(cotopo(&["collapse", "strip.cplx", "--replay", "illegal.trace"], dir.path()).status.code(), Some(1));
    std::fs::write(dir.path().join("garbled.trace"), "1 2 => 1 2 3\n").unwrap();
    assert_eq!(cotopo(&["collapse", "strip.cplx", "--replay", "garbled.trace"], dir.path()).status.code(), Some(2));

    construct(dir.path(), "standard-sphere", &["1"], "s1.cplx");
    assert_eq!(cotopo(&["collapse", "s1.cplx"], dir.path()).status.code(), Some(1));
}

#[test]
fn link_of_a_vertex() {
    let dir = tempfile::tempdir().unwrap();
    construct(dir.path(), "rp2-6", &[], "rp2.cplx");
    let o = cotopo(&["--json", "link", "rp2.cplx", "--simplex", "0"], dir.path());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    // Vertex links of the 6-vertex projective plane are pentagons.
    assert_eq!(v["facets"].as_array().unwrap().len(), 5);
}

#[test]
fn search_writes_a_report_and_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let o = cotopo(&["search-complementary", "--n", "6", "--d", "2", "--out", "rp2-report", "--jobs", "2"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(dir.path().join("rp2-report").is_dir());

    let o = cotopo(
        &["search-complementary", "--n", "9", "--d", "4", "--budget", "50", "--checkpoint", "s.ckpt"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("incomplete"), "{}", stderr(&o));
    let o = cotopo(&["--json", "search-complementary", "--n", "9", "--d", "4", "--resume", "s.ckpt"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["complete"], true);
    assert_eq!(v["classes"].as_array().map(Vec::len).or(v["class_count"].as_u64().map(|c| c as usize)), Some(1));
}

#[test]
fn in_process_runner_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cotopo_cli::run_with(["cotopo", "verify-lemma", "L4.5-count"], &mut out, &mut err);
    assert_eq!(code, 0);
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(String::from_utf8(out).unwrap(), stdout(&cotopo(&["verify-lemma", "L4.5-count"], dir.path())));
}
