use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use matchlab::schema::{CertificateJson, CoveringJson, GroupSpec, MetricJson, RamseyBundle};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matchlab"))
        .args(args)
        .current_dir(dir)
        .env("SOURCE_DATE_EPOCH", "0")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, body: &str) {
    std::fs::write(dir.join(name), body).unwrap();
}

fn certificate(dir: &Path) -> CertificateJson {
    let out = run(
        dir,
        &["folner", "search", "--group", "zd1", "--coloring", "parity", "--theta", "9/10", "--max-radius", "12", "--out", "c.json"],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    serde_json::from_slice(&std::fs::read(dir.join("c.json")).unwrap()).unwrap()
}

fn store(dir: &Path, name: &str, cert: &CertificateJson) {
    std::fs::write(dir.join(name), serde_json::to_vec_pretty(cert).unwrap()).unwrap();
}

#[test]
fn emitted_certificate_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let cert = certificate(dir.path());
    assert!(cert.pass);
    assert_eq!(cert.f.len(), 11);
    assert_eq!(cert.min_ratio, "10/11");
    assert_eq!(cert.manifest.timestamp, 0);
    assert_eq!(cert.manifest.outcome, 0);
    let out = run(dir.path(), &["verify", "c.json"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let out = run(dir.path(), &["folner", "check", "c.json"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn tampered_witness_names_the_pair() {
    let dir = tempfile::tempdir().unwrap();
    let mut cert = certificate(dir.path());
    let pair = &mut cert.pairs[1].witness[0];
    pair.1 = (pair.1 + 1) % 11;
    store(dir.path(), "bad.json", &cert);
    let out = run(dir.path(), &["verify", "bad.json"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("pair 1"), "{}", stderr(&out));
}

#[test]
fn overstated_mu_is_reported_field_by_field() {
    let dir = tempfile::tempdir().unwrap();
    let mut cert = certificate(dir.path());
    cert.pairs[0].mu += 1;
    cert.min_ratio = "1".into();
    store(dir.path(), "bad.json", &cert);
    let out = run(dir.path(), &["verify", "bad.json"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("pair 0: stored mu 11, recomputed 10"), "{text}");
    assert!(text.contains("min_ratio"), "{text}");
}

#[test]
fn shrunken_window_is_an_escape() {
    let dir = tempfile::tempdir().unwrap();
    let mut cert = certificate(dir.path());
    // F = -5..=5, so the translate F + 1 reaches 6
    cert.cover.ground.retain(|x| x != "6");
    for block in &mut cert.cover.blocks {
        block.retain(|x| x != "6");
    }
    store(dir.path(), "bad.json", &cert);
    let out = run(dir.path(), &["--json", "verify", "bad.json"]);
    assert_eq!(code(&out), 2);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["error"], "window_escape");
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "junk.json", r#"{"format": "matchlab-certificate", "version": 1}"#);
    assert_eq!(code(&run(dir.path(), &["verify", "junk.json"])), 2);
    assert_eq!(code(&run(dir.path(), &["verify", "missing.json"])), 2);
    assert_eq!(code(&run(dir.path(), &["folner", "search", "--group", "zd1", "--theta", "1/2"])), 2);
    assert_eq!(code(&run(dir.path(), &["folner", "search", "--group", "nope", "--coloring", "parity", "--theta", "1/2"])), 2);
    assert_eq!(code(&run(dir.path(), &["frobnicate"])), 2);
    assert_eq!(code(&run(dir.path(), &["--help"])), 0);
}

#[test]
fn exhausted_search_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["--json", "folner", "search", "--group", "free2", "--e", "a", "--coloring", "first-letter", "--theta", "9/10", "--max-radius", "3"],
    );
    assert_eq!(code(&out), 1);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["outcome"], "exhausted");
}

#[test]
fn symmetric_certificate_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["folner", "search", "--group", "zd2", "--coloring", "random:1:4", "--theta", "1/2", "--mode", "sym", "--max-radius", "5", "--out", "s.json"],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let bytes = std::fs::read(dir.path().join("s.json")).unwrap();
    let cert: CertificateJson = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(cert.mode, "sym");
    let again = serde_json::to_string(&cert).unwrap();
    assert_eq!(serde_json::from_str::<CertificateJson>(&again).unwrap(), cert);
    assert_eq!(code(&run(dir.path(), &["verify", "s.json"])), 0);
}

#[test]
fn mu_and_cover_commands() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "u.json", r#"{"ground":["a","b","c","d"],"blocks":[["a","b"],["b","c"],["d"]]}"#);
    write(dir.path(), "e.json", r#"["a","d"]"#);
    write(dir.path(), "f.json", r#"["c","d"]"#);
    let out = run(dir.path(), &["--json", "mu", "--cover", "u.json", "--left", "e.json", "--right", "f.json"]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["mu"], 1);
    let out = run(dir.path(), &["mu", "--cover", "u.json", "--left", "a;b", "--right", "c;b"]);
    assert!(stdout(&out).starts_with("mu = 2"));

    let out = run(dir.path(), &["--json", "cover", "star", "--cover", "u.json", "--out", "star.json"]);
    assert_eq!(code(&out), 0);
    let star: CoveringJson = serde_json::from_slice(&std::fs::read(dir.path().join("star.json")).unwrap()).unwrap();
    assert!(star.blocks.contains(&vec!["a".to_string(), "b".into(), "c".into()]));
    assert_eq!(code(&run(dir.path(), &["cover", "is-partition", "--cover", "u.json"])), 1);
    assert_eq!(code(&run(dir.path(), &["cover", "star-refines", "--cover", "star.json", "--other", "u.json"])), 0);
}

#[test]
fn match_reports_hall_deficiency() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "g.json", r#"{"left":3,"right":2,"edges":[[0,0],[1,0],[2,0],[2,1]]}"#);
    let out = run(dir.path(), &["--json", "match", "--graph", "g.json"]);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["matching"], 2);
    assert_eq!(report["deficiency"], 1);
}

#[test]
fn ramsey_bundle_verifies_and_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    write(p, "a.json", r#"{"points":["p"],"dist":[["0"]]}"#);
    write(p, "b.json", r#"{"points":["p","q"],"dist":[["0","1"],["1","0"]]}"#);
    write(p, "c.json", r#"{"points":["0","1","2","3"],"dist":[["0","1","2","3"],["1","0","1","2"],["2","1","0","1"],["3","2","1","0"]]}"#);
    let out = run(p, &["ramsey", "check", "--a", "a.json", "--b", "b.json", "--c", "c.json", "--eps", "1/2", "--out", "r.json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(code(&run(p, &["verify", "r.json"])), 0);
    let mut bundle: RamseyBundle = serde_json::from_slice(&std::fs::read(p.join("r.json")).unwrap()).unwrap();
    assert_eq!(bundle.witnesses.len(), 16);
    assert_eq!(bundle.manifest.input_digests.len(), 3);
    let metric: MetricJson = serde_json::from_slice(&std::fs::read(p.join("c.json")).unwrap()).unwrap();
    assert_eq!(MetricJson::from_metric(&metric.build().unwrap()), metric);
    bundle.witnesses[3].phi[0] ^= 1;
    std::fs::write(p.join("bad.json"), serde_json::to_vec(&bundle).unwrap()).unwrap();
    let out = run(p, &["verify", "bad.json"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("witness 3"), "{}", stdout(&out));
}

#[test]
fn sweep_writes_exact_and_lossy_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["sweep", "--group", "zd2", "--theta-grid", "0.5:0.6:0.05", "--max-radius", "3", "--out", "s.csv"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "theta,theta_decimal_lossy,max_radius,outcome,f_size,best_ratio,best_ratio_decimal_lossy"
    );
    assert_eq!(lines.count(), 3 * 4);
    assert!(text.contains("11/20,0.55,"));
}

#[test]
fn net_and_mono() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--json", "folner", "net", "--group", "cyclic6", "--u", "0;1"]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["v"], serde_json::json!(["0", "1"]));
    assert_eq!(report["f"].as_array().unwrap().len(), 3);
    assert_eq!(report["witnesses"].as_array().unwrap().len(), 6);

    let out = run(dir.path(), &["folner", "mono", "--group", "zd1", "--e", "0;2", "--coloring", "parity"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let out = run(dir.path(), &["folner", "mono", "--group", "zd1", "--e", "0;1", "--coloring", "parity"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn means_commands() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    write(p, "a.json", r#"{"weights":{"a":"1/2","b":"1/2"}}"#);
    write(p, "b.json", r#"{"weights":{"A":"1"}}"#);
    let out = run(p, &["--json", "means", "convolve", "--group", "free2", "--a", "a.json", "--b", "b.json"]);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["weights"], serde_json::json!({"e": "1/2", "bA": "1/2"}));

    write(p, "alpha.json", r#"{"weights":{"x":"1/3","y":"2/3"}}"#);
    let out = run(p, &["--json", "means", "rationalize", "--alpha", "alpha.json", "--theta", "1/100"]);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["n"], 400);

    write(p, "f.json", r#"{"weights":{"0":"0","1":"1","2":"0","3":"1"}}"#);
    write(p, "nu.json", r#"{"weights":{"0":"1/2","1":"1/2"}}"#);
    let out = run(p, &["--json", "means", "push", "--group", "cyclic4", "--f", "f.json", "--nu", "nu.json", "--window", "0;1"]);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["values"], serde_json::json!({"0": "1/2", "1": "1/2"}));
}

#[test]
fn group_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let spec = GroupSpec::shorthand("sym3").unwrap();
    std::fs::write(dir.path().join("s3.json"), serde_json::to_vec(&spec).unwrap()).unwrap();
    let model = spec.build().unwrap();
    assert_eq!(GroupSpec::from_model(&model), spec);
    let out = run(dir.path(), &["folner", "net", "--group", "s3.json", "--u", "012;102"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}
