mod common;

use std::path::PathBuf;

use seshadri_cli::doc::{CertificateDocument, WitnessDoc};
use seshadri_cli::recheck::recheck_document;
use seshadri_cli::{run, Outcome, EXIT_INPUT, EXIT_OK, EXIT_UNKNOWN};

fn seshadri(args: &[&str]) -> Outcome {
    run(std::iter::once("seshadri").chain(args.iter().copied()))
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("seshadri-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn documented_examples() {
    let out = seshadri(&["cxc", "certify", "--g", "7", "--class", "13.7 f1 + 2 f2 - d", "--generality", "general"]);
    assert_eq!(out.code, EXIT_OK, "{out:?}");
    assert!(out.stdout.contains("verdict     nef"), "{}", out.stdout);

    let out = seshadri(&["curve", "seshadri", "--pieces", "1:1,1:2", "--mult", "1"]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "1\n"));

    let out = seshadri(&["cxc", "certify", "--g", "7", "--class", "8 f1 + 2 f2 - d"]);
    assert_eq!(out.code, EXIT_UNKNOWN);
    assert!(out.stdout.contains("unknown"));
}

#[test]
fn golden_certificates_recheck() {
    for gold in common::GOLDENS {
        let g = gold.genus.to_string();
        let out = seshadri(&["cxc", "certify", "--g", &g, "--class", gold.class, "--generality", gold.generality, "--format", "json"]);
        let expected_code = if gold.verdict == "unknown" { EXIT_UNKNOWN } else { EXIT_OK };
        assert_eq!(out.code, expected_code, "{} {}", gold.class, out.stderr);
        let doc: CertificateDocument = serde_json::from_str(&out.stdout).unwrap();
        let entry = &doc.certificates[0];
        assert_eq!(entry.verdict, gold.verdict, "{}", gold.class);
        if let Some(level) = gold.reported {
            assert_eq!(entry.generality, level, "{}", gold.class);
        }
        recheck_document(&doc).unwrap_or_else(|e| panic!("{}: {e}", gold.class));
    }
}

#[test]
fn not_nef_witness_is_the_self_intersection() {
    let out = seshadri(&["cxc", "certify", "--g", "7", "--class", "2 f1 + 2 f2 - d", "--format", "json"]);
    let doc: CertificateDocument = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(doc.certificates[0].witness, WitnessDoc::Pairing { pairing: "D.D".into(), value: "-12".into() });
    assert_eq!(doc.schema, "seshadri-cert/1");
    assert!(doc.command.contains("\"2 f1 + 2 f2 - d\""), "{}", doc.command);
}

#[test]
fn several_classes_in_one_document() {
    let out = seshadri(&["cxc", "certify", "--g", "7", "--class", "14 f1 + 2 f2 - d", "--class", "8 f1 + 2 f2 - d", "--format", "json"]);
    assert_eq!(out.code, EXIT_UNKNOWN);
    let doc: CertificateDocument = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(doc.certificates.len(), 2);
    recheck_document(&doc).unwrap();
}

#[test]
fn parse_errors_point_at_the_column() {
    let out = seshadri(&["cxc", "certify", "--g", "7", "--class", "2 f1 + x2 - d"]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("unknown symbol `x2`"), "{}", out.stderr);
    assert!(out.stderr.contains("column 8"), "{}", out.stderr);
    let out = seshadri(&["curve", "hn", "--pieces", "1:1,0:2"]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("rank must be at least 1"));
    let out = seshadri(&["cxc", "certify", "--g", "1", "--class", "f1"]);
    assert_eq!(out.code, EXIT_INPUT);
    let out = seshadri(&["cxc", "certify", "--g", "7", "--class", "f1", "--generality", "special"]);
    assert_eq!(out.code, EXIT_INPUT);
}

#[test]
fn notes_for_normalized_radicands() {
    let out = seshadri(&["cxc", "certify", "--g", "4", "--class", "sqrt(12) f1 + f2"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stderr.contains("sqrt(12) normalized to 2*sqrt(3)"), "{}", out.stderr);
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(seshadri(&["--help"]).code, EXIT_OK);
    assert_eq!(seshadri(&["--version"]).code, EXIT_OK);
    assert_eq!(seshadri(&["cxc", "certify", "--help"]).code, EXIT_OK);
    assert_eq!(seshadri(&[]).code, EXIT_INPUT);
    assert_eq!(seshadri(&["frobnicate"]).code, EXIT_INPUT);
}

#[test]
fn tangent_report() {
    let out = seshadri(&["cxc", "tangent", "--g", "7", "--point", "13,13/6", "--at-b", "2", "--format", "json"]);
    assert_eq!(out.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let t = &v["tangents"][0];
    assert_eq!(t["at_b"]["a"]["exact"], "13 + 2/7*sqrt(6)");
    assert_eq!(t["da_db"]["exact"], "-12/7*sqrt(6)");
    assert_eq!(t["discriminant"], "0");
    let out = seshadri(&["cxc", "tangent", "--g", "7", "--point", "30,5"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("no tangent line"));
}

#[test]
fn precision_controls_decimals() {
    let out = seshadri(&["cxc", "tangent", "--g", "7", "--point", "13,13/6", "--at-b", "2", "--precision", "1e-3"]);
    assert!(out.stdout.contains("13 + 2/7*sqrt(6)  (~ 13.699)"), "{}", out.stdout);
    let out = seshadri(&["jets", "hacon", "--n", "2", "--r", "2", "--precision", "1/1000000"]);
    assert!(out.stdout.contains("(~ 0.204124)"), "{}", out.stdout);
    assert_eq!(seshadri(&["jets", "hacon", "--n", "2", "--r", "2", "--precision", "0"]).code, EXIT_INPUT);
}

#[test]
fn bundle_commands() {
    let out = seshadri(&["curve", "hn", "--pieces", "1:1,1:2,2:-1 twist=1/3", "--format", "json"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["mu_min"]["exact"], "-1/6");
    assert_eq!(v["mu_max"]["exact"], "7/3");
    let out = seshadri(&["bundle", "sym", "--pieces", "1:1,1:2", "--m", "2"]);
    assert!(out.stdout.starts_with("bundle  1:4,1:3,1:2\n"), "{}", out.stdout);
    let out = seshadri(&["bundle", "tensor", "--pieces", "1:1", "--with", "2:1"]);
    assert!(out.stdout.contains("mu_min  3/2"));
    let out = seshadri(&["bundle", "twist", "--pieces", "1:1", "--by", "-1/2"]);
    assert!(out.stdout.starts_with("bundle  1:1 twist=-1/2\n"));
    let out = seshadri(&["bundle", "det", "--pieces", "2:3,1:1"]);
    assert!(out.stdout.starts_with("bundle  1:4\n"));
    let out = seshadri(&["bundle", "dual", "--pieces", "2:3,1:1"]);
    assert!(out.stdout.contains("mu_max  -1"), "{}", out.stdout);
    let out = seshadri(&["curve", "nef", "--pieces", "1:0,1:2"]);
    assert!(out.stdout.contains("nef     yes") && out.stdout.contains("ample   no"), "{}", out.stdout);
}

#[test]
fn json_bundle_output_feeds_back_as_a_file() {
    let out = seshadri(&["bundle", "twist", "--pieces", "1:1,2:3", "--by", "1/2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let path = scratch("twisted.json", &v["document"].to_string());
    let out = seshadri(&["curve", "seshadri", "--file", path.to_str().unwrap()]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "3/2  (~ 1.5)\n"));
    let bad = scratch("bad.json", "{\"pieces\": [}");
    let out = seshadri(&["curve", "hn", "--file", bad.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("line 1 column"), "{}", out.stderr);
    let out = seshadri(&["curve", "hn", "--file", "/nonexistent/bundle.json"]);
    assert_eq!(out.code, EXIT_INPUT);
}

#[test]
fn catalog_and_verdict_documents() {
    let catalog = scratch(
        "catalog.json",
        r#"{"schema":"seshadri-catalog/1","restrictions":[{"curve":"line","bundle":"1:1,1:2"},{"curve":"conic","mult":1,"bundle":{"pieces":[{"rank":1,"degree":2},{"rank":1,"degree":"4"}]}}]}"#,
    );
    let out = seshadri(&["seshadri", "catalog", "--file", catalog.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("upper bound"));
    let out = seshadri(&["seshadri", "catalog", "--file", catalog.to_str().unwrap(), "--assert-complete", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["value"]["exact"], "1");
    assert_eq!(v["exact"], true);

    let est = scratch("estimates.json", r#"{"points":[{"upper":"1","complete":true},{"upper":"inf","lower":"1/3"}]}"#);
    let out = seshadri(&["seshadri", "verdict", "--file", est.to_str().unwrap()]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "Ample\n"));
    let out = seshadri(&["seshadri", "verdict", "--estimate", "0,exact"]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "NotAmple\n"));
    let out = seshadri(&["seshadri", "verdict", "--estimate", "2"]);
    assert_eq!(out.code, EXIT_UNKNOWN);
    assert_eq!(seshadri(&["seshadri", "verdict", "--estimate", "2,maybe"]).code, EXIT_INPUT);
}

#[test]
fn calculus_commands() {
    let out = seshadri(&["seshadri", "toric", "--lines", "2,1,1;2,1,1;2,1,1"]);
    assert_eq!(out.stdout, "1\n");
    assert_eq!(seshadri(&["seshadri", "toric", "--lines", "2,x"]).code, EXIT_INPUT);
    let out = seshadri(&["seshadri", "bounds", "det", "--eps-det", "3", "--r", "2"]);
    assert!(out.stdout.contains("3/2"));
    let out = seshadri(&["seshadri", "bounds", "segre", "--segre", "12", "--n", "2", "--r", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["upper"]["exact"], "2");
    let out = seshadri(&["seshadri", "bounds", "lower", "--factor", "A:1/2", "--sym", "B:2:1/3", "--twist", "C:1/2:1"]);
    assert!(out.stdout.contains("5/3"));
    assert_eq!(seshadri(&["seshadri", "bounds", "lower", "--twist", "C:-1:1"]).code, EXIT_INPUT);
    let out = seshadri(&["seshadri", "known", "--variety", "pn", "--dim", "3"]);
    assert!(out.stdout.starts_with("seshadri  1\n"));
    let out = seshadri(&["seshadri", "catalog", "--restriction", "line:1:1:1,1:2", "--assert-complete"]);
    assert!(out.stdout.starts_with("seshadri  1\n"));
    let out = seshadri(&["seshadri", "catalog", "--restriction", "line:1:1:1,1:z"]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("column 14"), "{}", out.stderr);
}

#[test]
fn jet_commands() {
    let out = seshadri(&["jets", "hacon", "--n", "1", "--r", "1"]);
    assert!(out.stdout.starts_with("M         1/2"), "{}", out.stdout);
    let out = seshadri(&["jets", "line-bundle", "--k", "2", "--n", "3", "--s", "1"]);
    assert!(out.stdout.starts_with("ell       26"), "{}", out.stdout);
    let out = seshadri(&["jets", "popa-schnell", "--k", "1", "--n", "3", "--s", "0", "--r", "1"]);
    assert!(out.stdout.starts_with("threshold  3"), "{}", out.stdout);
    let out = seshadri(&["jets", "popa-schnell", "--k", "1", "--n", "3", "--s", "0", "--r", "1", "--eps", "1"]);
    assert!(out.stdout.starts_with("min m     3"), "{}", out.stdout);
    let out = seshadri(&["jets", "adjoint", "--n", "2", "--r", "1", "--s", "0", "--p", "3"]);
    assert!(out.stdout.contains("1/2"));
    assert_eq!(seshadri(&["jets", "adjoint", "--n", "2", "--r", "1", "--s", "-4", "--p", "3"]).code, EXIT_INPUT);
    assert_eq!(seshadri(&["jets", "line-bundle", "--k", "1", "--n", "4", "--s", "0", "--low-dim-ample"]).code, EXIT_INPUT);
}

#[test]
fn region_and_generators() {
    let out = seshadri(&["cxc", "region", "--g", "7", "--a-range", "13:14", "--b-range", "2:2", "--step", "1/2"]);
    assert_eq!(out.stdout, "a\tb\tverdict\tgenerality\n13\t2\tunknown\tvery-general\n27/2\t2\tunknown\tvery-general\n14\t2\tnef\tarbitrary\n");
    let out = seshadri(&["cxc", "generators", "--g", "7", "--generality", "general", "--samples", "2"]);
    assert!(out.stdout.contains("kernel-bundle\tgeneral\t13 f1 + 13/6 f2 - d"), "{}", out.stdout);
    assert_eq!(seshadri(&["cxc", "region", "--g", "7", "--a-range", "13", "--b-range", "2:2", "--step", "1"]).code, EXIT_INPUT);
    let out = seshadri(&["cxc", "slope", "--g", "2", "--a", "3", "--n", "10", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["rows"][0]["slope"]["exact"], "-390/19");
    assert_eq!(seshadri(&["cxc", "slope", "--g", "2", "--a", "1", "--n", "10"]).code, EXIT_INPUT);
}
