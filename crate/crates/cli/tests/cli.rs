//! End-to-end runs of the `stancekit` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn stancekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stancekit")).args(args).output().unwrap()
}

fn manifest(dir: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn synth(dir: &Path, users: &str) {
    let out = stancekit(&["synth", "--users", users, "--seed", "42", "--out", p(dir)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn synth_writes_stream_labels_and_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let data = tmp.path().join("data");
    synth(&data, "60");
    for f in ["tweets.jsonl", "labels.tsv", "planted.json"] {
        assert!(data.join(f).is_file(), "{f}");
    }
    let m = manifest(&data);
    assert_eq!(m["command"], "synth");
    assert_eq!(m["rng_seed"], 42);
    assert_eq!(m["exit_code"], 0);
    assert_eq!(m["outputs"].as_array().unwrap().len(), 3);
    assert_eq!(m["parameters"]["users"], 60);
}

#[test]
fn missing_required_flag_is_a_usage_error() {
    let out = stancekit(&["cv", "--features", "hashtag", "--k", "50"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--corpus"));
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(stancekit(&["--help"]).status.code(), Some(0));
    assert_eq!(stancekit(&["sweep", "--help"]).status.code(), Some(0));
    assert_eq!(stancekit(&["--version"]).status.code(), Some(0));
}

#[test]
fn unknown_feature_kind_is_a_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    let data = tmp.path().join("data");
    synth(&data, "30");
    let out = stancekit(&[
        "cv", "--corpus", p(&data.join("tweets.jsonl")), "--labels", p(&data.join("labels.tsv")),
        "--features", "trigram", "--k", "5", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn seed_free_corpus_fails_with_named_error_and_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("empty.jsonl");
    fs::write(&input, "").unwrap();
    let out_dir = tmp.path().join("disc");
    let out = stancekit(&["discover", "--corpus", p(&input), "--k", "5", "--out", p(&out_dir)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NoSeedOccurrences"));
    let m = manifest(&out_dir);
    assert_eq!(m["exit_code"], 2);
    assert!(m["error"]["message"].as_str().unwrap().starts_with("NoSeedOccurrences"));
    assert_eq!(m["inputs"][0]["sha256"], "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

#[test]
fn malformed_record_is_a_data_error() {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("bad.jsonl");
    fs::write(&input, "{\"id\":\"1\",\"text\":\"#EVET\"}\n").unwrap();
    let out = stancekit(&["ingest", "--corpus", p(&input), "--out", p(&tmp.path().join("o"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("MissingField"));
}

#[test]
fn staged_pipeline_runs_end_to_end() {
    let tmp = tempfile::tempdir().unwrap();
    let data = tmp.path().join("data");
    synth(&data, "90");
    let (tweets, labels) = (data.join("tweets.jsonl"), data.join("labels.tsv"));

    let ingested = tmp.path().join("ingest");
    let out = stancekit(&["ingest", "--corpus", p(&tweets), "--keywords", "evet,hayır", "--out", p(&ingested)]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("kept "));

    let sample = tmp.path().join("sample");
    let out = stancekit(&["sample", "--corpus", p(&tweets), "--n", "20", "--min-retweets", "1", "--seed", "3", "--out", p(&sample)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(fs::read_to_string(sample.join("sample.tsv")).unwrap().lines().count(), 20);

    let disc = tmp.path().join("discover");
    let out = stancekit(&["discover", "--corpus", p(&tweets), "--labels", p(&labels), "--features", "bow", "--k", "15", "--out", p(&disc)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let feats = tmp.path().join("featurize");
    let out = stancekit(&[
        "featurize", "--corpus", p(&tweets), "--labels", p(&labels), "--features", "bow",
        "--space", p(&disc.join("features.tsv")), "--seed", "1", "--out", p(&feats),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(fs::read_to_string(feats.join("matrix.tsv")).unwrap().lines().count(), 91);

    for classifier in ["svm", "tree", "forest"] {
        let model = tmp.path().join(format!("train-{classifier}"));
        let out = stancekit(&[
            "train", "--matrix", p(&feats.join("matrix.tsv")), "--classifier", classifier, "--trees", "5",
            "--seed", "1", "--out", p(&model),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(model.join("model.json").is_file());
    }

    let lda = tmp.path().join("lda");
    let out = stancekit(&[
        "lda-train", "--corpus", p(&tweets), "--labels", p(&labels), "--topics", "3", "--iterations", "10",
        "--k", "5", "--seed", "2", "--out", p(&lda),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(lda.join("topics.json").is_file() && lda.join("features.tsv").is_file());

    let cv = tmp.path().join("cv");
    let out = stancekit(&[
        "cv", "--corpus", p(&tweets), "--labels", p(&labels), "--features", "hashtag", "--k", "10",
        "--folds", "3", "--seed", "4", "--out", p(&cv),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let base = tmp.path().join("baseline");
    let out = stancekit(&["baseline", "--corpus", p(&tweets), "--labels", p(&labels), "--out", p(&base)]);
    assert!(out.status.success());

    let out = stancekit(&[
        "report", "--matrix", &format!("{},{}", p(&cv.join("hashtag_10_svm.cm")), p(&base.join("baseline_0_baseline.cm"))),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("matrix\taccuracy"));
}

#[test]
fn omitted_seed_is_recorded_and_reproducible() {
    let tmp = tempfile::tempdir().unwrap();
    let first = tmp.path().join("a");
    assert!(stancekit(&["synth", "--users", "20", "--out", p(&first)]).status.success());
    let m = manifest(&first);
    let seed = m["rng_seed"].as_u64().expect("seed recorded");
    let second = tmp.path().join("b");
    assert!(stancekit(&["synth", "--users", "20", "--seed", &seed.to_string(), "--out", p(&second)]).status.success());
    let sums = |m: &Value| m["outputs"].as_array().unwrap().iter().map(|o| o["sha256"].clone()).collect::<Vec<_>>();
    assert_eq!(sums(&m), sums(&manifest(&second)));
}

#[test]
fn sweep_manifest_lists_report_and_sidecars() {
    let tmp = tempfile::tempdir().unwrap();
    let data = tmp.path().join("data");
    synth(&data, "60");
    let out_dir = tmp.path().join("sweep");
    let out = stancekit(&[
        "sweep", "--corpus", p(&data.join("tweets.jsonl")), "--labels", p(&data.join("labels.tsv")),
        "--features", "hashtag,baseline", "--k-grid", "5,20", "--classifier", "svm,tree", "--folds", "3",
        "--seed", "5", "--jobs", "2", "--out", p(&out_dir),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = fs::read_to_string(out_dir.join("report.csv")).unwrap();
    let mut lines = report.lines();
    assert_eq!(lines.next(), Some("feature_kind,k,classifier,accuracy"));
    assert_eq!(lines.count(), 5);
    let listed: Vec<String> = manifest(&out_dir)["outputs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| Path::new(o["path"].as_str().unwrap()).file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    for f in ["report.csv", "summary.csv", "baseline_0_baseline.cm", "hashtag_5_svm.cm", "hashtag_20_tree.cm"] {
        assert!(listed.iter().any(|l| l == f), "{f} missing from manifest");
    }
    assert_eq!(listed.len(), 7);
}
