use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn mvd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvd"))
        .args(args)
        .env_remove("MVD_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Small synthetic corpus: 3 classes x 6 clips of 0.4 s at 16 kHz.
fn corpus(dir: &TempDir) -> PathBuf {
    let data = dir.path().join("data");
    let out = mvd(&[
        "synth",
        "--out",
        s(&data),
        "--classes",
        "3",
        "--clips-per-class",
        "6",
        "--duration",
        "0.4",
        "--rate",
        "16000",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    data.join("manifest.csv")
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let out = mvd(&["frobnicate"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("Usage"));
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = mvd(&["analyze", "--results", "x.csv", "--bogus"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("--bogus"));
}

#[test]
fn bad_flag_value_is_usage_error() {
    let out = mvd(&["sweep", "--manifest", "m.csv", "--phase", "sideways"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn help_exits_zero() {
    let out = mvd(&["--help"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    for sub in [
        "synth", "degrade", "features", "classify", "sweep", "analyze", "plan", "report", "pipeline",
    ] {
        assert!(text.contains(sub), "help lacks {sub}");
    }
}

#[test]
fn rate_sweep_writes_results() {
    let dir = TempDir::new().unwrap();
    let manifest = corpus(&dir);
    let results = dir.path().join("r.csv");
    let out = mvd(&[
        "sweep",
        "--manifest",
        s(&manifest),
        "--phase",
        "rate",
        "--out",
        s(&results),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = fs::read_to_string(&results).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "sample_rate_hz,bit_depth,clip_length_s,mean_accuracy,fold_accuracies,bytes_per_clip,relative_cost,wall_time_s"
    );
    let rates: Vec<&str> = lines.map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(rates, vec!["16000", "8000", "4000"]);
}

#[test]
fn single_class_manifest_is_data_error() {
    let dir = TempDir::new().unwrap();
    let manifest = corpus(&dir);
    let text = fs::read_to_string(&manifest).unwrap();
    let one: String = text
        .lines()
        .filter(|l| l.starts_with("path") || l.ends_with(",class_0"))
        .map(|l| format!("{l}\n"))
        .collect();
    fs::write(&manifest, one).unwrap();
    let out = mvd(&[
        "sweep",
        "--manifest",
        s(&manifest),
        "--phase",
        "rate",
        "--out",
        s(&dir.path().join("r.csv")),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("invalid dataset"), "{}", stderr(&out));
}

#[test]
fn missing_file_is_data_error() {
    let out = mvd(&["analyze", "--results", "/nonexistent/results.csv"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn pipeline_is_byte_reproducible() {
    let dir = TempDir::new().unwrap();
    let manifest = corpus(&dir);
    let plan = dir.path().join("plan.json");
    fs::write(&plan, r#"{"sample_rates_hz":[16000,8000,4000],"bit_depths":[16,8,4]}"#).unwrap();
    let run = |name: &str, workers: &str| {
        let out_dir = dir.path().join(name);
        let out = mvd(&[
            "pipeline",
            "--manifest",
            s(&manifest),
            "--phase",
            "combined",
            "--plan",
            s(&plan),
            "--out-dir",
            s(&out_dir),
            "--omit-timing",
            "--workers",
            workers,
        ]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        out_dir
    };
    let a = run("a", "1");
    let b = run("b", "3");
    let mut names: Vec<String> = fs::read_dir(&a)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(
        names,
        vec![
            "accuracy_rate_depth.svg",
            "accuracy_vs_bytes.svg",
            "accuracy_vs_depth.svg",
            "accuracy_vs_rate.svg",
            "analysis.json",
            "results.csv"
        ]
    );
    for n in &names {
        assert_eq!(
            fs::read(a.join(n)).unwrap(),
            fs::read(b.join(n)).unwrap(),
            "{n} differs"
        );
    }
    let results = fs::read_to_string(a.join("results.csv")).unwrap();
    assert_eq!(results.lines().count(), 10);
    let svg = fs::read_to_string(a.join("accuracy_rate_depth.svg")).unwrap();
    assert_eq!(svg.matches("class=\"cell\"").count(), 9);
}

#[test]
fn cache_dir_from_environment() {
    let dir = TempDir::new().unwrap();
    let manifest = corpus(&dir);
    let cache = dir.path().join("cache");
    let results = dir.path().join("r.csv");
    let args = [
        "sweep",
        "--manifest",
        s(&manifest),
        "--phase",
        "depth",
        "--out",
        s(&results),
        "--omit-timing",
    ];
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_mvd"))
            .args(args)
            .env("MVD_CACHE_DIR", &cache)
            .output()
            .unwrap();
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        fs::read(&results).unwrap()
    };
    let cold = run();
    assert_eq!(fs::read_dir(&cache).unwrap().count(), 5);
    let warm = run();
    assert_eq!(cold, warm);
}

#[test]
fn analyze_and_report_from_results() {
    let dir = TempDir::new().unwrap();
    let manifest = corpus(&dir);
    let results = dir.path().join("r.csv");
    assert_eq!(
        code(&mvd(&[
            "sweep",
            "--manifest",
            s(&manifest),
            "--phase",
            "rate",
            "--out",
            s(&results)
        ])),
        0
    );
    let out = mvd(&["analyze", "--results", s(&results), "--theta", "0.9", "--axis", "rate"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["curves"].as_array().unwrap().len(), 1);
    assert_eq!(json["curves"][0]["axis"], "rate");
    assert_eq!(json["mvd"]["theta"], 0.9);
    let rep = dir.path().join("rep");
    assert_eq!(
        code(&mvd(&["report", "--results", s(&results), "--out-dir", s(&rep)])),
        0
    );
    let svg = fs::read_to_string(rep.join("accuracy_vs_rate.svg")).unwrap();
    assert_eq!(svg.matches("class=\"marker\"").count(), 3);
}

#[test]
fn features_then_classify() {
    let dir = TempDir::new().unwrap();
    let manifest = corpus(&dir);
    let feats = dir.path().join("f.csv");
    let out = mvd(&["features", "--manifest", s(&manifest), "--out", s(&feats)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = fs::read_to_string(&feats).unwrap();
    assert_eq!(text.lines().count(), 19);
    assert_eq!(text.lines().next().unwrap().split(',').count(), 81);
    for model in ["svm", "knn", "logistic"] {
        let out = mvd(&[
            "classify",
            "--features",
            s(&feats),
            "--model",
            model,
            "--seed",
            "3",
            "--folds",
            "3",
        ]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(json["per_fold_accuracy"].as_array().unwrap().len(), 3);
        let acc = json["mean_accuracy"].as_f64().unwrap();
        assert!((0.0..=1.0).contains(&acc));
    }
    let out = mvd(&["classify", "--features", s(&feats), "--folds", "7"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn degrade_one_file() {
    let dir = TempDir::new().unwrap();
    let manifest = corpus(&dir);
    let input = manifest.with_file_name("class_0_000.wav");
    let output = dir.path().join("low.wav");
    let out = mvd(&[
        "degrade",
        "--in",
        s(&input),
        "--out",
        s(&output),
        "--rate",
        "8000",
        "--bits",
        "12",
        "--len",
        "0.25",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let bytes = fs::read(&output).unwrap();
    assert_eq!(u32::from_le_bytes(bytes[24..28].try_into().unwrap()), 8000);
    assert_eq!(u16::from_le_bytes(bytes[34..36].try_into().unwrap()), 16);
    assert_eq!(bytes.len(), 44 + 2000 * 2);
    let up = mvd(&["degrade", "--in", s(&input), "--out", s(&output), "--rate", "48000"]);
    assert_eq!(code(&up), 2);
}

#[test]
fn fleet_plan() {
    let dir = TempDir::new().unwrap();
    let catalog = dir.path().join("catalog.json");
    fs::write(
        &catalog,
        r#"[{"name":"A","unit_cost":1000,"accuracy":0.95},{"name":"B","unit_cost":10,"accuracy":0.88}]"#,
    )
    .unwrap();
    let out = mvd(&[
        "plan",
        "--budget",
        "1000",
        "--years",
        "10",
        "--catalog",
        s(&catalog),
        "--min-acc",
        "0.85",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["sensor"], "B");
    assert_eq!(json["units"], 100);
    let out = mvd(&["plan", "--budget", "-5", "--catalog", s(&catalog)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("invalid budget"));
}
