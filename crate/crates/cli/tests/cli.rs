use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn ginicor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ginicor"))
        .args(args)
        .current_dir(golden_dir())
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = ginicor(args);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", stderr(&o));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(golden_dir().join(name)).unwrap()
}

#[test]
fn golden_oracle() {
    let o = ginicor(&["oracle", "exp", "--p", "0.5", "--theta", "1", "--beta", "4"]);
    assert_eq!(stdout(&o), golden("oracle_exp.json"));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["result"]["rho_g"].as_f64().unwrap() - 0.152_542_372_881).abs() < 1e-12);
}

#[test]
fn golden_gcor_with_projection() {
    let o = ginicor(&[
        "gcor",
        "--data",
        "toy.csv",
        "--label",
        "y",
        "--features",
        "x1,x3",
        "--kind",
        "U",
    ]);
    assert_eq!(stdout(&o), golden("gcor_toy.json"));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["inputs"]["d"], 2);
    assert_eq!(v["inputs"]["features"], serde_json::json!(["x1", "x3"]));
}

#[test]
fn golden_permutation_test_repeats() {
    let args = ["test", "--data", "toy.csv", "--label", "y", "--m", "20", "--seed", "7"];
    let a = ginicor(&args);
    let b = ginicor(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a), golden("test_toy.json"));
}

#[test]
fn iris_reference_values() {
    let v = json(&["gcor", "--dataset", "iris", "--label", "species", "--kind", "U"]);
    assert!((v["result"]["estimate"].as_f64().unwrap() - 0.624).abs() < 0.01);
    let d = json(&["dcor", "--dataset", "iris"]);
    assert!((d["result"]["dcov_xy"].as_f64().unwrap() - 0.529).abs() < 0.01);
    assert_eq!(d["result"]["flavor"], "unbiased-u-centered");
}

#[test]
fn generated_seed_is_echoed() {
    let o = ginicor(&["test", "--data", "toy.csv", "--label", "y", "--m", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let seed = v["inputs"]["seed"].as_u64().unwrap();
    assert!(stderr(&o).contains(&format!("seed: {seed}")));
    let again = ginicor(&[
        "test",
        "--data",
        "toy.csv",
        "--label",
        "y",
        "--m",
        "10",
        "--seed",
        &seed.to_string(),
    ]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn csv_and_json_agree() {
    let v = json(&["ci", "--dataset", "iris", "--features", "Petal.Width", "--kind", "U"]);
    let o = ginicor(&[
        "ci",
        "--dataset",
        "iris",
        "--features",
        "Petal.Width",
        "--kind",
        "U",
        "--format",
        "csv",
    ]);
    let text = stdout(&o);
    let mut lines = text.lines();
    let header: Value = serde_json::from_str(lines.next().unwrap().strip_prefix("# ").unwrap()).unwrap();
    assert_eq!(header["inputs"], v["inputs"]);
    let cols: Vec<&str> = lines.next().unwrap().split(',').collect();
    let vals: Vec<&str> = lines.next().unwrap().split(',').collect();
    for (c, x) in cols.iter().zip(&vals) {
        assert_eq!(*x, v["result"][*c].to_string(), "column {c}");
    }
    assert!((v["result"]["estimate"].as_f64().unwrap() - 0.753).abs() < 0.01);
}

#[test]
fn thread_count_does_not_change_output() {
    let base = [
        "test",
        "--dataset",
        "iris",
        "--m",
        "30",
        "--seed",
        "3",
        "--statistic",
        "dcor-unbiased",
    ];
    let one = ginicor(&[&base[..], &["--threads", "1"]].concat());
    let four = ginicor(&[&base[..], &["--threads", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn screen_ranks_and_times_features() {
    let v = json(&["screen", "--dataset", "iris", "--top", "2"]);
    let rows = v["result"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["feature"], "Petal.Length");
    assert!(rows[0]["seconds"].is_number());
    let untimed = json(&["screen", "--dataset", "iris", "--alpha", "0.5"]);
    assert!(untimed["result"][0].get("seconds").is_none());
}

#[test]
fn r2_and_power() {
    let r = json(&["r2", "--dataset", "iris", "--features", "Petal.Length"]);
    assert!((r["result"]["r2"].as_f64().unwrap() - 0.941).abs() < 0.001);
    let t = json(&[
        "test",
        "--dataset",
        "iris",
        "--m",
        "20",
        "--seed",
        "1",
        "--power-at",
        "0.5",
        "--statistic",
        "gcor-U",
    ]);
    let p = t["result"]["power"]["power"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&p));
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let o = ginicor(&[
        "oracle",
        "normal-scale",
        "--p",
        "0.5",
        "--r",
        "3",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert!((v["result"]["rho_g"].as_f64().unwrap() - 0.0557).abs() < 5e-5);
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.csv", "x,y\n1,a\nabc,b\n");
    let o = ginicor(&["gcor", "--data", &bad, "--label", "y"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("row 2, column x"), "{}", stderr(&o));

    let one_class = write(dir.path(), "one.csv", "x,y\n1,a\n2,a\n3,a\n");
    assert_eq!(
        ginicor(&["gcor", "--data", &one_class, "--label", "y"]).status.code(),
        Some(3)
    );

    let empty = write(dir.path(), "empty.csv", "x,y\n");
    assert_eq!(
        ginicor(&["gcor", "--data", &empty, "--label", "y"]).status.code(),
        Some(2)
    );

    assert_eq!(
        ginicor(&["gcor", "--data", "missing.csv", "--label", "y"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        ginicor(&["gcor", "--data", "toy.csv", "--label", "z"]).status.code(),
        Some(5)
    );
    assert_eq!(
        ginicor(&["gcor", "--data", "toy.csv", "--label", "y", "--alpha", "2.5"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(ginicor(&["gcor", "--data", "toy.csv"]).status.code(), Some(1));
    assert_eq!(
        ginicor(&["gcor", "--data", "toy.csv", "--label", "y", "--kind", "W"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(ginicor(&["nonsense"]).status.code(), Some(1));
    let help = ginicor(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("oracle"));
}

#[test]
fn simulation_configs() {
    let dir = tempfile::tempdir().unwrap();
    let power = write(
        dir.path(),
        "power.toml",
        "seed = 5\nn = 40\nreps = 6\npermutations = 20\n\n[[designs]]\nname = \"shift\"\ndesign = { example = \"cauchy\", delta = 1.0 }\n",
    );
    let a = ginicor(&["sim", "power", "--config", &power, "--format", "csv"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let text = stdout(&a);
    assert!(text.starts_with("# {"));
    assert!(text.lines().nth(1).unwrap().starts_with("design,mixture,statistic"));
    assert_eq!(
        ginicor(&["sim", "power", "--config", &power, "--format", "csv"]).stdout,
        a.stdout
    );

    let cov = write(
        dir.path(),
        "cov.toml",
        "n = 60\nreps = 4\nlevel = 0.9\n[design]\nexample = \"normal-location\"\np = 0.5\na = 3.0\n",
    );
    let v = json(&["sim", "coverage", "--config", &cov, "--seed", "9"]);
    assert_eq!(v["inputs"]["seed"], 9);
    assert_eq!(v["result"]["rows"][0]["statistic"], "rho_g");

    let timing = write(
        dir.path(),
        "t.toml",
        "d_values = [1]\nn_values = [50]\nreps = 1\nseed = 1\n",
    );
    let t = json(&["sim", "timing", "--config", &timing]);
    assert_eq!(t["result"]["rows"][0]["fast_path"], "yes");

    let broken = write(dir.path(), "broken.toml", "n = 60\nreps = 4\nbogus = 1\n");
    assert_eq!(
        ginicor(&["sim", "coverage", "--config", &broken]).status.code(),
        Some(1)
    );
    let no_oracle = write(
        dir.path(),
        "c.toml",
        "n = 60\nreps = 4\n[design]\nexample = \"cauchy\"\ndelta = 1.0\n",
    );
    assert_eq!(
        ginicor(&["sim", "coverage", "--config", &no_oracle]).status.code(),
        Some(1)
    );
}

#[test]
fn shipped_configs_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    for name in ["coverage.toml", "power.toml", "cauchy.toml"] {
        let text = std::fs::read_to_string(dir.join(name)).unwrap();
        if name == "coverage.toml" {
            toml::from_str::<ginicor_cli::config::CoverageConfig>(&text)
                .unwrap()
                .design
                .spec()
                .unwrap();
        } else {
            let cfg: ginicor_cli::config::PowerConfig = toml::from_str(&text).unwrap();
            cfg.designs().unwrap();
            cfg.statistics().unwrap();
        }
    }
    let text = std::fs::read_to_string(dir.join("timing.toml")).unwrap();
    toml::from_str::<ginicor_cli::config::TimingConfig>(&text).unwrap();
}
