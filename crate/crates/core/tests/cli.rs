use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use memorybench::io::{append_result, read_manifest, ModelFamily, Optimizer, ResultRecord};
use memorybench::MemoryKind;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_memorybench")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn csv_rows(file: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(file)
        .unwrap()
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

fn effective_rank(out: &Output) -> usize {
    let text = String::from_utf8_lossy(&out.stdout);
    text.trim().strip_prefix("effective_rank=").unwrap().parse().unwrap()
}

fn bound_total(args: &[&str]) -> f64 {
    let out = run(args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    text.lines().find_map(|l| l.strip_prefix("total=")).unwrap().parse().unwrap()
}

#[test]
fn gen_delta_records_offset() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("d");
    let out = run(&["gen", "--memory", "delta", "--alpha", "0.5", "--T", "1024", "--n", "4", "--seed", "0", "--out", path(&out_dir)]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("mu=2.56"));
    assert_eq!(read_manifest(&out_dir).unwrap().memory.mu, Some(256.0));
}

#[test]
fn gen_rejects_alpha_below_minimum() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["gen", "--memory", "poly", "--alpha", "0", "--out", path(dir.path())]);
    assert_eq!(code(&out), 2);
    let out = run(&["gen", "--memory", "poly", "--alpha", "0.5"]);
    assert_eq!(code(&out), 2);
    let out = run(&["gen", "--memory", "gauss", "--alpha", "0.5", "--out", path(dir.path())]);
    assert_eq!(code(&out), 2);
}

#[test]
fn gen_exp_with_test_split() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["gen", "--memory", "exp", "--alpha", "0.5", "--T", "128", "--n", "3", "--out", path(dir.path()), "--test"]);
    assert_eq!(code(&out), 0);
    let train = read_manifest(dir.path()).unwrap();
    let test = read_manifest(&dir.path().join("test")).unwrap();
    assert_eq!(test.seed, train.seed + 1);
    let area: f64 = memorybench::scaling::poly_area(0.15, 128);
    assert!(train.memory.residual.unwrap() <= 1e-10 * area);
    let printed: f64 = String::from_utf8_lossy(&out.stdout).trim().strip_prefix("mu=").unwrap().parse().unwrap();
    assert_eq!(Some(printed), train.memory.mu);
}

#[test]
fn gen_alpha_max_auto() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["gen", "--memory", "poly", "--alpha", "1", "--T", "128", "--n", "1", "--alpha-max", "auto", "--out", path(dir.path())]);
    assert_eq!(code(&out), 0);
    let manifest = read_manifest(dir.path()).unwrap();
    assert!(manifest.memory.alpha_max < 0.3);
    let out = run(&["gen", "--memory", "poly", "--alpha", "1", "--alpha-max", "lots", "--out", path(dir.path())]);
    assert_eq!(code(&out), 2);
}

#[test]
fn analyze_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.csv");

    for alpha in ["0", "0.3", "1"] {
        let out = run(&["analyze", "--memory", "delta", "--alpha", alpha, "--T", "64", "--out", path(&file)]);
        assert_eq!(code(&out), 0);
        let rows = csv_rows(&file);
        assert_eq!(rows.len(), 66);
        assert_eq!(rows[0][1].parse::<f64>().unwrap(), 1.0);
        assert!(rows[1..].iter().all(|r| r[1].parse::<f64>().unwrap() == 0.0));
    }

    for memory in ["exp", "poly"] {
        let out = run(&["analyze", "--memory", memory, "--alpha", "0.5", "--T", "64", "--what", "kernel", "--out", path(&file)]);
        assert_eq!(code(&out), 0);
        let rows = csv_rows(&file);
        assert_eq!(rows.len(), 65);
        assert_eq!(rows[0], ["0", "1.0000000000000000e0"]);
    }

    let out = run(&["analyze", "--memory", "airy", "--alpha", "0.5", "--T", "64", "--out", path(&file)]);
    assert_eq!(code(&out), 0);
    let rows = csv_rows(&file);
    assert_eq!(rows.last().unwrap(), &["65", "0.0000000000000000e0"]);
    assert!(fs::read_to_string(&file).unwrap().starts_with("s,complexity\n"));
}

#[test]
fn spectrum_of_shifted_identity() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s.csv");

    let out = run(&["spectrum", "--memory", "delta", "--alpha", "0", "--L", "8", "--out", path(&file)]);
    assert_eq!(code(&out), 0);
    assert_eq!(effective_rank(&out), 8);
    assert!(csv_rows(&file).iter().all(|r| r[1].parse::<f64>().unwrap() == 1.0));

    // T defaults to L = 8, so alpha = 0.5 gives offset 2
    let out = run(&["spectrum", "--memory", "delta", "--alpha", "0.5", "--L", "8", "--out", path(&file)]);
    assert_eq!(effective_rank(&out), 6);
    let sigma: Vec<f64> = csv_rows(&file).iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(sigma, [1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0]);
    assert!(fs::read_to_string(&file).unwrap().contains("# effective_rank,6\n"));

    let out = run(&["spectrum", "--memory", "delta", "--alpha", "0.5", "--L", "513", "--out", path(&file)]);
    assert_eq!(code(&out), 2);
}

#[test]
fn spectrum_rank_grows_with_alpha() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s.csv");
    let ranks: Vec<usize> = ["0.25", "0.75"]
        .iter()
        .map(|alpha| effective_rank(&run(&["spectrum", "--memory", "exp", "--alpha", alpha, "--L", "128", "--out", path(&file)])))
        .collect();
    assert!(ranks[1] >= ranks[0], "{ranks:?}");
}

#[test]
fn bound_outputs() {
    // offset floor(0.5 * 64 / 2) = 16 < 2^5
    let total = bound_total(&["bound", "--memory", "delta", "--alpha", "0.5", "--T", "64", "--l", "2", "--K", "5", "--channels", "2,2,2,2,2"]);
    assert_eq!(total, 0.0);

    let out = run(&["bound", "--memory", "exp", "--alpha", "0.5", "--T", "64", "--l", "2", "--K", "2", "--channels", "2,2"]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("M=2\n"));

    let exp = |channels: &str| {
        bound_total(&["bound", "--memory", "exp", "--alpha", "0.5", "--T", "1024", "--l", "2", "--K", "10", "--channels", channels])
    };
    let small = exp("1,1,1,1,1,1,1,1,1,1");
    let medium = exp("2,2,2,2,2,2,2,2,2,2");
    let large = exp("3,3,3,3,3,3,3,3,3,3");
    assert!(small > 0.0 && medium > 0.0 && large > 0.0);
    assert!(small > medium && medium > large, "{small} {medium} {large}");

    let out = run(&["bound", "--memory", "exp", "--alpha", "0.5", "--l", "2", "--K", "3", "--channels", "2,2"]);
    assert_eq!(code(&out), 2);
    let out = run(&["bound", "--memory", "exp", "--alpha", "0.5", "--l", "2", "--K", "21", "--channels", &["1"; 21].join(",")]);
    assert_eq!(code(&out), 2);
}

#[test]
fn aggregate_command() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, csv) = (dir.path().join("a.jsonl"), dir.path().join("b.jsonl"), dir.path().join("agg.csv"));
    let record = |alpha: f64, seed: u64, loss: f64| ResultRecord {
        schema_version: "1".into(),
        model: ModelFamily::Lstm,
        memory: MemoryKind::Delta,
        alpha,
        m: 16,
        n_heads: None,
        pos_encoding: None,
        optimizer: Optimizer::Adam,
        lr: 1e-3,
        batch_size: 64,
        seed,
        final_train_rmse: loss,
        final_test_rmse: loss,
        steps_total: 100,
        threshold: Some(0.1),
        steps_to_threshold: Some(10 + seed),
    };
    append_result(&record(0.9, 0, 0.5), &a).unwrap();
    append_result(&record(0.1, 1, 0.01), &a).unwrap();
    append_result(&record(0.9, 1, 0.2), &b).unwrap();
    append_result(&record(0.1, 0, 0.02), &b).unwrap();

    let out = run(&["aggregate", "--results", path(&a), path(&b), "--out", path(&csv)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(
        text,
        "model,memory,alpha,m,min_train_rmse,min_steps_to_threshold,seed_count\n\
         lstm,delta,1.0000000000000001e-1,16,1.0000000000000000e-2,10,2\n\
         lstm,delta,9.0000000000000002e-1,16,2.0000000000000001e-1,10,2\n"
    );

    let swapped = dir.path().join("swapped.csv");
    run(&["aggregate", "--results", path(&b), path(&a), "--out", path(&swapped)]);
    assert_eq!(fs::read_to_string(&swapped).unwrap(), text);

    let empty = dir.path().join("empty.jsonl");
    fs::write(&empty, "").unwrap();
    let out = run(&["aggregate", "--results", path(&empty), "--out", path(&csv)]);
    assert_eq!(code(&out), 1);
    assert!(!out.stderr.is_empty());

    let out = run(&["aggregate", "--results", path(&a), "--group", "model,colour", "--out", path(&csv)]);
    assert_eq!(code(&out), 2);
}
