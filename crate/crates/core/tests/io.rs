use std::fs;

use memorybench::io::{
    aggregate, append_result, read_dataset, read_manifest, write_dataset, GroupKey, ModelFamily, Optimizer,
    PosEncoding, ResultRecord, MANIFEST_FILE,
};
use memorybench::{generate, materialize, Error, MemoryKind, MemorySpec, TargetConfig};

fn config(kind: MemoryKind, alpha: f64, t_max: usize, n: usize, seed: u64) -> TargetConfig {
    TargetConfig::new(materialize(MemorySpec::new(kind, alpha, t_max).unwrap()).unwrap(), n, seed)
}

fn bits(values: &[f64]) -> Vec<u64> {
    values.iter().map(|v| v.to_bits()).collect()
}

fn record(memory: MemoryKind, alpha: f64, seed: u64, loss: f64) -> ResultRecord {
    ResultRecord {
        schema_version: "1".into(),
        model: ModelFamily::Transformer,
        memory,
        alpha,
        m: 32,
        n_heads: Some(4),
        pos_encoding: Some(PosEncoding::Rope),
        optimizer: Optimizer::Adamw,
        lr: 1e-3,
        batch_size: 128,
        seed,
        final_train_rmse: loss,
        final_test_rmse: loss * 1.1,
        steps_total: 500,
        threshold: None,
        steps_to_threshold: None,
    }
}

#[test]
fn dataset_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let data = generate(&config(MemoryKind::Exp, 0.5, 128, 10, 3)).unwrap();
    write_dataset(&data, dir.path()).unwrap();
    let back = read_dataset(dir.path()).unwrap();
    assert_eq!(bits(back.x.as_slice()), bits(data.x.as_slice()));
    assert_eq!(bits(back.y.as_slice()), bits(data.y.as_slice()));
    assert_eq!(back.config, data.config);

    let manifest = read_manifest(dir.path()).unwrap();
    assert_eq!(manifest.precision, "float64");
    assert_eq!(manifest.t_max, 128);
    assert_eq!(manifest.memory.mu, data.config.kernel.mu());
}

#[test]
fn manifest_regenerates_identical_arrays() {
    let dir = tempfile::tempdir().unwrap();
    let data = generate(&config(MemoryKind::Airy, 0.8, 64, 5, 11)).unwrap();
    write_dataset(&data, dir.path()).unwrap();
    let manifest = read_manifest(dir.path()).unwrap();
    let again = generate(&manifest.target_config().unwrap()).unwrap();
    assert_eq!(bits(again.x.as_slice()), bits(data.x.as_slice()));
    assert_eq!(bits(again.y.as_slice()), bits(data.y.as_slice()));
    let x_before = fs::read(dir.path().join("x.npy")).unwrap();
    write_dataset(&again, dir.path()).unwrap();
    assert_eq!(fs::read(dir.path().join("x.npy")).unwrap(), x_before);
}

#[test]
fn manifest_json_schema() {
    let dir = tempfile::tempdir().unwrap();
    write_dataset(&generate(&config(MemoryKind::Delta, 0.5, 32, 2, 0)).unwrap(), dir.path()).unwrap();
    let json: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join(MANIFEST_FILE)).unwrap()).unwrap();
    assert_eq!(json["schema_version"], "1");
    assert_eq!(json["memory"]["kind"], "delta");
    assert_eq!(json["memory"]["mu"], 8.0);
    assert_eq!(json["memory"]["alpha_max"], 0.3);
    assert_eq!(json["memory"]["epsilon"], 1e-8);
    assert_eq!(json["T"], 32);
    assert_eq!(json["n_sequences"], 2);
    assert_eq!(json["activations"]["sigma1"], "tanh");
    assert_eq!(json["precision"], "float64");
    assert!(json["created_utc"].as_str().unwrap().ends_with('Z'));
    assert!(json["rng_algorithm"].as_str().unwrap().contains("chacha20"));
}

#[test]
fn inconsistent_manifest_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    write_dataset(&generate(&config(MemoryKind::Poly, 0.5, 32, 3, 0)).unwrap(), dir.path()).unwrap();
    let path = dir.path().join(MANIFEST_FILE);
    let original = fs::read_to_string(&path).unwrap();

    fs::write(&path, original.replace("\"n_sequences\": 3", "\"n_sequences\": 4")).unwrap();
    assert!(matches!(read_dataset(dir.path()), Err(Error::Manifest(_))));

    fs::write(&path, original.replace("float64", "float32")).unwrap();
    assert!(matches!(read_dataset(dir.path()), Err(Error::Manifest(_))));

    fs::write(&path, original.replace("\"mu\": 0.15", "\"mu\": 0.2")).unwrap();
    assert!(matches!(read_dataset(dir.path()), Err(Error::Manifest(_))));

    fs::write(&path, &original).unwrap();
    fs::write(dir.path().join("y.npy"), b"not an npy file").unwrap();
    assert!(matches!(read_dataset(dir.path()), Err(Error::Npy(_))));
}

#[test]
fn split_files_merge_like_one_file() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, merged) = (dir.path().join("a.jsonl"), dir.path().join("b.jsonl"), dir.path().join("all.jsonl"));
    let records = [
        record(MemoryKind::Exp, 0.25, 0, 0.3),
        record(MemoryKind::Exp, 0.25, 1, 0.1),
        record(MemoryKind::Exp, 0.75, 0, 0.4),
        record(MemoryKind::Exp, 0.75, 1, 0.6),
    ];
    for (i, r) in records.iter().enumerate() {
        append_result(r, if i % 2 == 0 { &a } else { &b }).unwrap();
        append_result(r, &merged).unwrap();
    }
    let keys = GroupKey::parse_list("model,memory,alpha,m,n_heads,pos_encoding").unwrap();
    let split = aggregate(&[&a, &b], &keys).unwrap();
    let whole = aggregate(&[&merged], &keys).unwrap();
    assert_eq!(split, whole);
    assert_eq!(whole.len(), 2);
    assert_eq!(whole[0].min_train_rmse, 0.1);
    assert_eq!(whole[1].min_train_rmse, 0.4);
}

#[test]
fn empty_results_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.jsonl");
    fs::write(&path, "").unwrap();
    assert!(matches!(aggregate(&[&path], &GroupKey::DEFAULT), Err(Error::EmptyResults)));
}
