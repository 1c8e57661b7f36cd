use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use trimat::ensembles::{sample_matrix, EnsembleParams, EntryLaw, RngState};
use trimat_cli::table::read_csv;

fn trimat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trimat"))
        .args(args)
        .env_remove("TRIMAT_SEED")
        .output()
        .expect("binary runs")
}

fn trimat_env(args: &[&str], seed: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trimat"))
        .args(args)
        .env("TRIMAT_SEED", seed)
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn sample_rows_and_trace_identity() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let o = trimat(&["sample", "--kind", "wigner", "--n", "16", "--reps", "2", "--seed", "7", "-o", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let t = read_csv(&out).unwrap();
    assert_eq!(t.columns, ["replica", "rank", "value"]);
    assert_eq!(t.rows.len(), 32);
    let params = EnsembleParams::wigner(16, EntryLaw::StandardComplexGaussian);
    for r in 0..2u64 {
        let x = sample_matrix(&params, &mut RngState::new(7, 0).replica(r).generator()).unwrap();
        let sum: f64 = t.rows.iter().filter(|row| row[0] == Some(r as f64)).map(|row| row[2].unwrap()).sum();
        let expected = x.frobenius_norm_sqr() / 16.0;
        assert!((sum - expected).abs() <= 1e-12 * expected, "replica {r}: {sum} vs {expected}");
    }
}

#[test]
fn sample_is_byte_identical_under_a_fixed_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = trimat(&["sample", "--kind", "theta-b", "--theta", "2", "--n", "12", "--reps", "3", "--seed", "11", "-o", path_str(p)]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn seed_flag_beats_environment() {
    let args = ["sample", "--n", "5"];
    let env_only = trimat_env(&args, "99");
    let flag = trimat_env(&["sample", "--n", "5", "--seed", "99"], "1");
    let other = trimat_env(&args, "1");
    assert_eq!(env_only.stdout, flag.stdout);
    assert_ne!(env_only.stdout, other.stdout);
    let default_a = trimat(&args);
    let default_b = trimat(&args);
    assert_eq!(default_a.stdout, default_b.stdout);
}

#[test]
fn invalid_configuration_exits_with_one() {
    let o = trimat(&["sample", "--n", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("n must be"), "{}", stderr(&o));
    let o = trimat(&["density", "--law", "ftheta", "--theta", "0.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("theta > 1"));
    assert_eq!(trimat(&["sample", "--n", "notanumber"]).status.code(), Some(1));
    assert_eq!(trimat(&["kernel", "--n", "9"]).status.code(), Some(1));
    assert_eq!(trimat(&["trees", "--k", "8"]).status.code(), Some(1));
    assert_eq!(trimat(&["bari", "--lambda", "1,2"]).status.code(), Some(1));
    assert_eq!(trimat(&["verify", "--only", "nonexistent"]).status.code(), Some(1));
}

#[test]
fn unwritable_output_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing").join("x.csv");
    let o = trimat(&["sample", "--n", "3", "-o", path_str(&bad)]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn f0_density_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f0.csv");
    let o = trimat(&["density", "--law", "f0", "--lo", "0", "--hi", "2.718281828459045", "--points", "1000", "-o", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let t = read_csv(&out).unwrap();
    assert_eq!(t.rows.len(), 1000);
    let cdf = t.column("cdf").unwrap();
    assert_eq!(cdf[0], Some(0.0));
    assert!((cdf[999].unwrap() - 1.0).abs() < 1e-12);
    // Grid mass with the panels next to the singular origin integrated exactly.
    let err = stderr(&o);
    let mass: f64 = err.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!((mass - 1.0).abs() < 1e-3, "{err}");
}

#[test]
fn marchenko_pastur_vanishes_outside_support() {
    let o = trimat(&["density", "--law", "mp", "--c", "1", "--lo", "4.5", "--hi", "5", "--points", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let t = trimat_cli::table::parse_csv(&text).unwrap();
    assert_eq!(t.rows[0][1], Some(0.0));
    assert_eq!(t.rows[0][2], None);
}

#[test]
fn ftheta_vanishes_beyond_its_edge() {
    let o = trimat(&["density", "--law", "ftheta", "--theta", "2", "--lo", "5.19616", "--hi", "8", "--points", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let t = trimat_cli::table::parse_csv(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert!(t.column("density").unwrap().iter().all(|d| *d == Some(0.0)));
    assert!(t.column("cdf").unwrap().iter().all(|d| *d == Some(1.0)));
}

#[test]
fn trees_kernel_bari_and_moments() {
    let o = trimat(&["trees", "--k", "4", "--n", "5"]);
    let t = trimat_cli::table::parse_csv(&String::from_utf8(o.stdout).unwrap()).unwrap();
    for row in &t.rows {
        assert_eq!(row[1], row[2]);
        assert_eq!(row[4], row[5]);
    }
    let o = trimat(&["kernel", "--n", "3", "--points", "20", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 20);
    let o = trimat(&["bari", "--lambda", "2,1", "--theta", "0", "--reps", "20000"]);
    let t = trimat_cli::table::parse_csv(&String::from_utf8(o.stdout).unwrap()).unwrap();
    let (closed, mean, se) = (t.rows[0][2].unwrap(), t.rows[0][3].unwrap(), t.rows[0][4].unwrap());
    assert!((closed - 2f64.ln()).abs() < 1e-15);
    assert!((mean - closed).abs() < 4.0 * se);
    let o = trimat(&["moments", "--n", "32", "--reps", "4", "--k", "3"]);
    let t = trimat_cli::table::parse_csv(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!(t.rows.len(), 3);
    assert_eq!(t.rows[1][2], Some(2.0 / 3.0));
}

#[test]
fn verify_filters_and_reproduces() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = trimat(&["verify", "--only", "kernel,bari,13", "--seed", "5", "-o", path_str(p)]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    let ra: serde_json::Value = serde_json::from_str(&fs::read_to_string(&a).unwrap()).unwrap();
    let rb: serde_json::Value = serde_json::from_str(&fs::read_to_string(&b).unwrap()).unwrap();
    let ids: Vec<_> = ra["criteria"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["8", "12", "13"]);
    let observed = |r: &serde_json::Value| -> Vec<f64> {
        r["criteria"]
            .as_array()
            .unwrap()
            .iter()
            .flat_map(|c| c["checks"].as_array().unwrap().iter().map(|k| k["observed"].as_f64().unwrap()))
            .collect()
    };
    assert_eq!(observed(&ra), observed(&rb));
    let only_kernel = trimat(&["verify", "--only", "kernel"]);
    let r: serde_json::Value = serde_json::from_slice(&only_kernel.stdout).unwrap();
    assert!(r["criteria"].as_array().unwrap().iter().all(|c| c["group"] == "kernel"));
}

#[test]
fn verify_lists_every_criterion() {
    let o = trimat(&["verify", "--list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let primary = text.lines().filter(|l| !l.contains("supplementary")).count();
    assert!(primary >= 14, "{text}");
}

#[test]
fn failing_criterion_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = trimat(&["verify", "--only", "9", "-o", path_str(&out)]);
    assert_eq!(o.status.code(), Some(3));
    let r: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["pass"], false);
    for c in r["criteria"][0]["checks"].as_array().unwrap() {
        for key in ["expected", "observed", "tolerance", "pass"] {
            assert!(c.get(key).is_some());
        }
    }
}
