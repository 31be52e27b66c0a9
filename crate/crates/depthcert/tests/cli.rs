use std::path::Path;
use std::process::{Command, Output};

fn depthcert(out_dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_depthcert"))
        .env("DEPTHCERT_OUT_DIR", out_dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn usage_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&depthcert(dir.path(), &[])), 1);
    assert_eq!(code(&depthcert(dir.path(), &["frobnicate"])), 1);
    assert_eq!(code(&depthcert(dir.path(), &["boundary", "--n", "x", "--k", "4"])), 1);
    assert_eq!(code(&depthcert(dir.path(), &["compare", "--n", "100", "--grid", "1:2"])), 1);
    assert_eq!(code(&depthcert(dir.path(), &["--help"])), 0);
}

#[test]
fn boundary_goes_to_the_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let o = depthcert(dir.path(), &["boundary", "--n", "8000", "--k", "28,4", "--grid", "1e-3:1e3:5"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(dir.path().join("boundary_n8000_k28.csv")).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(dir.path().join("boundary_n8000_k4.csv").exists());
    // odd k has no parametric boundary: a data error
    assert_eq!(code(&depthcert(dir.path(), &["boundary", "--n", "10", "--k", "3"])), 2);
}

#[test]
fn simulate_then_certify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = depthcert(d, &["simulate", "--kind", "dicke", "--n", "1000", "--shots", "400", "--noise", "3,0.1", "--seed", "5"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let shots = d.join("shots_dicke_n1000.csv");
    assert_eq!(stdout(&o).trim(), shots.display().to_string());

    let cfg = d.join("cfg.toml");
    std::fs::write(&cfg, "n_particles = 1000\nsigma_det = 3.0\ntrend_coeff = 0.1\nseed = 5\n").unwrap();
    let o = depthcert(d, &["depth", "--config", cfg.to_str().unwrap(), "--shots", shots.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report = depthcert::read_report(d.join("report.json")).unwrap();
    assert_eq!(report.input.shots_z, 200);
    assert_eq!(report.provenance.seed, 5);
    assert!(stdout(&o).contains("depth (2 sigma) >="));

    // same inputs, same bytes
    let first = std::fs::read(d.join("report.json")).unwrap();
    let again = d.join("again.json");
    let o = depthcert(d, &["depth", "--config", cfg.to_str().unwrap(), "--shots", shots.to_str().unwrap(), "--output", again.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read(again).unwrap(), first);
}

#[test]
fn data_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let shots = d.join("s.csv");
    std::fs::write(&shots, "shot_id,basis,n_plus,n_minus\n1,z,4005,3995\n3,q,1,1\n").unwrap();
    let cfg = d.join("c.json");
    std::fs::write(&cfg, r#"{"n_particles": 8000}"#).unwrap();
    let o = depthcert(d, &["depth", "--config", cfg.to_str().unwrap(), "--shots", shots.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    std::fs::write(&cfg, r#"{"n_particles": 8000, "sigma": 1}"#).unwrap();
    let o = depthcert(d, &["depth", "--config", cfg.to_str().unwrap(), "--shots", shots.to_str().unwrap()]);
    assert_eq!(code(&o), 2);

    // too few shots in a basis
    std::fs::write(&shots, "shot_id,basis,n_plus,n_minus\n1,z,5,5\n2,z,5,5\n3,z,6,4\n4,z,4,6\n5,alpha,10,0\n").unwrap();
    std::fs::write(&cfg, r#"{"n_particles": 10}"#).unwrap();
    let o = depthcert(d, &["depth", "--config", cfg.to_str().unwrap(), "--shots", shots.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("alpha-basis"));
}

#[test]
fn smve_and_metrics() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let input = d.join("x.txt");
    std::fs::write(&input, "# arcsine-ish\n1\n-1\n0.5\n-0.5\n0\n").unwrap();
    let o = depthcert(d, &["smve", "--input", input.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 5);
    assert_eq!(v["second_moment"], 0.625);

    let moments = d.join("m.json");
    std::fs::write(
        &moments,
        r#"{"n_particles": 8000, "mean_x": 4000.0, "mean_y": 0.0, "mean_z": 0.0, "second_perp": 16002000.0, "second_z": 2000.0}"#,
    )
    .unwrap();
    let o = depthcert(d, &["metrics", "--moments", moments.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["xi2_gen"], 1.0);
    assert_eq!(v["number_squeezing_db"], 0.0);

    std::fs::write(&moments, r#"{"n_particles": 8000, "mean_x": 0.0, "mean_y": 0.0, "mean_z": 0.0, "second_perp": 16004000.0, "second_z": 0.0}"#).unwrap();
    let o = depthcert(d, &["metrics", "--moments", moments.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["xi2"], serde_json::Value::Null);
    assert_eq!(v["number_squeezing_db"], "-inf");
}

#[test]
fn compare_writes_both_depths() {
    let dir = tempfile::tempdir().unwrap();
    let o = depthcert(dir.path(), &["compare", "--n", "100", "--p", "0", "--grid", "0.1:10:4"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(dir.path().join("compare_n100_p0.csv")).unwrap();
    assert!(text.starts_with("lambda,x_norm,var_z,depth_new,depth_sm\n"));
    assert_eq!(text.lines().count(), 5);
}
