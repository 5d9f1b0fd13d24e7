use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use streamlens::io::Table;

const SUBCOMMANDS: [&str; 10] = [
    "acf", "ccf", "spectrum", "gabor", "cwt", "xwt", "deltal", "hurst", "mf", "synth",
];

fn streamlens(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_streamlens"))
        .current_dir(dir)
        .env_remove("STREAMLENS_THREADS")
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = streamlens(dir, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn synth(dir: &Path, kind: &str, extra: &[&str]) {
    let mut args = vec!["synth", "--kind", kind, "--length", "2048", "--seed", "5"];
    args.extend_from_slice(extra);
    ok(dir, &args);
}

/// Every file in `dir`, sorted by name, with its contents.
fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_file())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect();
    files.sort();
    files
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth(d, "fbm", &["--hurst", "0.6"]);
    synth(d, "white_noise", &[]);
    let runs: Vec<Vec<&str>> = vec![
        vec!["acf", "fbm_h0.6.csv"],
        vec!["ccf", "fbm_h0.6.csv", "white_noise.csv"],
        vec!["spectrum", "fbm_h0.6.csv"],
        vec!["gabor", "fbm_h0.6.csv", "--n-frequencies", "16", "--location-stride", "16"],
        vec!["cwt", "fbm_h0.6.csv", "--n-scales", "16", "--location-stride", "8"],
        vec!["xwt", "fbm_h0.6.csv", "white_noise.csv", "--n-scales", "8", "--location-stride", "8"],
        vec!["deltal", "fbm_h0.6.csv", "--no-diagram"],
        vec!["hurst", "fbm_h0.6.csv", "--rolling", "--stride", "64"],
        vec!["mf", "fbm_h0.6.csv", "--method", "oscillation"],
        vec!["mf", "fbm_h0.6.csv", "--method", "mfdfa"],
        vec!["mf", "fbm_h0.6.csv", "--method", "wtmm"],
    ];
    for (i, env_threads) in ["1", "4"].iter().enumerate() {
        let out = d.join(format!("run{i}"));
        for args in &runs {
            let mut args = args.clone();
            let o = out.to_str().unwrap();
            args.extend_from_slice(&["-o", o]);
            let status = Command::new(env!("CARGO_BIN_EXE_streamlens"))
                .current_dir(d)
                .env("STREAMLENS_THREADS", env_threads)
                .args(&args)
                .output()
                .unwrap()
                .status;
            assert!(status.success(), "{args:?}");
        }
    }
    let a = snapshot(&d.join("run0"));
    let b = snapshot(&d.join("run1"));
    assert!(a.len() > 25, "only {} files", a.len());
    assert_eq!(a.len(), b.len());
    for ((na, ca), (nb, cb)) in a.iter().zip(&b) {
        assert_eq!(na, nb);
        assert!(ca == cb, "{na} differs between runs");
    }
}

#[test]
fn synth_writes_to_a_named_file() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let stdout = ok(d, &["synth", "--kind", "fbm", "--hurst", "0.7", "--length", "4096", "--seed", "1", "-o", "out.csv"]);
    assert_eq!(stdout.lines().count(), 2);
    let t = Table::read(fs::File::open(d.join("out.csv")).unwrap()).unwrap();
    assert_eq!(t.rows.len(), 4096);
    assert!(d.join("out.svg").is_file());
    ok(d, &["synth", "--kind", "brownian", "--length", "64", "-o", "nested/walk.csv", "--no-plot"]);
    assert!(d.join("nested/walk.csv").is_file());
}

#[test]
fn deltal_writes_the_diagram() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["synth", "--kind", "white_noise", "--length", "128", "--no-plot"]);
    ok(d, &["deltal", "white_noise.csv"]);
    let f = Table::read(fs::File::open(d.join("white_noise_deltal.csv")).unwrap()).unwrap();
    assert_eq!(f.headers, ["s", "F"]);
    assert_eq!(f.rows.len(), 31);
    let e = Table::read(fs::File::open(d.join("white_noise_deltal_e.csv")).unwrap()).unwrap();
    assert_eq!(e.headers, ["s", "location", "E", "count"]);
    assert_eq!(e.rows.len(), 31 * 128);
    assert!(d.join("white_noise_deltal_e.svg").is_file());
}

#[test]
fn scale_grid_and_metric_flags() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth(d, "brownian", &["--no-plot"]);
    synth(d, "white_noise", &["--no-plot"]);
    ok(d, &["cwt", "brownian.csv", "--scales", "4:64:5", "--location-stride", "2048", "--no-plot"]);
    let t = Table::read(fs::File::open(d.join("brownian_cwt.csv")).unwrap()).unwrap();
    let scales: Vec<f64> = t.rows.iter().map(|r| r[0]).collect();
    assert_eq!(scales.len(), 5);
    for (got, want) in scales.iter().zip([4.0, 8.0, 16.0, 32.0, 64.0]) {
        assert!((got - want).abs() < 1e-9, "{got}");
    }
    for metric in ["crwt", "diffmod"] {
        ok(d, &["xwt", "brownian.csv", "white_noise.csv", "--metric", metric, "--n-scales", "4", "--no-plot"]);
        assert!(d.join(format!("brownian_white_noise_xwt_{metric}.csv")).is_file());
    }
    // Phase needs a complex wavelet.
    let phase = streamlens(d, &["xwt", "brownian.csv", "white_noise.csv", "--metric", "phase"]);
    assert_eq!(phase.status.code(), Some(1));
    assert_eq!(streamlens(d, &["cwt", "brownian.csv", "--scales", "8:4:3"]).status.code(), Some(2));
}

#[test]
fn synth_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["synth", "--kind", "brownian", "--seed", "1", "--prefix", "a", "--no-plot"]);
    ok(d, &["synth", "--kind", "brownian", "--seed", "1", "--prefix", "b", "--no-plot"]);
    ok(d, &["synth", "--kind", "brownian", "--seed", "2", "--prefix", "c", "--no-plot"]);
    let read = |n: &str| fs::read(d.join(n)).unwrap();
    assert_eq!(read("a.csv"), read("b.csv"));
    assert_ne!(read("a.csv"), read("c.csv"));
    assert!(!d.join("a.svg").exists());
}

#[test]
fn csv_output_round_trips_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth(d, "white_noise", &[]);
    ok(d, &["acf", "white_noise.csv", "--no-plot"]);
    ok(d, &["spectrum", "white_noise.csv", "--no-plot"]);
    for name in ["white_noise.csv", "white_noise_acf.csv", "white_noise_spectrum.csv"] {
        let text = fs::read_to_string(d.join(name)).unwrap();
        let table = Table::read(text.as_bytes()).unwrap();
        assert!(!table.rows.is_empty());
        let again = table.to_csv_string();
        assert_eq!(text, again, "{name}");
        let reread = Table::read(again.as_bytes()).unwrap();
        assert_eq!(table.rows, reread.rows);
    }
}

#[test]
fn json_format_writes_columns_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth(d, "white_noise", &[]);
    ok(d, &["acf", "white_noise.csv", "--format", "json", "--max-lag", "10", "--no-plot"]);
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.join("white_noise_acf.json")).unwrap()).unwrap();
    assert_eq!(v["columns"], serde_json::json!(["lag", "value"]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 11);
    assert_eq!(v["rows"][0][1].as_f64().unwrap(), 1.0);
}

#[test]
fn hurst_recovers_fbm_exponent() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["synth", "--kind", "fbm", "--hurst", "0.7", "--length", "4096", "--seed", "11"]);
    let stdout = ok(d, &["hurst", "fbm_h0.7.csv"]);
    assert!(stdout.contains("fbm_h0.7_hurst.json"));
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.join("fbm_h0.7_hurst.json")).unwrap()).unwrap();
    let h = v["H"].as_f64().unwrap();
    assert!((0.6..=0.8).contains(&h), "H = {h}");
    assert_eq!(v["series_len"], 4096);
    let svg = fs::read_to_string(d.join("fbm_h0.7_rs.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("<!-- streamlens"));
}

#[test]
fn mf_on_cascade_writes_tau_spectrum_and_skeleton() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["synth", "--kind", "binomial-cascade", "--length", "4096", "--p", "0.7"]);
    ok(d, &["mf", "cascade_p0.7.csv", "--signal", "increments", "--no-plot"]);
    let tau = Table::read(fs::File::open(d.join("cascade_p0.7_mf_oscillation_tau.csv")).unwrap()).unwrap();
    assert_eq!(tau.headers, ["q", "tau", "r_squared"]);
    for row in &tau.rows {
        let exact = -(0.7f64.powf(row[0]) + 0.3f64.powf(row[0])).log2();
        assert!((row[1] - exact).abs() < 1e-9, "q = {}", row[0]);
    }
    ok(d, &["mf", "cascade_p0.7.csv", "--method", "wtmm", "--signal", "increments"]);
    for suffix in ["tau.csv", "spectrum.csv", "skeleton.csv", "skeleton.svg", "spectrum.svg"] {
        assert!(d.join(format!("cascade_p0.7_mf_wtmm_{suffix}")).is_file(), "{suffix}");
    }
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth(d, "white_noise", &[]);
    fs::write(d.join("acf.conf"), "# acf settings\nmax_lag = 5\nno-plot = true\nprefix = conf\n").unwrap();
    ok(d, &["acf", "white_noise.csv", "--config", "acf.conf"]);
    let t = Table::read(fs::File::open(d.join("conf_acf.csv")).unwrap()).unwrap();
    assert_eq!(t.rows.len(), 6);
    assert!(!d.join("conf_acf.svg").exists());

    ok(d, &["acf", "white_noise.csv", "--config", "acf.conf", "--max-lag", "3"]);
    let t = Table::read(fs::File::open(d.join("conf_acf.csv")).unwrap()).unwrap();
    assert_eq!(t.rows.len(), 4);

    fs::write(d.join("bad.conf"), "max_lag 5\n").unwrap();
    assert_eq!(streamlens(d, &["acf", "white_noise.csv", "--config", "bad.conf"]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth(d, "white_noise", &[]);

    let missing = streamlens(d, &["acf", "absent.csv"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("absent.csv"));

    assert_eq!(streamlens(d, &["acf", "white_noise.csv", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(streamlens(d, &["frobnicate"]).status.code(), Some(2));
    assert_eq!(streamlens(d, &[]).status.code(), Some(2));
    assert_eq!(streamlens(d, &["synth", "--kind", "fbm", "--length", "1000"]).status.code(), Some(2));

    fs::write(d.join("text.csv"), "t,v\n0,1\n1,oops\n").unwrap();
    let bad = streamlens(d, &["acf", "text.csv"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("oops"));

    // A series too short for the oscillation levels is a data error.
    fs::write(d.join("short.csv"), "v\n1\n2\n4\n3\n5\n").unwrap();
    assert_eq!(streamlens(d, &["mf", "short.csv"]).status.code(), Some(1));

    let threads = Command::new(env!("CARGO_BIN_EXE_streamlens"))
        .current_dir(d)
        .env("STREAMLENS_THREADS", "many")
        .args(["acf", "white_noise.csv"])
        .output()
        .unwrap();
    assert_eq!(threads.status.code(), Some(2));
}

#[test]
fn every_subcommand_has_help() {
    let dir = tempfile::tempdir().unwrap();
    let top = ok(dir.path(), &["--help"]);
    for sub in SUBCOMMANDS {
        assert!(top.contains(sub), "{sub} missing from top-level help");
        let help = ok(dir.path(), &[sub, "--help"]);
        assert!(help.contains("Usage: streamlens"), "{sub}");
        assert!(help.contains("--out-dir"), "{sub}");
    }
}
