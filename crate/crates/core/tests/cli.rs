use std::path::Path;
use std::process::{Command, Output};

fn bouncer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bouncer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn col(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

#[test]
fn spectrum_first_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let o = bouncer(&["spectrum", "--nmax", "1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let (h, rows) = read_csv(&out);
    assert_eq!(h, ["n", "x_n", "x_n_asymptotic", "E_n", "rel_err"]);
    assert_eq!(rows.len(), 1);
    let x: f64 = rows[0][1].parse().unwrap();
    let seed: f64 = rows[0][2].parse().unwrap();
    let rel: f64 = rows[0][4].parse().unwrap();
    assert!((x - 2.33811).abs() < 1e-5);
    assert!((seed - 2.32025).abs() < 1e-5);
    assert!((100.0 * rel - 0.76372).abs() < 1e-3);
}

#[test]
fn spectrum_rows_ascend() {
    let o = bouncer(&["spectrum", "--nmax", "10"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let xs: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(xs.len(), 10);
    assert!(xs.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn usage_errors_exit_with_two() {
    let o = bouncer(&["spectrum", "--nmax", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = bouncer(&["quantum", "--x0", "20", "--nmax", "40", "--tend", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sigma"));
    let o = bouncer(&["classical", "--x0", "1", "--tend", "1", "--bogus", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = bouncer(&["moments", "--x0", "1", "--tend", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("alpha"));
}

#[test]
fn numerical_failure_exits_with_three() {
    let o = bouncer(&["quantum", "--x0", "25", "--sigma", "2", "--nmax", "5", "--tend", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("n_max"));
}

#[test]
fn compare_keeps_going_when_quantum_fails() {
    let o = bouncer(&[
        "compare", "--x0", "25", "--sigma", "2", "--alpha", "1", "--nmax", "5", "--tend", "1", "--dt", "0.5",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 4);
    for row in &rows[1..] {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells[2], "");
        assert!(!cells[4].is_empty());
    }
}

#[test]
fn degenerate_end_time_gives_one_row() {
    let o = bouncer(&["compare", "--x0", "3", "--alpha", "1", "--tend", "0", "--no-quantum"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    let cells: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(cells[1].parse::<f64>().unwrap(), 3.0);
    assert_eq!(cells[2], "");
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "x0 = 2.0\ntend = 1.0\ndt = 0.25\nnterms = 50\n").unwrap();
    let o = bouncer(&["classical", "--config", cfg.to_str().unwrap(), "--x0", "4.0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[1].starts_with("0.0000000000000000e0,4.0000000000000000e0,"));

    std::fs::write(&cfg, "x0 = 2.0\nunknown = 1\n").unwrap();
    let o = bouncer(&["classical", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_reproducible() {
    let args = [
        "moments", "--preset", "neutron", "--x0", "1e-4", "--alpha", "0.4277", "--tend", "0.01",
    ];
    let a = bouncer(&args);
    let b = bouncer(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn moments_table_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.csv");
    let o = bouncer(&[
        "moments",
        "--x0",
        "5",
        "--alpha",
        "1",
        "--tend",
        "10",
        "--dt",
        "0.1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let (h, rows) = read_csv(&out);
    assert_eq!(rows.len(), 101);
    let u = col(&h, "uncertainty");
    let g20 = col(&h, "G20");
    for r in &rows {
        let product: f64 = r[u].parse().unwrap();
        assert!((product / 0.25 - 1.0).abs() < 1e-12);
        assert_eq!(r[g20], rows[0][g20]);
    }
}

#[test]
fn quantum_table_tracks_the_packet() {
    let o = bouncer(&[
        "quantum", "--x0", "15", "--sigma", "2", "--nmax", "60", "--tend", "2", "--dt", "1",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let first: Vec<f64> = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(|c| c.parse().unwrap())
        .collect();
    assert!((first[1] - 15.0).abs() < 0.15);
    assert!((first[3] - 1.0).abs() < 1e-3);
}
