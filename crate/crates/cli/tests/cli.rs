use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_qdiscord");

fn qdiscord(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

struct Csv {
    provenance: String,
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Csv {
    fn parse(bytes: &[u8]) -> Self {
        let text = std::str::from_utf8(bytes).unwrap();
        let provenance = text.lines().next().unwrap().to_owned();
        let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(bytes);
        let header = r.headers().unwrap().iter().map(String::from).collect();
        let rows = r.records().map(|rec| rec.unwrap().iter().map(|s| s.parse::<f64>().unwrap()).collect()).collect();
        Csv { provenance, header, rows }
    }

    fn col(&self, name: &str) -> usize {
        self.header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"))
    }
}

#[test]
fn presets_regenerate_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    for preset in ["fig1", "fig2", "fig3"] {
        let o = qdiscord(&["--out-dir", dir.path().to_str().unwrap(), "sweep", "--preset", preset]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let produced = fs::read(dir.path().join(format!("{preset}.csv"))).unwrap();
        let expected = fs::read(golden(&format!("{preset}.csv"))).unwrap();
        assert!(produced == expected, "{preset} differs from the golden file");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = qdiscord(&["sweep", "--from", "0", "--to", "1", "--step", "0.01", "--verify"]);
    let b = qdiscord(&["sweep", "--from", "0", "--to", "1", "--step", "0.01", "--verify"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let o = qdiscord(&[
            "koashi-check",
            "--dims",
            "3",
            "2",
            "3",
            "--trials",
            "6",
            "--seed",
            "7",
            "--csv",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        fs::read(path).unwrap()
    };
    assert_eq!(run("a.csv"), run("b.csv"));
}

#[test]
fn golden_values_satisfy_orderings() {
    let interior =
        |csv: &Csv| -> Vec<Vec<f64>> { csv.rows.iter().filter(|r| r[0] > 0.5 && r[0] < 1.0).cloned().collect() };
    let fig1 = Csv::parse(&fs::read(golden("fig1.csv")).unwrap());
    let (rho, rho_p, chi, chi_p) =
        (fig1.col("D_rho"), fig1.col("D_rho_prime"), fig1.col("D_chi"), fig1.col("D_chi_prime"));
    let rows = interior(&fig1);
    assert_eq!(rows.len(), 99);
    for r in &rows {
        assert!(r[rho_p] < r[rho] && r[chi] > r[rho] && r[chi_p] < r[rho], "F={}", r[0]);
    }
    let last = fig1.rows.last().unwrap();
    assert_eq!((last[0], last[rho], last[chi]), (1.0, 1.0, 1.0));

    for (file, q) in [("fig2.csv", "I"), ("fig3.csv", "C")] {
        let csv = Csv::parse(&fs::read(golden(file)).unwrap());
        let c = |s: &str| csv.col(&format!("{q}_{s}"));
        for r in interior(&csv) {
            assert!(r[c("chi")] > r[c("rho")], "{file} F={}", r[0]);
            assert!(r[c("chi")] <= r[c("rho_prime")] + 1e-9, "{file} F={}", r[0]);
            assert!(r[c("chi_prime")] <= r[c("rho_prime")] + 1e-9, "{file} F={}", r[0]);
        }
    }
}

#[test]
fn csv_layout() {
    let csv = Csv::parse(&fs::read(golden("fig2.csv")).unwrap());
    assert!(csv.provenance.starts_with("# qdiscord "));
    assert!(csv.provenance.contains("seed="));
    assert_eq!(csv.header, ["F", "I_rho", "I_rho_prime", "I_chi", "I_chi_prime"]);
    assert_eq!(csv.rows.len(), 101);
    let extended = qdiscord(&["sweep", "--preset", "fig2", "--extended"]);
    assert_eq!(Csv::parse(&extended.stdout).rows.len(), 201);
}

#[test]
fn verify_columns_are_tiny() {
    let o = qdiscord(&["sweep", "--from", "0", "--to", "1", "--step", "0.05", "--quantities", "discord,C", "--verify"]);
    assert!(o.status.success());
    let csv = Csv::parse(&o.stdout);
    let diffs: Vec<usize> = (0..csv.header.len()).filter(|&i| csv.header[i].ends_with("_absdiff")).collect();
    assert_eq!(diffs.len(), 8);
    assert!(csv.rows.iter().all(|r| diffs.iter().all(|&i| r[i] <= 1e-12)));
}

#[test]
fn discord_examples() {
    let value = |o: &Output, key: &str| -> f64 {
        stdout(o).lines().find_map(|l| l.strip_prefix(key)).unwrap().trim().parse().unwrap()
    };
    let o = qdiscord(&["discord", "werner", "1.0"]);
    assert!((value(&o, "D ") - 1.0).abs() < 1e-12);
    let o = qdiscord(&["discord", "werner", "0.25"]);
    assert!(value(&o, "D ").abs() < 1e-12);
    let o = qdiscord(&["discord", "--numeric", "werner", "0.25"]);
    assert!(value(&o, "D ").abs() < 1e-9);
    assert!(stdout(&o).contains("numeric"));
    // c = (−0.6, −0.6, −0.6) is Werner(0.7).
    let a = qdiscord(&["discord", "c", "-0.6", "-0.6", "-0.6"]);
    let b = qdiscord(&["discord", "werner", "0.7"]);
    assert!((value(&a, "D ") - value(&b, "D ")).abs() < 1e-11);
    let o = qdiscord(&["discord", "bell", "1", "1"]);
    assert!((value(&o, "I ") - 2.0).abs() < 1e-12);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["discord", "c", "-0.6", "0.6", "-0.6"][..],
        &["discord", "werner", "1.5"],
        &["discord", "bell", "0", "2"],
        &["sweep", "--from", "0.7", "--to", "0.6"],
        &["sweep", "--preset", "fig4"],
        &["sweep", "--preset", "fig1", "--from", "0.1"],
        &["purify", "--f0", "-0.2", "--rounds", "2"],
        &["purify", "--f0", "0.7", "--rounds", "0"],
        &["koashi-check", "--dims", "5", "2", "2"],
        &["koashi-check", "--dims", "2", "2"],
        &["frobnicate"],
    ] {
        let o = qdiscord(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(qdiscord(&["--help"]).status.code(), Some(0));
}

#[test]
fn unwritable_output_fails() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let target = blocker.join("out.csv");
    let o = qdiscord(&["sweep", "--preset", "fig1", "--output", target.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn purify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let read = |f0: &str, rounds: &str| {
        let o = qdiscord(&[
            "--out-dir",
            dir.path().to_str().unwrap(),
            "purify",
            "--f0",
            f0,
            "--rounds",
            rounds,
            "--csv",
            "trace.csv",
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        Csv::parse(&fs::read(dir.path().join("trace.csv")).unwrap())
    };
    let t = read("0.75", "1");
    assert!((t.rows[0][t.col("F_out")] - 0.788461538462).abs() < 1e-12);

    let t = read("0.5", "5");
    assert!(t.rows.iter().all(|r| (r[t.col("F_out")] - 0.5).abs() < 1e-11));

    let t = read("1", "4");
    assert!(t.rows.iter().all(|r| r[t.col("F_out")] == 1.0 && r[t.col("p_success")] == 1.0));
    assert_eq!(t.rows[3][t.col("cumulative_yield")], 0.0625);
}

#[test]
fn koashi_check_examples() {
    let o = qdiscord(&["koashi-check", "--dims", "2", "2", "2", "--trials", "20"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("PPT                               20/20"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.csv");
    let o = qdiscord(&[
        "koashi-check",
        "--dims",
        "2",
        "2",
        "2",
        "--trials",
        "1",
        "--product",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&path).unwrap();
    let row = text.lines().nth(2).unwrap();
    for (name, value) in text.lines().nth(1).unwrap().split(',').zip(row.split(',')) {
        if name.ends_with("residual") || name == "discord" || name == "entropy_a" {
            assert_eq!(value.parse::<f64>().unwrap(), 0.0, "{name}");
        }
    }

    let o = qdiscord(&["koashi-check", "--dims", "3", "3", "3", "--trials", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("5/5"));
}
