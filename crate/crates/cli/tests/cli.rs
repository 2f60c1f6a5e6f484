use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::tempdir;

fn vortex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vortex")).args(args).output().unwrap()
}

struct Row {
    phi: f64,
    method: String,
    value: f64,
    raw_value: String,
    cols: Vec<String>,
}

fn rows(path: &Path) -> Vec<Row> {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "phi,method,value,f1_re,f1_im,f2_re,f2_im,f3_re,f3_im,fab_re,fab_im");
    lines
        .map(|l| {
            let cols: Vec<String> = l.split(',').map(str::to_string).collect();
            assert_eq!(cols.len(), 11, "{l}");
            Row { phi: cols[0].parse().unwrap(), method: cols[1].clone(), value: cols[2].parse().unwrap(), raw_value: cols[2].clone(), cols }
        })
        .collect()
}

#[test]
fn free_scenario_scatters_nothing() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("free.csv");
    let o = vortex(&["run", "--kr-c", "50", "--mu", "0", "--kappa", "0", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = rows(&out);
    assert_eq!(r.len(), 2001);
    assert!(r.iter().all(|r| r.method == "exact" && r.value <= 1e-12));
}

#[test]
fn exact_and_fraunhofer_blocks_share_the_forward_peak() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("diff.csv");
    let o = vortex(&[
        "run", "--kr-c", "100", "--mu", "0.3", "--phi-min", "-0.0501", "--phi-max", "0.0499", "--steps", "201",
        "--method", "exact,fraunhofer", "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = rows(&out);
    let (exact, fr): (Vec<&Row>, Vec<&Row>) = r.iter().partition(|r| r.method == "exact");
    assert_eq!(exact.len(), 201);
    assert_eq!(fr.len(), 201);
    assert!(fr.iter().all(|r| r.cols[3].is_empty()));
    let peak = fr.iter().map(|r| r.value).fold(0.0, f64::max);
    for (e, f) in exact.iter().zip(&fr) {
        assert_eq!(e.phi, f.phi);
        if f.value > 0.5 * peak {
            let re: f64 = e.cols[3].parse().unwrap();
            let im: f64 = e.cols[4].parse().unwrap();
            let f1 = re * re + im * im;
            assert!((f1 - f.value).abs() <= 0.05 * f.value, "phi={}", f.phi);
        }
    }
}

#[test]
fn strong_penetration_rows_equal_classical_rows() {
    let dir = tempdir().unwrap();
    for (mu, units) in [("60", "rc"), ("60", "k"), ("25", "rc")] {
        let out = dir.path().join(format!("strong-{mu}-{units}.csv"));
        let o = vortex(&[
            "run", "--kr-c", "100", "--mu", mu, "--method", "penetration,classical", "--units", units, "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let r = rows(&out);
        let (pen, cla): (Vec<&Row>, Vec<&Row>) = r.iter().partition(|r| r.method == "penetration");
        let same = pen.iter().zip(&cla).filter(|(a, b)| a.raw_value == b.raw_value).count();
        if mu == "60" {
            assert_eq!(same, pen.len());
        } else {
            // 2|mu| < kr_c: the weak-field branch, which is not the classical curve
            assert!(same < pen.len());
        }
    }
}

#[test]
fn output_is_deterministic_and_flags_override_the_file() {
    let dir = tempdir().unwrap();
    let cfg = dir.path().join("s.txt");
    fs::write(&cfg, "kr_c = 30\nmu = 2.5\nkappa = 1\nsigma = -1\nphi_min = 0.2\nphi_max = 2.0\nsteps = 40\nmethod = exact, ab\n").unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = vortex(&["run", "--scenario", cfg.to_str().unwrap(), "--out", p.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let c = dir.path().join("c.csv");
    let o = vortex(&["run", "--scenario", cfg.to_str().unwrap(), "--mu", "0", "--kappa", "0", "--out", c.to_str().unwrap()]);
    assert!(o.status.success());
    let r = rows(&c);
    assert_eq!(r.len(), 80);
    assert!(r.iter().all(|r| r.value <= 1e-12));
}

#[test]
fn exit_codes() {
    assert_eq!(vortex(&["run", "--kr-c", "-3"]).status.code(), Some(2));
    assert_eq!(vortex(&["run", "--kr-c", "20", "--method", "warp"]).status.code(), Some(2));
    assert_eq!(vortex(&["run", "--kr-c", "20", "--phi-min", "-1", "--phi-max", "1", "--steps", "3"]).status.code(), Some(2));
    assert_eq!(vortex(&["run", "--scenario", "/nonexistent/file"]).status.code(), Some(2));
    // orders beyond the Bessel range
    let o = vortex(&["run", "--kr-c", "900", "--phi-min", "0.1", "--phi-max", "0.2", "--steps", "2"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    let o = vortex(&[
        "compare", "--kr-c", "30", "--mu", "2.5", "--method", "exact,penetration", "--tol-l2", "1e-3", "--phi-min", "0.3",
        "--phi-max", "2", "--steps", "20",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn warnings_go_to_stderr() {
    let o = vortex(&["run", "--kr-c", "5", "--mu", "20", "--method", "fraunhofer", "--phi-min", "0.1", "--phi-max", "0.2", "--steps", "2"]);
    assert!(o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("kr_c >> 1"));
    assert!(err.contains("<<"));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("phi,method"));
}

#[test]
fn compare_reports_unitarity_and_spin() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("cmp.csv");
    let o = vortex(&[
        "compare", "--kr-c", "30", "--mu", "0.37", "--kappa", "1", "--method", "exact,fraunhofer", "--tol-spin", "10",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let summary = String::from_utf8_lossy(&o.stdout);
    let line = summary.lines().find(|l| l.starts_with("unitarity")).unwrap();
    let worst: f64 = line.rsplit(' ').next().unwrap().parse().unwrap();
    assert!(worst <= 1e-8);
    assert!(fs::read_to_string(&out).unwrap().starts_with("phi,method,exact,approx,rel_diff\n"));
}

#[test]
fn sweep_is_flux_periodic() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let o = vortex(&["sweep", "--kr-c", "100", "--mu-steps", "31", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "mu,peak_phi_1,peak_value_1,peak_phi_2,peak_value_2");
    let table: Vec<Vec<Option<f64>>> = lines.map(|l| l.split(',').map(|c| c.parse().ok()).collect()).collect();
    assert_eq!(table.len(), 31);
    for i in 0..21 {
        let (a, b) = (&table[i], &table[i + 10]);
        for k in 1..5 {
            match (a[k], b[k]) {
                (Some(x), Some(y)) => assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0), "row {i} col {k}"),
                (None, None) => {}
                _ => panic!("peak count differs at row {i}"),
            }
        }
    }
    // one or two peaks per period
    assert!(table.iter().all(|r| r[1].is_some()));
    assert!(table.iter().any(|r| r[3].is_none()) && table.iter().any(|r| r[3].is_some()));
}
