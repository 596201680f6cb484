use std::fs;
use std::process::{Command, Output};

fn dxl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dxl")).args(args).output().expect("run dxl")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn rows(csv: &str) -> Vec<(f64, f64)> {
    csv.lines()
        .skip(1)
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect()
}

#[test]
fn tabulate_shell_hole_is_negative() {
    let o = dxl(&["tabulate", "--quantity", "shell_hole", "--rmin", "0.01", "--rmax", "10", "--points", "400"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("r,shell_hole\n"));
    assert!(!text.contains('\r'));
    let data = rows(&text);
    assert_eq!(data.len(), 400);
    assert!(data.iter().all(|&(_, v)| v < 0.0));
    assert_eq!(data[0].0, 0.01);
    assert_eq!(data[399].0, 10.0);
}

#[test]
fn shell_sum_changes_sign_once_near_one() {
    let o = dxl(&["tabulate", "--quantity", "shell_sum", "--rmin", "0.01", "--rmax", "10", "--points", "400"]);
    let data = rows(&String::from_utf8(o.stdout).unwrap());
    let cross: Vec<f64> = data.windows(2).filter(|w| w[0].1 < 0.0 && w[1].1 >= 0.0).map(|w| w[1].0).collect();
    assert_eq!(cross.len(), 1);
    assert!(cross[0] > 0.5 && cross[0] < 2.0, "{cross:?}");
}

#[test]
fn tabulate_to_file_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = dxl(&["tabulate", "--quantity", "force:hole:reference", "--rmin", "0.05", "--rmax", "5", "--points", "60", "--out", p.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
    }
    let ta = fs::read(&a).unwrap();
    assert_eq!(ta, fs::read(&b).unwrap());
    // the reference field is -1/r^2, so force * r^2 = -shell_hole = +|shell|
    let o = dxl(&["tabulate", "--quantity", "shell_hole", "--rmin", "0.05", "--rmax", "5", "--points", "60"]);
    let shells = rows(&String::from_utf8(o.stdout).unwrap());
    for ((r, f), (r2, s)) in rows(&String::from_utf8(ta).unwrap()).into_iter().zip(shells) {
        assert_eq!(r, r2);
        assert!((f * r * r - s).abs() <= 1e-14 * s.abs(), "{r} {f} {s}");
    }
}

#[test]
fn config_precision_and_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(&cfg, "output_precision = 6\np_fermi = 3\n").unwrap();
    let args = ["--config", cfg.to_str().unwrap(), "tabulate", "--quantity", "density_fermi_hole", "--rmin", "0.3", "--rmax", "0.7", "--points", "3"];
    let a = String::from_utf8(dxl(&args).stdout).unwrap();
    for line in a.lines().skip(1) {
        let v = line.split(',').nth(1).unwrap().trim_start_matches('-');
        let digits = v.split('e').next().unwrap().chars().filter(|c| c.is_ascii_digit()).collect::<String>();
        assert!(digits.trim_start_matches('0').len() <= 6, "{line}");
    }
    let mut with_flag = args.to_vec();
    with_flag.extend(["--pF", "1"]);
    let b = String::from_utf8(dxl(&with_flag).stdout).unwrap();
    assert_ne!(a, b);
    let plain = ["tabulate", "--quantity", "density_fermi_hole", "--rmin", "0.3", "--rmax", "0.7", "--points", "3"];
    let c = String::from_utf8(dxl(&plain).stdout).unwrap();
    let b_vals: Vec<f64> = rows(&b).into_iter().map(|x| x.1).collect();
    let c_vals: Vec<f64> = rows(&c).into_iter().map(|x| x.1).collect();
    for (x, y) in b_vals.iter().zip(&c_vals) {
        assert!((x - y).abs() <= 1e-5 * y.abs());
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&dxl(&["tabulate", "--quantity", "shell_bogus", "--rmin", "1", "--rmax", "2", "--points", "3"])), 2);
    assert_eq!(code(&dxl(&["tabulate", "--quantity", "shell_hole", "--rmin", "2", "--rmax", "1", "--points", "3"])), 2);
    assert_eq!(code(&dxl(&["tabulate", "--quantity", "shell_hole", "--rmin", "1", "--rmax", "2", "--points", "1"])), 2);
    assert_eq!(code(&dxl(&["tabulate", "--quantity", "shell_hole_n", "--rmin", "1", "--rmax", "2", "--points", "3"])), 2);
    assert_eq!(code(&dxl(&["figure", "--id", "4"])), 2);
    assert_eq!(code(&dxl(&["check", "--suite", "nope"])), 2);
    assert_eq!(code(&dxl(&["frobnicate"])), 2);
    assert_eq!(code(&dxl(&["--config", "/nonexistent/x.conf", "geometry"])), 2);
}

#[test]
fn check_writes_report_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sumrules.json");
    let o = dxl(&["check", "--suite", "sumrules", "--json", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let obj = v.as_object().unwrap();
    let mut keys: Vec<_> = obj.keys().map(String::as_str).collect();
    keys.sort();
    assert_eq!(keys, ["all_pass", "checks", "suite"]);
    assert_eq!(v["suite"], "sumrules");
    assert_eq!(v["all_pass"], true);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for want in ["ac01.hole_sum_rule", "ac02.electron_sum_rule", "ac08.fermi_hole_sum_rule", "ac06.infinite_sum_numeric_at_p0"] {
        assert!(names.contains(&want), "{want}");
    }
    for c in v["checks"].as_array().unwrap() {
        let mut k: Vec<_> = c.as_object().unwrap().keys().map(String::as_str).collect();
        k.sort();
        assert_eq!(k, ["computed", "expected", "name", "pass", "tolerance"]);
    }
}

#[test]
fn fields_suite_reports_failure_with_exit_1() {
    let o = dxl(&["check", "--suite", "fields"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("printed-sign"));
}

#[test]
fn figure_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("figs");
    let o = dxl(&["figure", "--id", "3", "--max-order", "2", "--out-dir", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let mut names: Vec<String> = fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert_eq!(names, ["fig3_N1_electron.csv", "fig3_N1_hole.csv", "fig3_N2_electron.csv", "fig3_N2_hole.csv"]);
    let text = fs::read_to_string(out.join("fig3_N1_hole.csv")).unwrap();
    assert_eq!(text.lines().count(), 401);

    let o = dxl(&["figure", "--id", "7", "--out-dir", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(out.join("fig7_hole_reference.csv").exists());
    assert!(out.join("fig7_vp_reference.csv").exists());
}

#[test]
fn geometry_prints_table_and_json() {
    let o = dxl(&["geometry"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("110"));
    assert!(text.contains("5.5"));
    let json_line = text.lines().last().unwrap();
    let v: serde_json::Value = serde_json::from_str(json_line).unwrap();
    assert!((v["apex_angle_deg"].as_f64().unwrap() - 103.5).abs() < 0.05);
    assert!((v["positronium_ratio"].as_f64().unwrap() / 580.0 - 1.0).abs() < 0.03);
    assert_eq!(v["positronium"]["bond_long_a0"], 9.0);
}
