use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn drumhead(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_drumhead"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn benchmark_passes_on_the_default_grid() {
    let o = drumhead(&["benchmark"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    // header, column titles, 10 pairs, summary, verdict
    assert_eq!(text.lines().count(), 14);
    assert!(text.contains("2.404825557"));
    assert!(text.trim_end().ends_with("PASS"));
}

#[test]
fn benchmark_fails_on_a_coarse_grid() {
    let o = drumhead(&["benchmark", "--nr", "7", "--ntheta", "8"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).trim_end().ends_with("FAIL"));
}

#[test]
fn table_one_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t1.json");
    let o = drumhead(&["solve", "--recipe", "table1", "--nmodes", "15", "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    let text = fs::read_to_string(&out).unwrap();
    let at = |key: &str| text.find(&format!("\"{key}\"")).unwrap();
    let order = ["params", "grid", "normalization", "modes", "rank", "lambda", "normalized", "m", "n", "partner", "cents_vs_nearest_integer"];
    let positions: Vec<usize> = order.iter().map(|k| at(k)).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{positions:?}");
    let report: serde_json::Value = serde_json::from_str(&text).unwrap();
    let modes = report["modes"].as_array().unwrap();
    assert_eq!(modes[0].as_object().unwrap().len(), 7);
    assert_eq!(report["grid"]["nr"], 65);
    assert_eq!(report["grid"]["ntheta"], 30);
    assert_eq!(report["normalization"]["convention"], "overtone2");
    assert_eq!(modes.len(), 15);
    let normalized: Vec<f64> = modes.iter().map(|m| m["normalized"].as_f64().unwrap()).collect();
    let expected = [1.0345, 2.0, 2.0, 3.0393, 3.0534, 3.0534, 4.0086, 4.0086, 4.1463, 4.1463];
    for (got, want) in normalized.iter().zip(expected) {
        assert!((got - want).abs() < 0.002, "{got} vs {want}");
    }
    assert_eq!(modes[1]["partner"], 3);
    assert_eq!(modes[0]["partner"], serde_json::Value::Null);
    assert_eq!((modes[3]["m"].as_u64(), modes[3]["n"].as_u64()), (Some(0), Some(2)));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let args = ["solve", "--sigma", "2.5", "--k", "0.35", "--eps", "0.1", "--nr", "21", "--ntheta", "16", "--out", path(out)];
        assert_eq!(drumhead(&args).status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn invalid_parameters_exit_with_two() {
    for args in [
        vec!["solve", "--sigma", "0.5", "--k", "0.4"],
        vec!["solve", "--k", "0.4"],
        vec!["solve", "--sigma", "2", "--k", "0.7", "--eps", "0.4"],
        vec!["solve", "--sigma", "2", "--k", "0.4", "--nr", "20"],
        vec!["solve", "--recipe", "fig7"],
        vec!["solve", "--sigma", "2", "--k", "0.4", "--normalize", "octave"],
        vec!["scan", "--axis", "sigma", "--k", "0.4", "--eps-range", "0:0.1:3"],
        vec!["scan", "--sigma-range", "3:1:4"],
        vec!["modes", "--sigma", "2", "--k", "0.4", "--nr", "9", "--ntheta", "8", "--count", "40"],
    ] {
        let o = drumhead(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn config_file_supplies_flags_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("drum.toml");
    fs::write(
        &config,
        "[solve]\nsigma = 1.0\nk = 0.4\nnr = 21\nntheta = 16\nnmodes = 3\nnormalize = \"none\"\n",
    )
    .unwrap();
    let out = dir.path().join("r.json");
    let o = drumhead(&["--config", path(&config), "solve", "--nmodes", "5", "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let modes = report["modes"].as_array().unwrap();
    assert_eq!(modes.len(), 5);
    assert!((modes[0]["lambda"].as_f64().unwrap() - 2.404825558).abs() < 1e-8);
    assert_eq!(report["normalization"]["convention"], "none");

    fs::write(&config, "[solve]\nsigmaa = 1.0\n").unwrap();
    assert_eq!(drumhead(&["--config", path(&config), "solve"]).status.code(), Some(2));
}

#[test]
fn quality_map_layout_and_worker_independence() {
    let dir = tempfile::tempdir().unwrap();
    let mut maps = Vec::new();
    for workers in ["1", "3"] {
        let out = dir.path().join(format!("q{workers}.csv"));
        let o = drumhead(&[
            "scan", "--sigma-range", "2:3:3", "--k-range", "0.3:0.5:3", "--nr", "17", "--ntheta", "12",
            "--nmax", "9", "--refine", "3", "--workers", workers, "--out", path(&out),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).contains("refined minimum: sigma = "));
        maps.push(fs::read_to_string(&out).unwrap());
    }
    assert_eq!(maps[0], maps[1]);
    let lines: Vec<&str> = maps[0].lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "sigma\\k,0.3,0.4,0.5");
    assert!(lines[1].starts_with("2,"));
    assert!(lines[3].starts_with("3,"));
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 4));
}

#[test]
fn one_dimensional_sweeps_write_csv_to_stdout() {
    let o = drumhead(&[
        "scan", "--axis", "sigma", "--k", "0.4", "--sigma-range", "1:3:3", "--nr", "17", "--ntheta", "12", "--nmodes", "6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "sigma,mode1,mode2,mode3,mode4,mode5,mode6");
    assert_eq!(lines.len(), 4);
    // second distinct frequency sits at 2
    assert!(lines[1].split(',').nth(2) == Some("2"));

    let o = drumhead(&[
        "scan", "--axis", "eccentricity", "--sigma", "3.125", "--k", "0.29", "--eps-range", "0:0.1:2",
        "--nr", "17", "--ntheta", "16", "--nmodes", "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("epsilon,mode1,mode2,mode3,mode4\n0,"));

    let o = drumhead(&[
        "scan", "--axis", "xi", "--sigma", "2.5", "--k", "0.45", "--xi-range", "0.05:0.15:3",
        "--nr", "17", "--ntheta", "12", "--nmax", "9",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("xi,Q\n0.05,"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("best xi = "));
}

#[test]
fn uniform_fundamental_field_export() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("fields");
    let o = drumhead(&[
        "modes", "--sigma", "1", "--k", "0.4", "--nr", "9", "--ntheta", "8", "--count", "1", "--out-dir", path(&out_dir),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let field = fs::read_to_string(out_dir.join("mode_01.csv")).unwrap();
    let lines: Vec<&str> = field.lines().collect();
    assert_eq!(lines[0], "r,theta,value");
    // 4 interior circles and the rim, each with 8 + 1 angles
    assert_eq!(lines.len(), 1 + 5 * 9);
    assert!(!field.contains('\r'));
    for line in &lines[1..] {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        if cols[0] < 1.0 {
            assert!(cols[2] > 0.0, "{line}");
        } else {
            assert_eq!(cols[2], 0.0);
        }
    }
    let index = fs::read_to_string(out_dir.join("index.csv")).unwrap();
    assert_eq!(index.lines().next(), Some("rank,lambda,normalized,m,n,partner"));
    assert!(index.lines().nth(1).unwrap().starts_with("1,2.40482"));
    assert!(!out_dir.join("mode_02.csv").exists());
}

#[test]
fn eccentric_recipe_exports_twenty_fields() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("fig9");
    let o = drumhead(&["modes", "--recipe", "fig9", "--nr", "25", "--ntheta", "24", "--out-dir", path(&out_dir)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let files = fs::read_dir(&out_dir).unwrap().count();
    assert_eq!(files, 21);
    assert!(out_dir.join("mode_20.csv").exists());
    let index = fs::read_to_string(out_dir.join("index.csv")).unwrap();
    assert_eq!(index.lines().count(), 21);
}
