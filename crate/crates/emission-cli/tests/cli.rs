//! End-to-end checks of the compiled binary: output formats, flag
//! behavior, exit codes, and the multi-file oracle run.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_emission"))
        .args(args)
        .env_remove("EMISSION_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const BASE: &str = r#"
[transition]
h = 1
g = 0
omega0_over_gamma = 1e6

[state]
"1" = [1.0, 0.0]

[grids.time]
start = 0.0
stop = 2.0
count = 5
"#;

#[test]
fn energy_csv_has_header_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "run.toml", BASE);
    let cfg = cfg.to_str().unwrap();

    let first = run(&["energy", "--config", cfg]);
    assert_eq!(first.status.code(), Some(0), "stderr: {}", stderr(&first));
    let text = stdout(&first);
    let mut lines = text.split("\r\n");
    assert_eq!(
        lines.next().unwrap(),
        "tau,atom_energy,field_energy,interaction_energy,total_energy"
    );
    assert_eq!(text.matches("\r\n").count(), 6, "5 rows plus header, each CRLF-terminated");

    let second = run(&["energy", "--config", cfg]);
    assert_eq!(first.stdout, second.stdout, "reruns must be byte-identical");
}

#[test]
fn energy_pure_scheme_conserves_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "run.toml", BASE);

    let out = run(&["energy", "--config", cfg.to_str().unwrap(), "--scheme", "pure"]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout(&out).trim_end().split("\r\n").skip(1) {
        assert!(line.ends_with(",1.00000000000e0"), "non-conserving row: {line}");
    }
}

#[test]
fn angmom_json_reports_the_budget_and_the_coefficient_choice() {
    let dir = tempfile::tempdir().unwrap();
    let text = BASE.replace("g = 0", "g = 1");
    let cfg = write_config(dir.path(), "run.toml", &text);
    let cfg = cfg.to_str().unwrap();

    let out = run(&["angmom", "--config", cfg, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "angmom");
    assert_eq!(v["metadata"]["h"], "1");
    assert_eq!(v["metadata"]["g"], "1");
    assert_eq!(v["metadata"]["hg_coefficient"], "conservation-consistent");
    let columns: Vec<&str> = v["columns"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(
        columns,
        ["tau", "atom_z", "field_z_closed", "field_z_numeric", "spin_z", "orbital_z", "conservation_residual"]
    );
    // Conservation holds and the field splits evenly into spin and orbital.
    let last = v["rows"].as_array().unwrap().last().unwrap().as_array().unwrap();
    let field_closed = last[2].as_f64().unwrap();
    let spin = last[4].as_f64().unwrap();
    let orbital = last[5].as_f64().unwrap();
    assert!((spin + orbital - field_closed).abs() < 1e-10);
    assert!((spin - orbital).abs() < 1e-10);
    assert!(last[6].as_f64().unwrap().abs() < 1e-12);

    let printed = run(&["angmom", "--config", cfg, "--format", "json", "--as-printed-hg-coefficient"]);
    assert_eq!(printed.status.code(), Some(0));
    let p: serde_json::Value = serde_json::from_str(&stdout(&printed)).unwrap();
    assert_eq!(p["metadata"]["hg_coefficient"], "as-printed");
    let plast = p["rows"].as_array().unwrap().last().unwrap().as_array().unwrap();
    // H = G = 1: the printed coefficient is smaller by 2H + 1 = 3 and no
    // longer matches the quadrature or closes the conservation sum.
    assert!((plast[2].as_f64().unwrap() * 3.0 - field_closed).abs() < 1e-12);
    assert_eq!(plast[3].as_f64().unwrap(), last[3].as_f64().unwrap());
    assert!(plast[6].as_f64().unwrap() < -1e-2);
}

#[test]
fn density_leaves_the_classical_column_empty_at_the_origin() {
    let dir = tempfile::tempdir().unwrap();
    let text = format!(
        "{BASE}\n[grids.radial]\nstart = 0.0\nstop = 20.0\ncount = 3\n"
    )
    .replace("start = 0.0\nstop = 2.0\ncount = 5", "start = 0.0\nstop = 0.0\ncount = 1");
    let cfg = write_config(dir.path(), "run.toml", &text);

    let out = run(&["density", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.trim_end().split("\r\n");
    assert_eq!(lines.next().unwrap(), "tau,x,w_closed,w_quadrature,w_farfield,w_classical");
    let origin_row = lines.next().unwrap();
    assert!(origin_row.ends_with(','), "empty classical field at x = 0: {origin_row}");
    assert!(stderr(&out).contains("diverges at x = 0"));
}

#[test]
fn oracle_writes_three_files_and_the_rate_is_profile_independent() {
    let dir = tempfile::tempdir().unwrap();
    let oracle = |profile: &str| {
        format!(
            "[oracle]\nn_modes = 2000\nhalf_span_in_gamma = 100.0\n\
             density_profile = \"{profile}\"\ntau_end = 5.0\ndt = 0.005\n"
        )
    };

    let gamma_fit = |profile: &str| -> f64 {
        let cfg = write_config(dir.path(), &format!("{profile}.toml"), &oracle(profile));
        let base = dir.path().join(format!("{profile}.csv"));
        let out = run(&[
            "oracle",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            base.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
        for suffix in ["trajectory", "spectrum", "summary"] {
            assert!(dir.path().join(format!("{profile}_{suffix}.csv")).exists());
        }
        let summary =
            std::fs::read_to_string(dir.path().join(format!("{profile}_summary.csv"))).unwrap();
        let mut lines = summary.trim_end().split("\r\n");
        assert_eq!(
            lines.next().unwrap(),
            "gamma_fit,lorentzian_center,lorentzian_width,spectrum_max_rel_dev,\
             norm_drift,wwa_strict_dev,wwa_shape_dev"
        );
        lines.next().unwrap().split(',').next().unwrap().parse().unwrap()
    };

    let flat = gamma_fit("flat");
    let cubic = gamma_fit("cubic");
    // Both carry the same finite-span excess ~2/(πS); the ω³ weighting of
    // the physical density shifts the rate only at O(1/ratio).
    assert!((flat - 1.0).abs() < 1.5e-2, "flat-profile rate {flat}");
    assert!((cubic - 1.0).abs() < 1.5e-2, "cubic-profile rate {cubic}");
    assert!((flat - cubic).abs() < 5e-3, "profiles disagree: {flat} vs {cubic}");
}

#[test]
fn oracle_without_an_output_path_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "run.toml",
        "[oracle]\nn_modes = 2000\nhalf_span_in_gamma = 100.0\ntau_end = 5.0\ndt = 0.005\n",
    );
    let out = run(&["oracle", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("output path"));
}

#[test]
fn cyclotron_field_carries_twice_the_classical_angular_momentum() {
    let dir = tempfile::tempdir().unwrap();
    let text = format!("{BASE}\n[cyclotron]\nq_charge = 1.0\nb_field = 1e-3\nmass = 1.0\n");
    let cfg = write_config(dir.path(), "run.toml", &text);

    let out = run(&["cyclotron", "--config", cfg.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let gamma_c = v["metadata"]["gamma_c"].as_f64().unwrap();
    assert!((gamma_c - 1e-6 / (6.0 * std::f64::consts::PI)).abs() < 1e-18);
    for row in v["rows"].as_array().unwrap() {
        let row = row.as_array().unwrap();
        let field = row[3].as_f64().unwrap();
        let classical = row[4].as_f64().unwrap();
        assert_eq!(field, 2.0 * classical);
    }
}

#[test]
fn output_goes_to_the_configured_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("result.json");
    let text = format!(
        "{BASE}\n[output]\nformat = \"json\"\npath = {:?}\n",
        target.to_str().unwrap()
    );
    let cfg = write_config(dir.path(), "run.toml", &text);

    let out = run(&["energy", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v["command"], "energy");
}

#[test]
fn config_problems_exit_with_code_one() {
    let dir = tempfile::tempdir().unwrap();

    let missing = run(&["energy", "--config", dir.path().join("absent.toml").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(stderr(&missing).contains("cannot read config"));

    let broken = write_config(dir.path(), "broken.toml", "not = [toml");
    let bad_syntax = run(&["energy", "--config", broken.to_str().unwrap()]);
    assert_eq!(bad_syntax.status.code(), Some(1));

    let empty = write_config(dir.path(), "empty.toml", "");
    let no_grid = run(&["energy", "--config", empty.to_str().unwrap()]);
    assert_eq!(no_grid.status.code(), Some(1));
    assert!(stderr(&no_grid).contains("[grids.time]"));

    let forbidden = write_config(
        dir.path(),
        "forbidden.toml",
        "[transition]\nh = 0\ng = 0\n[grids.time]\nstart = 0.0\nstop = 1.0\ncount = 2\n",
    );
    let zero_zero = run(&["angmom", "--config", forbidden.to_str().unwrap()]);
    assert_eq!(zero_zero.status.code(), Some(1));
}

#[test]
fn usage_and_help_exit_codes() {
    let no_args = run(&[]);
    assert_eq!(no_args.status.code(), Some(1));

    let unknown = run(&["explode", "--config", "x.toml"]);
    assert_eq!(unknown.status.code(), Some(1));

    let help = run(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("oracle"));
}

#[test]
fn thread_count_env_var_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "run.toml", BASE);
    let cfg = cfg.to_str().unwrap();

    let ok = Command::new(env!("CARGO_BIN_EXE_emission"))
        .args(["energy", "--config", cfg])
        .env("EMISSION_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0), "stderr: {}", stderr(&ok));

    let bad = Command::new(env!("CARGO_BIN_EXE_emission"))
        .args(["energy", "--config", cfg])
        .env("EMISSION_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).contains("EMISSION_THREADS"));
}
