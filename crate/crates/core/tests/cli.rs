use std::fs;
use std::path::Path;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_galbacklund")).args(args).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout).to_string() + &String::from_utf8_lossy(&out.stderr);
    (out.status.code().unwrap(), text)
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

fn generate(dir: &Path, name: &str, case: &str) -> String {
    generate_n(dir, name, case, "512")
}

fn generate_n(dir: &Path, name: &str, case: &str, samples: &str) -> String {
    let out = p(dir, name);
    let (code, text) = run(&[
        "generate",
        "--case",
        case,
        "--family",
        "backlund-consistent",
        "--tau",
        "0.8",
        "--phi",
        "0.9",
        "--gamma0",
        "0.4",
        "--samples",
        samples,
        "--out",
        &out,
    ]);
    assert_eq!(code, 0, "{text}");
    out
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for case in ["g3", "pg3-tb", "pg3-tn", "g4"] {
        let (a, b) = (generate(d, &format!("{case}_a.csv"), case), generate(d, &format!("{case}_b.csv"), case));
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
        for (seed, pair) in [(&a, "pa.csv"), (&b, "pb.csv")] {
            let (code, text) = run(&["transform", "--in", seed, "--out", &p(d, pair)]);
            assert_eq!(code, 0, "{text}");
        }
        assert_eq!(fs::read(p(d, "pa.csv")).unwrap(), fs::read(p(d, "pb.csv")).unwrap());
        let (c1, _) = run(&["verify", "--in", &p(d, "pa.csv"), "--report", &p(d, "ra.json")]);
        let (c2, _) = run(&["verify", "--in", &p(d, "pb.csv"), "--report", &p(d, "rb.json")]);
        assert_eq!(c1, c2);
        assert_eq!(fs::read(p(d, "ra.json")).unwrap(), fs::read(p(d, "rb.json")).unwrap());
    }
}

#[test]
fn report_schema() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let seed = generate_n(d, "seed.csv", "g3", "4096");
    run(&["transform", "--in", &seed, "--out", &p(d, "pair.csv")]);
    let (code, json) = run(&["verify", "--in", &p(d, "pair.csv")]);
    assert_eq!(code, 0, "{json}");
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["case"], "g3");
    for key in ["tau", "phi", "gamma0", "C", "r"] {
        assert!(v["params"][key].is_number(), "params.{key}");
    }
    for entry in v["checks"].as_object().unwrap().values() {
        for key in ["observed", "expected", "tolerance", "pass"] {
            assert!(!entry[key].is_null(), "{key} missing in {entry}");
        }
    }
    assert!(v["notes"].is_array());
    // 17 significant digits
    assert!(json.contains("\"tau\": 8.0000000000000004e-1"), "{json}");
}

#[test]
fn config_file_supplies_flags_and_command_line_wins() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let cfg = p(d, "run.cfg");
    fs::write(
        &cfg,
        format!("# seed\ncase = g3\nfamily = backlund-consistent\ntau = 1\nphi = 0.5\ngamma0 = 0.3\nsamples = 256\nout = {}\n", p(d, "from_cfg.csv")),
    )
    .unwrap();
    let (code, text) = run(&["generate", "--config", &cfg]);
    assert_eq!(code, 0, "{text}");
    let body = fs::read_to_string(p(d, "from_cfg.csv")).unwrap();
    assert!(body.contains("# case=g3"));
    assert_eq!(body.lines().filter(|l| !l.starts_with('#')).count(), 258);

    let (code, text) = run(&["generate", "--config", &cfg, "--samples", "128", "--out", &p(d, "over.csv")]);
    assert_eq!(code, 0, "{text}");
    let body = fs::read_to_string(p(d, "over.csv")).unwrap();
    assert_eq!(body.lines().filter(|l| !l.starts_with('#')).count(), 130);
}

#[test]
fn sweep_writes_points_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = p(dir.path(), "sweep");
    let (code, text) = run(&[
        "sweep",
        "--case",
        "pg3-tb",
        "--tau",
        "1",
        "--phi-min",
        "0.5",
        "--phi-max",
        "1",
        "--phi-steps",
        "2",
        "--gamma0-min",
        "0.2",
        "--gamma0-max",
        "0.4",
        "--gamma0-steps",
        "2",
        "--samples",
        "2048",
        "--out-dir",
        &out,
    ]);
    assert_eq!(code, 0, "{text}");
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(Path::new(&out).join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["total"], 4);
    assert_eq!(summary["passed"], 4);
    let points = fs::read_dir(&out).unwrap().filter(|e| e.as_ref().unwrap().file_name() != "summary.json").count();
    assert_eq!(points, 4);

    // parallel and sequential execution write the same files
    let seq = p(dir.path(), "sweep_seq");
    let (code, _) = run(&[
        "sweep",
        "--case",
        "pg3-tb",
        "--tau",
        "1",
        "--phi-min",
        "0.5",
        "--phi-max",
        "1",
        "--phi-steps",
        "2",
        "--gamma0-min",
        "0.2",
        "--gamma0-max",
        "0.4",
        "--gamma0-steps",
        "2",
        "--samples",
        "2048",
        "--out-dir",
        &seq,
        "--sequential",
    ]);
    assert_eq!(code, 0);
    for entry in fs::read_dir(&out).unwrap() {
        let name = entry.unwrap().file_name();
        assert_eq!(fs::read(Path::new(&out).join(&name)).unwrap(), fs::read(Path::new(&seq).join(&name)).unwrap());
    }
}

#[test]
fn invalid_input_exits_one_naming_the_condition() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let seed = generate(d, "seed.csv", "pg3-tn");
    let cases: [(&[&str], &str); 5] = [
        (&["transform", "--in", &seed, "--phi", "0", "--out", "x.csv"], "condition iii"),
        (&["transform", "--in", &seed, "--tau", "0", "--out", "x.csv"], "condition i"),
        (&["transform", "--in", &seed, "--case", "g3", "--out", "x.csv"], "pg3-tn"),
        (&["verify", "--in", "/nonexistent/pair.csv"], "nonexistent"),
        (&["generate", "--case", "g5", "--family", "line", "--out", "x.csv"], "g5"),
    ];
    for (args, needle) in cases {
        let (code, text) = run(args);
        assert_eq!(code, 1, "{args:?}: {text}");
        assert!(text.contains(needle), "{args:?}: {text}");
    }
    let (code, text) = run(&["verify", "--in", &seed, "--tol", "bogus=1"]);
    assert_eq!(code, 1, "{text}");
    let (code, _) = run(&["--help"]);
    assert_eq!(code, 0);
}

#[test]
fn line_family_takes_comma_separated_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let out = p(dir.path(), "line.csv");
    let (code, text) =
        run(&["generate", "--case", "g3", "--family", "line", "--line", "0.5,0,-0.2,1", "--tau", "1", "--out", &out]);
    assert_eq!(code, 0, "{text}");
    let (code, text) = run(&["generate", "--case", "g3", "--family", "line", "--line", "0.5,0", "--out", &out]);
    assert_eq!(code, 1, "{text}");
    assert!(text.contains("4 values"), "{text}");
}

#[test]
fn coarse_grid_is_invalid_input() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let seed = p(d, "seed.csv");
    let (code, text) = run(&["generate", "--case", "g3", "--family", "g3-circular", "--samples", "32", "--out", &seed]);
    assert_eq!(code, 0, "{text}");
    run(&["transform", "--in", &seed, "--tau", "1", "--phi", "0.5", "--gamma0", "0.2", "--out", &p(d, "pair.csv")]);
    let (code, text) = run(&["verify", "--in", &p(d, "pair.csv")]);
    assert_eq!(code, 1, "{text}");
}
