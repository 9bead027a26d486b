use std::path::PathBuf;
use std::process::{Command, Output};

fn config(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../configs");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn freecon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freecon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn reduce_examples() {
    let z = config("z2_z3.toml");
    let o = freecon(&["reduce", &z, "G:a G:a H:b"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "b (length 1)\n");
    let o = freecon(&["reduce", &z, ""]);
    assert_eq!(stdout(&o), "identity (length 0)\n");
    let o = freecon(&["reduce", &config("bs23.toml"), "t^-1 G:2 t"]);
    assert_eq!(stdout(&o), "3 (t-length 0)\n");
}

#[test]
fn classify_examples() {
    let z = config("z2_z3.toml");
    assert!(stdout(&freecon(&["classify", &z, "G:a"])).starts_with("elliptic\n"));
    assert!(stdout(&freecon(&["classify", &z, "G:a H:b"])).starts_with("hyperbolic\n"));
    let o = freecon(&["classify", &z, "G:a H:b G:a"]);
    assert_eq!(stdout(&o), "elliptic\ncore: b (length 1)\nconjugator: a\n");
}

#[test]
fn conjugate_exit_codes() {
    let z = config("z2_z3.toml");
    let o = freecon(&["conjugate", &z, "G:a H:b", "H:b G:a"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "conjugate\nconjugator: b\n");
    let o = freecon(&["conjugate", &z, "G:a H:b", "G:a H:b2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "not conjugate\n");
}

#[test]
fn roots_and_witness() {
    let z = config("z2_z3.toml");
    let o = freecon(&["roots", &z, "(G:a H:b)^4", "-d", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "power: 1 root(s) of degree 2\na b a b\n");
    let o = freecon(&["witness", &z, "-d", "2", "-n", "0", "--classical"]);
    let out = stdout(&o);
    assert!(out.contains("length 20\n"), "{out}");
    assert!(out.contains("alpha = 4, beta = 3"));
}

#[test]
fn detect_flags() {
    let o = freecon(&["detect", &config("dihedral.toml")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("degenerate: dihedral case"));
    let o = freecon(&["detect", &config("z2_z3.toml")]);
    let out = stdout(&o);
    assert!(out.contains("\nnon-degenerate\n"));
    assert!(out.contains("g = a (G), h = b (H), h' = b2 (H)"));
    let o = freecon(&["detect", &config("bs23.toml")]);
    assert_eq!(stdout(&o), "non-ascending\nwitness: g = 1\n");
}

#[test]
fn verify_exit_codes() {
    let o = freecon(&["verify", &config("z2_z3.toml"), "-d", "2", "-n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["pass"], true);
    assert!(report["config_digest"].as_str().unwrap().starts_with("sha256:"));

    let o = freecon(&["verify", &config("dihedral.toml"), "-d", "2", "-n", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("dihedral"));

    let o = freecon(&["verify", &config("z2_z3.toml"), "-d", "1", "-n", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("d must exceed 1"));
}

#[test]
fn report_field_order() {
    let o = freecon(&["verify", &config("z2_z3.toml"), "-d", "2", "-n", "0"]);
    let out = stdout(&o);
    let keys = [
        "group_id",
        "d",
        "n",
        "witness",
        "exponents",
        "verdicts",
        "escalations",
        "exact",
        "elapsed_ms",
    ];
    let pos: Vec<usize> = keys
        .iter()
        .map(|k| out.find(&format!("\n  \"{k}\":")).unwrap())
        .collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{out}");
}

#[test]
fn census_examples() {
    for (cfg, expected) in [("s3_c2_s3.toml", 1), ("central_k1.toml", 2)] {
        let o = freecon(&["census", &config(cfg), "-d", "2", "-r", "2"]);
        assert_eq!(o.status.code(), Some(0));
        let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(report["s_observed"], expected, "{cfg}");
    }
    let o = freecon(&["census", &config("z2_z3.toml"), "-d", "2", "-r", "60"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cap"));
}

#[test]
fn generosity_exit_codes() {
    let o = freecon(&["generosity", &config("dihedral.toml"), "-m", "2", "-N", "6"]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(report["escapee"].is_null());
    let o = freecon(&["generosity", &config("z2_z3.toml"), "-m", "1", "-N", "5"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_and_config_errors() {
    let z = config("z2_z3.toml");
    let o = freecon(&["reduce", &z, "G:a X:b"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("token 4"));
    assert_eq!(freecon(&["reduce"]).status.code(), Some(2));
    assert_eq!(freecon(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(freecon(&["reduce", "/nonexistent.toml", "G:a"]).status.code(), Some(2));
    assert_eq!(freecon(&["reduce", &z, "G:a", "--window", "0"]).status.code(), Some(2));
    assert_eq!(
        freecon(&["census", &z, "-d", "2", "-r", "1", "--workers", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn malformed_configs_exit_2_with_diagnostics() {
    let dir = std::env::temp_dir().join(format!("freecon-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = std::fs::read_to_string(config("z2_z3.toml")).unwrap();
    let cases = [
        ("syntax", "construction = \n".to_string(), "line 1"),
        ("unknown", format!("{good}\nextra = 1\n"), "extra"),
        ("missing", good.replace("[a_h]\nkind = \"trivial\"\n", ""), "a_h"),
        ("table", good.replace("[0, 1], [1, 0]", "[0, 1], [0, 1]"), "[g]"),
        ("kind", good.replace("\"amalgam\"", "\"hnn\""), "[g]"),
        ("binary", "\u{0}\u{1}".to_string(), ""),
    ];
    for (name, text, needle) in cases {
        let path = dir.join(format!("{name}.toml"));
        std::fs::write(&path, text).unwrap();
        let o = freecon(&["detect", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{name}");
        assert!(stderr(&o).contains(needle), "{name}: {}", stderr(&o));
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn out_file_and_json() {
    let dir = std::env::temp_dir().join(format!("freecon-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let o = freecon(&[
        "--json",
        "--out",
        path.to_str().unwrap(),
        "reduce",
        &config("z2_z3.toml"),
        "G:a",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["outcome"], "pass");
    assert_eq!(r["exit_code"], 0);
    assert_eq!(r["payload"]["normal_form"], "a");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reports_identical_across_worker_counts() {
    let z = config("s3_c2_s3.toml");
    let runs: Vec<Vec<u8>> = ["1", "4", "8"]
        .iter()
        .map(|w| freecon(&["verify", &z, "-d", "3", "-n", "1", "--workers", w]).stdout)
        .collect();
    assert!(!runs[0].is_empty());
    assert!(runs.windows(2).all(|w| w[0] == w[1]));
}
