use std::path::PathBuf;
use std::process::{Command, Output};

use forge_cli::doc::{self, Document};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forge"))
        .args(args)
        .env_remove("FORGE_TOLERANCE")
        .output()
        .expect("binary runs")
}

fn run(cmd: &str, file: &str, flags: &[&str]) -> (i32, String, String) {
    let path = fixture(file);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(flags);
    let out = forge(&args);
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn has(stdout: &str, line: &str) -> bool {
    stdout.lines().any(|l| l == line)
}

#[test]
fn weights_example() {
    let (code, out, _) = run("weights", "omega.json", &[]);
    assert_eq!(code, 0);
    for line in ["admissible=true", "b2=2", "torsion=24", "reduced=true", "minor[0,3]=2"] {
        assert!(has(&out, line), "missing {line} in\n{out}");
    }
}

#[test]
fn weights_exclusion_and_parse_errors() {
    let (code, out, err) = run("weights", "omega_excluded.json", &[]);
    assert_eq!(code, 2);
    assert!(has(&out, "admissible=false"));
    assert!(err.contains("degenerate"), "{err}");
    let (code, _, err) = run("weights", "empty.json", &[]);
    assert_eq!(code, 1);
    assert!(err.contains("line 1 column 0"), "{err}");
    let (code, _, err) = run("weights", "square.json", &[]);
    assert_eq!(code, 1);
    assert!(err.contains("expected a weight_matrix document"), "{err}");
    let (code, _, _) = run("weights", "no_such_file.json", &[]);
    assert_eq!(code, 1);
}

#[test]
fn fan_invariants() {
    let (code, out, _) = run("fan", "hexagon.json", &["--volume"]);
    assert_eq!(code, 0);
    assert!(has(&out, "vol_sigma=3"));
    assert!(!out.contains("einstein="));
    let (code, out, _) = run("fan", "octagon.json", &["--einstein"]);
    assert_eq!(code, 0);
    assert!(has(&out, "einstein=true"));
    let (code, out, _) = run("fan", "square.json", &[]);
    assert_eq!(code, 0);
    for line in ["index=2", "smooth=true", "spin=true", "diffeotype=S²×S³", "vol_se=16π³/27"] {
        assert!(has(&out, line), "missing {line} in\n{out}");
    }
    let (code, out, _) = run("fan", "f1.json", &["--einstein", "--index"]);
    assert_eq!(code, 0);
    assert!(has(&out, "einstein=false") && has(&out, "barycenter=(1/12,1/6)") && has(&out, "index=1"));
}

#[test]
fn fan_precondition_failures() {
    let (code, _, err) = run("fan", "incomplete.json", &[]);
    assert_eq!(code, 2);
    assert!(err.contains("fan not complete"), "{err}");
    let (code, out, err) = run("fan", "hirzebruch2.json", &["--einstein"]);
    assert_eq!(code, 2);
    assert!(has(&out, "fano=false"));
    assert!(err.contains("not Fano"));
}

#[test]
fn isotropy_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let emitted = dir.path().join("fan.json");
    let (code, out, _) = run("isotropy", "isotropy_example.json", &["--emit-fan", emitted.to_str().unwrap()]);
    assert_eq!(code, 0);
    for line in ["einstein=true", "diffeotype=#5(S²×S³)", "b2=5", "stabilizer_orders=4,3,4,3"] {
        assert!(has(&out, line), "missing {line} in\n{out}");
    }
    // the emitted document is the octagon and feeds straight back in
    let text = std::fs::read_to_string(&emitted).unwrap();
    let Document::AugmentedFan { rays, .. } = doc::parse(&text).unwrap() else { panic!("wrong kind") };
    assert_eq!(rays.len(), 8);
    let out = forge(&["fan", emitted.to_str().unwrap(), "--volume"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(has(&String::from_utf8(out.stdout).unwrap(), "vol_sigma=2/3"));

    let (code, out, _) = run("isotropy", "isotropy_square.json", &[]);
    assert_eq!(code, 0);
    assert!(has(&out, "diffeotype=S²×S³") && has(&out, "vol_se=16π³/27"));
    let (code, _, err) = run("isotropy", "isotropy_bad.json", &[]);
    assert_eq!(code, 2);
    assert!(err.contains("strictly convex"), "{err}");
}

#[test]
fn joins() {
    let (code, out, _) = run("join", "join_s3_m3.json", &[]);
    assert_eq!(code, 0);
    assert!(has(&out, "dim=7") && has(&out, "b2=4") && has(&out, "smooth=true"));
    let (_, out, _) = run("join", "join_m1_s7.json", &[]);
    assert!(has(&out, "dim=11"));
    let (_, out, _) = run("join", "join_ord_clash.json", &[]);
    assert!(has(&out, "smooth=false"));
    let (code, out, err) = run("join", "join_common_factor.json", &[]);
    assert_eq!(code, 0);
    assert!(err.contains("warning") && has(&out, "weights=3,2") && has(&out, "reduced_by=2"));
}

#[test]
fn render_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
    for p in [&a, &b] {
        let (code, _, _) = run("render", "octagon.json", &["--svg", p.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    let svg = std::fs::read(&a).unwrap();
    assert_eq!(svg, std::fs::read(&b).unwrap());
    let svg = String::from_utf8(svg).unwrap();
    for label in ["(7,2)", "(5,1)", "(\u{2212}1,\u{2212}1)", "(\u{2212}5,\u{2212}2)"] {
        assert!(svg.contains(&format!(">{label}</text>")), "missing label {label}");
    }
    assert!(svg.contains("x2=\"140\" y2=\"-40\""), "(7,2) at 20 units per lattice step");
    assert!(svg.contains("id=\"sigma\""));

    let (code, svg, _) = run("render", "square_empty.json", &[]);
    assert_eq!(code, 0);
    assert!(svg.contains("id=\"axes\"") && !svg.contains("id=\"sigma\""));
    let (code, svg, _) = run("render", "square.json", &[]);
    assert_eq!(code, 0);
    let sigma = svg.lines().find(|l| l.contains("id=\"sigma\"")).expect("square polygon drawn");
    for corner in ["20,20", "-20,20", "-20,-20", "20,-20"] {
        assert!(sigma.split('"').nth(3).unwrap().split(' ').any(|p| p == corner), "{sigma}");
    }
}

#[test]
fn json_output_round_trips() {
    let (code, out, _) = run("fan", "square.json", &["--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kind"], "fan_report");
    assert_eq!(v["format_version"], 1);
    assert_eq!(v["index"], "2");
    let (_, again, _) = run("fan", "square.json", &["--json"]);
    assert_eq!(out, again);
    for name in ["omega.json", "square.json", "isotropy_example.json", "join_ord_clash.json", "join_s3_m3.json"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let d = doc::parse(&text).unwrap();
        assert_eq!(doc::parse(&doc::to_string(&d)).unwrap(), d, "{name}");
    }
}

#[test]
fn metric_checks() {
    let (code, out, _) = run("metric", "square.json", &[]);
    assert_eq!(code, 0, "{out}");
    let field = |key: &str| -> f64 {
        let line = out.lines().find(|l| l.starts_with(&format!("{key}="))).unwrap();
        line[key.len() + 1..].parse().unwrap()
    };
    assert!((field("vol_num") - 4.0).abs() < 0.04);
    assert!(field("rel_err") < 0.01);
    assert!(has(&out, "soliton=(0,0)"));
    let (code, out, _) = run("metric", "f1.json", &["--soliton"]);
    assert_eq!(code, 0);
    assert!(has(&out, "soliton=(0,-0.527619519897)"), "{out}");
    let (code, _, _) = run("metric", "hirzebruch2.json", &[]);
    assert_eq!(code, 2);
}

#[test]
fn tolerance_from_environment() {
    let path = fixture("hexagon.json");
    let strict = Command::new(env!("CARGO_BIN_EXE_forge"))
        .args(["metric", path.to_str().unwrap(), "--soliton"])
        .env("FORGE_TOLERANCE", "1e-30")
        .output()
        .unwrap();
    assert_eq!(strict.status.code(), Some(3));
    let bad = Command::new(env!("CARGO_BIN_EXE_forge"))
        .args(["metric", path.to_str().unwrap()])
        .env("FORGE_TOLERANCE", "abc")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let flag_wins = Command::new(env!("CARGO_BIN_EXE_forge"))
        .args(["metric", path.to_str().unwrap(), "--soliton", "--tolerance", "1e-6"])
        .env("FORGE_TOLERANCE", "1e-30")
        .output()
        .unwrap();
    assert_eq!(flag_wins.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(forge(&["bogus"]).status.code(), Some(1));
    assert_eq!(forge(&["--help"]).status.code(), Some(0));
}
