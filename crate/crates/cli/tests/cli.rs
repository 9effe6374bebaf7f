use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdagraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixture_files() -> Vec<String> {
    let mut v: Vec<String> = std::fs::read_dir(fixture(""))
        .unwrap()
        .map(|e| e.unwrap().path().to_string_lossy().into_owned())
        .filter(|p| p.ends_with(".json"))
        .collect();
    v.sort();
    v
}

#[test]
fn grid_dot_has_lower_to_upper_hole() {
    let o = run(&["hograph", &fixture("grid_ul_lr.json"), "--dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("\"H1.g0\" -> \"H1.g1\";"));
    assert!(!dot.contains("\"H1.g1\" -> \"H1.g0\";"));

    let o = run(&["hograph", &fixture("grid_ll_ur.json")]);
    let dot = stdout(&o);
    assert!(!dot.contains("\"H1.g0\" -> \"H1.g1\";"));
    assert!(!dot.contains("\"H1.g1\" -> \"H1.g0\";"));
}

#[test]
fn digon_class_does_not_point_to_itself() {
    let o = run(&["points-to", &fixture("digon.json"), "--from", "H1.g0", "--to", "H1.g0"]);
    assert_eq!(stdout(&o), "false\n");
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["points-to", &fixture("digon.json"), "--from", "H1.g0", "--to", "H0.g0"]);
    assert_eq!(stdout(&o), "true\n");
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["points-to", &fixture("digon.json"), "--from", "-2*H1.g0", "--to", "zero"]);
    assert_eq!(stdout(&o), "true\n");
}

#[test]
fn broken_square_fails_validation() {
    let o = run(&["validate", &fixture("broken-square.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("IdentityViolation"), "{}", stderr(&o));
}

#[test]
fn usage_and_io_errors_exit_2() {
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Usage"));
    assert_eq!(run(&["homology", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["homology", &fixture("circ.json"), "--bogus"]).status.code(), Some(2));
    assert_eq!(
        run(&["points-to", &fixture("circ.json"), "--from", "H7.g0", "--to", "zero"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["--ring", "fp:4", "homology", &fixture("circ.json")]).status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    for file in fixture_files() {
        if file.ends_with("broken-square.json") {
            continue;
        }
        for args in [
            vec!["hograph", &file, "--dot"],
            vec!["hograph", &file, "--json"],
            vec!["homology", &file],
            vec!["concepts", &file],
            vec!["reach", &file],
        ] {
            let (a, b) = (run(&args), run(&args));
            assert_eq!(a.status.code(), Some(0), "{args:?}: {}", stderr(&a));
            assert_eq!(a.stdout, b.stdout, "{args:?}");
        }
    }
}

#[test]
fn subdivide_then_check() {
    let dir = std::env::temp_dir().join(format!("hdagraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("sub.json");
    let o = run(&["subdivide", &fixture("labelled_fine.json"), "--all", "2", "--count", "h00=3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    std::fs::write(&out, &o.stdout).unwrap();
    let out = out.to_string_lossy().into_owned();

    assert_eq!(run(&["validate", &out]).status.code(), Some(0));
    let o = run(&["check-abstraction", &out]);
    assert_eq!(stdout(&o), "ok\n");
    // Generator numbering on the target follows its own cube order.
    let dot = stdout(&run(&["hograph", &out, "--target"]));
    let forward = dot.contains("\"H1.g0\" -> \"H1.g1\";");
    let backward = dot.contains("\"H1.g1\" -> \"H1.g0\";");
    assert!(forward != backward, "{dot}");
    let o = run(&["map-class", &out, "--class", "H1.g0"]);
    assert!(stdout(&o).contains("\"H1.g0\": 1"));
    let o = run(&["lift-path", &out, "--edges", "h00@0+,h00@1+,h00@2+"]);
    assert!(stdout(&o).contains("\"h00\""), "{}", stdout(&o));
    let o = run(&["lift-path", &out, "--vertex", "h00@1"]);
    assert!(stdout(&o).contains("\"edges\": []"));

    // Inconsistent counts on opposite sides of a square.
    let o = run(&["subdivide", &fixture("square.json"), "--count", "a0=2"]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn reduce_reports_certified_steps() {
    let o = run(&["reduce", &fixture("int2.json"), "--subset", "e@0+,e@1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"], serde_json::json!(["0"]));
    assert_eq!(v["steps"][0]["certified"], serde_json::json!(true));

    let o = run(&["reduce", &fixture("int2.json"), "--subset", "e@1+"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("PreconditionViolated"));
}

#[test]
fn ring_flag() {
    let o = run(&["--ring", "fp:2", "homology", &fixture("torus.json")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["betti"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["ring"], serde_json::json!("fp:2"));
}
