use std::process::{Command, Output};

use superorbit::corpus;
use superorbit::document::{parse_algebra, SystemDoc};
use superorbit::polarize::verify_polarizing_system;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superorbit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn documented_examples() {
    let o = run(&["validate", "heisenberg.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "valid; nilpotent, class 2; center dim 1");

    let o = run(&["kappa", "hc_1_2_pp.json", "--lambda", "0:1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "kappa = 3");

    let o = run(&["svn", "hc_0_2_pm.json", "--b", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "no irreducible unitary representation (indefinite form)");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["validate", "/no/such/file.json"]).status.code(), Some(1));
    assert_eq!(run(&["kappa", "hc_0_2_pm", "--lambda", "0:1"]).status.code(), Some(2));
    assert_eq!(run(&["kappa", "heisenberg", "--lambda", "7:1"]).status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let truncated = dir.path().join("truncated.json");
    std::fs::write(&truncated, "{\"dim_even\":").unwrap();
    assert_eq!(run(&["validate", truncated.to_str().unwrap()]).status.code(), Some(2));
    // an even self-bracket must vanish
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"dim_even": 1, "dim_odd": 0, "brackets": [{"i": 0, "j": 0, "out": {"0": "1"}}]}"#).unwrap();
    assert_eq!(run(&["validate", bad.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn document_mode_is_valid_json_and_rechecks() {
    let o = run(&["system", "hc_1_1_p", "--lambda", "0:2,1:1", "--format", "document"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: SystemDoc = serde_json::from_slice(&o.stdout).unwrap();
    let (l, s) = doc.to_system().unwrap();
    assert!(verify_polarizing_system(&l, &s).passed());
    assert_eq!(s.kappa(), 2);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("system.json");
    std::fs::write(&path, &o.stdout).unwrap();
    assert_eq!(run(&["system", "--recheck", path.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn examples_write_the_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["examples", "--write", dir.path().to_str().unwrap(), "--samples", "1"]);
    assert_eq!(o.status.code(), Some(0));
    for (name, l) in corpus::corpus() {
        let path = dir.path().join(format!("{name}.json"));
        let text = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("{name}.json missing"));
        assert_eq!(parse_algebra(&text).unwrap(), l, "{name}");
        assert_eq!(run(&["validate", path.to_str().unwrap()]).status.code(), Some(0), "{name}");
    }
    let listing = stdout(&run(&["examples"]));
    assert!(listing.contains("heisenberg (3|0)") && listing.contains("filiform_odd (4|2)"));
}

#[test]
fn seeded_check_is_reproducible() {
    let a = run(&["examples", "--check", "--samples", "2", "--seed", "99"]);
    let b = run(&["examples", "--check", "--samples", "2", "--seed", "99"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
