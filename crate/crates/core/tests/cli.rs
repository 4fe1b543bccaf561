use std::path::PathBuf;
use std::process::Command;

use segalbar::finset::FinMonoid;
use segalbar::sset::TruncSSet;

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn segalbar_env(args: &[&str], cap: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_segalbar"));
    cmd.args(args).current_dir(manifest_dir()).env_remove("SEGALBAR_MAX_SIZE");
    if let Some(c) = cap {
        cmd.env("SEGALBAR_MAX_SIZE", c);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).expect("utf-8"),
        stderr: String::from_utf8(out.stderr).expect("utf-8"),
        code: out.status.code().expect("exit code"),
    }
}

fn segalbar(args: &[&str]) -> Run {
    segalbar_env(args, None)
}

/// Runs twice, checks the runs agree byte for byte and match the stored
/// output. `UPDATE_GOLDEN=1` rewrites the stored file.
fn golden(name: &str, args: &[&str], code: i32) {
    let first = segalbar(args);
    let second = segalbar(args);
    assert_eq!(first.stdout, second.stdout, "{name}: output differs between runs");
    assert_eq!(first.code, code, "{name}: exit code; stderr: {}", first.stderr);
    assert_eq!(second.code, code);
    let path = manifest_dir().join("tests/golden").join(format!("{name}.txt"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &first.stdout).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(first.stdout, expected, "{name}: output differs from {}", path.display());
}

#[test]
fn hom_lists_the_unique_arrow_2_to_1() {
    let r = segalbar(&["hom", "total", "2", "1"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "2→1:[0,0]\n1 arrow\n");
    let r = segalbar(&["hom", "total", "3", "3", "--count"]);
    assert_eq!(r.stdout, "10 arrows\n");
    golden("hom_partial_2_2", &["hom", "partial", "2", "2"], 0);
    golden("hom_op_1_2", &["hom", "op", "1", "2"], 0);
}

#[test]
fn map_arithmetic() {
    let r = segalbar(&["compose", "2→1:[0,0]", "3→2:[0,0,1]"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "3→1:[0,0,0]\n"));
    let r = segalbar(&["compose", "1⇀0:[_]", "2->1:[0,0]"]);
    assert_eq!(r.stdout, "2⇀0:[_,_]\n");
    let r = segalbar(&["compose", "op(3→3:[0,1,2])", "op(3→2:[0,0,1])"]);
    assert_eq!(r.stdout, "op(3→2:[0,0,1])\n");
    let r = segalbar(&["compose", "--interval", "3→2:[0,0,1]", "4→3:[0,1,1,2]"]);
    assert_eq!(r.stdout, "4→2:[0,0,0,1]\n");
    let r = segalbar(&["tensor", "2→1:[0,0]", "0→1:[]"]);
    assert_eq!(r.stdout, "2→2:[0,0]\n");
    let r = segalbar(&["tensor", "1⇀0:[_]", "1→1:[0]"]);
    assert_eq!(r.stdout, "2⇀1:[_,0]\n");
}

#[test]
fn functors_on_the_command_line() {
    let r = segalbar(&["jmap", "op(2→3:[0,2])"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "4→3:[0,1,1,2]\n"));
    let r = segalbar(&["hmap", "4→3:[0,1,1,2]"]);
    assert_eq!(r.stdout, "2⇀1:[0,0]\n");
    let r = segalbar(&["hjmap", "op(2→3:[0,2])"]);
    assert_eq!(r.stdout, "2⇀1:[0,0]\n");
    let r = segalbar(&["hjmap", "op(2→1:[0,0])"]);
    assert_eq!(r.stdout, "0⇀1:[]\n");
    let r = segalbar(&["hjmap", "op(1→2:[0])"]);
    assert_eq!(r.stdout, "1⇀0:[_]\n");
    let r = segalbar(&["hjmap", "op(3→2:[0,0,1])"]);
    assert_eq!(r.stdout, "1⇀2:[1]\n");
}

#[test]
fn pictures() {
    let r = segalbar(&["render", "2→1:[0,0]"]);
    assert_eq!(r.stdout, "2→1:[0,0]\n0   1\n*   *\n \\ /\n  *\n  0\n");
    golden("render_eta1", &["render", "0→1:[]"], 0);
    golden("render_mu1_dot", &["render", "2→1:[0,0]", "--format", "dot"], 0);
    golden("render_op", &["render", "op(3→2:[0,0,1])"], 0);
    golden("render_partial", &["render", "3⇀2:[_,0,1]"], 0);
    golden("render_interval", &["render", "--interval", "4→3:[0,1,1,2]"], 0);
}

#[test]
fn every_shipped_monoid_nerve_is_strictly_segal() {
    let dir = tempfile::tempdir().unwrap();
    let mut files: Vec<_> = std::fs::read_dir(manifest_dir().join("data/monoids"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert!(files.len() >= 5);
    for monoid in files {
        let r = segalbar(&["nerve", monoid.to_str().unwrap(), "--N", "4"]);
        assert_eq!(r.code, 0, "{}: {}", monoid.display(), r.stderr);
        let sset = dir.path().join("x.json");
        std::fs::write(&sset, &r.stdout).unwrap();
        let check = segalbar(&["segal-check", sset.to_str().unwrap(), "--mode", "strict"]);
        assert_eq!(check.code, 0, "{}: {}", monoid.display(), check.stdout);
        let back = segalbar(&["reconstruct", sset.to_str().unwrap()]);
        assert_eq!(back.code, 0);
        let original = FinMonoid::from_json(&std::fs::read_to_string(&monoid).unwrap()).unwrap();
        assert_eq!(FinMonoid::from_json(&back.stdout).unwrap(), original);
        let eq = segalbar(&["bar-equal", sset.to_str().unwrap(), monoid.to_str().unwrap()]);
        assert_eq!(eq.code, 0, "{}", eq.stdout);
    }
}

#[test]
fn reconstruct_round_trip_on_shipped_nerve() {
    let r = segalbar(&["reconstruct", "data/ssets/nerve_z3.json"]);
    assert_eq!(r.code, 0);
    let shipped = std::fs::read_to_string(manifest_dir().join("data/monoids/z3.json")).unwrap();
    assert_eq!(
        FinMonoid::from_json(&r.stdout).unwrap(),
        FinMonoid::from_json(&shipped).unwrap()
    );
    golden("reconstruct_z3", &["reconstruct", "data/ssets/nerve_z3.json"], 0);
    let r = segalbar(&["bar-equal", "data/ssets/nerve_z3.json", "data/monoids/z3.json"]);
    assert_eq!(r.code, 0);
    let r = segalbar(&["bar-equal", "data/ssets/nerve_z3.json", "data/monoids/z2.json"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("level 1"), "{}", r.stdout);
}

#[test]
fn shipped_nerve_matches_the_library() {
    let text = std::fs::read_to_string(manifest_dir().join("data/ssets/nerve_z3.json")).unwrap();
    let x = TruncSSet::from_json(&text).unwrap();
    assert_eq!(x, segalbar::segal::nerve(&segalbar::finset::cyclic(3), 3));
}

#[test]
fn constant_two_point_set_fails_with_witnesses() {
    let r = segalbar(&["segal-check", "data/ssets/constant2.json", "--mode", "bijective"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("level 0: FAIL: X0 has 2 elements, expected 1"), "{}", r.stdout);
    assert!(r.stdout.contains("level 2: FAIL: no simplex maps to [p, q]"), "{}", r.stdout);
    golden("segal_check_constant2", &["segal-check", "data/ssets/constant2.json"], 1);
    let r = segalbar(&["reconstruct", "data/ssets/constant2.json"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("level 0"), "{}", r.stdout);
}

#[test]
fn bisimplicial_commands() {
    golden("double_nerve_z2", &["double-nerve", "data/monoids/z2.json", "--N", "2", "--M", "2"], 0);
    let shipped = std::fs::read_to_string(manifest_dir().join("data/bissets/double_z2.json")).unwrap();
    let r = segalbar(&["double-nerve", "data/monoids/z2.json", "--N", "2", "--M", "2"]);
    assert_eq!(r.stdout, shipped);
    golden("bisegal_check_z2", &["bisegal-check", "data/bissets/double_z2.json"], 0);
    golden("eckmann_hilton_z2", &["eckmann-hilton", "data/bissets/double_z2.json"], 0);
    golden("summary_double_z2", &["summary", "data/bissets/double_z2.json"], 0);
    golden("summary_nerve_z3", &["summary", "data/ssets/nerve_z3.json"], 0);

    let r = segalbar(&["double-nerve", "data/monoids/left_absorbing.json", "--N", "2", "--M", "2"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.stdout, "not commutative: a·b ≠ b·a\n");
    assert!(r.stderr.is_empty());
}

#[test]
fn mutated_bisimplicial_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(manifest_dir().join("data/bissets/double_z2.json")).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let entry = &mut doc["vfaces"]["2,2,1"];
    let first = entry[0].clone();
    entry[0] = entry[1].clone();
    entry[1] = first;
    let path = dir.path().join("bad.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let r = segalbar(&["bisegal-check", path.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("invariant violations"), "{}", r.stderr);
}

#[test]
fn eckmann_hilton_needs_depth_two() {
    let dir = tempfile::tempdir().unwrap();
    let r = segalbar(&["double-nerve", "data/monoids/z2.json", "--N", "1", "--M", "2"]);
    let path = dir.path().join("shallow.json");
    std::fs::write(&path, &r.stdout).unwrap();
    let r = segalbar(&["eckmann-hilton", path.to_str().unwrap()]);
    assert_eq!(r.code, 2);
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    let g = garbage.to_str().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["segal-check", g],
        vec!["reconstruct", "does/not/exist.json"],
        vec!["nerve", "data/invalid/not_associative.json"],
        vec!["nerve", "data/monoids/z2.json", "--N", "6"],
        vec!["compose", "2→1:[0,0]", "2→2:[0,1"],
        vec!["compose", "2→1:[0,0]", "3→3:[0,1,2]"],
        vec!["compose", "op(1→1:[0])", "1→1:[0]"],
        vec!["hom", "total", "7", "1"],
        vec!["hom", "cubical", "1", "1"],
        vec!["hmap", "3→2:[1,1,1]"],
        vec!["jmap", "2→1:[0,0]"],
        vec!["render", "2→1:[0,0]", "--format", "svg"],
        vec!["segal-check", "data/ssets/constant2.json", "--mode", "loose"],
        vec!["verify", "--max-size", "5"],
        vec!["double-nerve", "data/monoids/z3.json", "--N", "4", "--M", "4"],
        vec!["bisegal-check", "data/ssets/nerve_z3.json"],
        vec!["frobnicate"],
    ];
    for args in cases {
        let r = segalbar(&args);
        assert_eq!(r.code, 2, "{args:?}: stdout {} stderr {}", r.stdout, r.stderr);
        assert!(!r.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn verify_small_sweep_and_env_cap() {
    golden("verify_2", &["verify", "--max-size", "2"], 0);
    let r = segalbar_env(&["verify", "--max-size", "3"], Some("1"));
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.starts_with("verify, max size 1\n"));
    let r = segalbar_env(&["verify", "--max-size", "2"], Some("lots"));
    assert_eq!(r.code, 2);
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(segalbar(&["--help"]).code, 0);
    assert_eq!(segalbar(&["--version"]).code, 0);
    assert_eq!(segalbar(&[]).code, 2);
}
