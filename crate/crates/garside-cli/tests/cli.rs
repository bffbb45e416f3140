use std::path::PathBuf;
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;

use garside_cli::dot::check_dot;
use garside_cli::{parse_spec, print_spec};
use garside_core::spec::{ArtinSpec, CompDecl, EdgeDecl, ExplicitSpec, MorDecl, PathSpec, SquareDecl};
use garside_core::CategorySpec;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{}.cat", name)).to_str().unwrap().to_string()
}

fn garside(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_garside")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_temp(name: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("garside-cli-test-{}-{}.cat", std::process::id(), name));
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn normal_form_of_a_braid_word() {
    let out = garside(&[&fixture("b3"), "--format", "text", "normal-form", "abab"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "aba.b\n");

    let j = json(&garside(&[&fixture("b3"), "normal-form", "abab"]));
    assert_eq!(j["command"], "normal-form");
    assert_eq!(j["result"]["letters"], serde_json::json!(["aba", "b"]));
    assert_eq!(j["input"]["backend"], "artin");
}

#[test]
fn braid_classification_is_a_chain() {
    let j = json(&garside(&[&fixture("b3"), "classify"]));
    let pairs = j["result"]["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 4);
    assert_eq!(pairs[1]["t"], serde_json::json!(["aba"]));
    assert_eq!(j["result"]["hasse"], serde_json::json!([[0, 1], [1, 2], [2, 3]]));
    assert_eq!(j["result"]["boundary"]["t"], serde_json::json!(["aba"]));
    assert_eq!(j["result"]["boundary"]["exact"], true);
}

#[test]
fn free_monoid_criteria() {
    let out = garside(&[&fixture("free"), "--depth", "3", "check", "all"]);
    assert!(out.status.success());
    let j = json(&out);
    let reports = j["result"]["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 11);
    let status = |name: &str| {
        let r = reports.iter().find(|r| r["criterion"] == name).unwrap();
        r["verdict"]["status"].as_str().unwrap().to_string()
    };
    assert_eq!(status("hausdorff"), "holds");
    assert_eq!(status("boundary-minimal"), "holds");
    assert_eq!(status("boundary-topfree"), "holds");
    let pure = reports.iter().find(|r| r["criterion"] == "pure-inf").unwrap();
    assert_eq!(pure["verdict"]["status"], "holds");
    let witness: Vec<&str> = pure["verdict"]["witness"].as_array().unwrap().iter().map(|w| w["element"].as_str().unwrap()).collect();
    assert_eq!(witness, ["a", "b"]);
}

#[test]
fn single_criterion_and_unknown_names() {
    let j = json(&garside(&[&fixture("square2"), "check", "boundary-topfree"]));
    assert_eq!(j["result"]["reports"][0]["verdict"]["status"], "fails");

    let out = garside(&[&fixture("square2"), "check", "nonsense"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown criterion"));
}

#[test]
fn separators() {
    let j = json(&garside(&[&fixture("free"), "gc", "a/b"]));
    assert_eq!(j["result"]["separated"], true);
    let j = json(&garside(&[&fixture("b3"), "gc", "a/b"]));
    assert_eq!(j["result"]["separated"], false);
    assert_eq!(j["result"]["certain"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(garside(&[&fixture("free"), "validate"]).status.code(), Some(0));

    let bad = write_temp("bad", "backend artin\nm a b 1\n");
    let out = garside(&[&bad, "validate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2, column 7"));

    let incomplete = write_temp("incomplete", "backend kgraph\nvertex v\nedge e v v\nedge f v v color 2\n");
    let out = garside(&[&incomplete, "validate"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["valid"], false);

    let affine = write_temp("affine", "backend artin\natoms a b c\nm a b 3\nm b c 3\nm a c 3\n");
    assert_eq!(garside(&[&affine, "--fuel", "50", "classify"]).status.code(), Some(2));

    assert_eq!(garside(&["/nonexistent/spec.cat", "validate"]).status.code(), Some(1));
    assert_eq!(garside(&[&fixture("free"), "--format", "dot", "classify"]).status.code(), Some(1));
}

#[test]
fn dot_exports_are_well_formed() {
    for name in ["b3", "free", "square2", "flip", "fork"] {
        for target in ["lattice", "skeleton"] {
            let out = garside(&[&fixture(name), "export-dot", target]);
            assert!(out.status.success(), "{} {}", name, target);
            let text = String::from_utf8(out.stdout).unwrap();
            check_dot(&text).unwrap_or_else(|e| panic!("{} {}: {}", name, target, e));
        }
    }
    let j = json(&garside(&[&fixture("b3"), "--format", "json", "export-dot", "lattice"]));
    assert!(check_dot(j["result"]["dot"].as_str().unwrap()).is_ok());
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("garside-cli-test-{}-out.json", std::process::id()));
    let out = garside(&[&fixture("nat"), "boundary", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["result"]["t"], serde_json::json!(["a"]));
}

#[test]
fn jobs_do_not_change_output() {
    for name in ["flip", "b3"] {
        let one = garside(&[&fixture(name), "--jobs", "1", "classify"]).stdout;
        let four = garside(&[&fixture(name), "--jobs", "4", "classify"]).stdout;
        assert_eq!(one, four, "{}", name);
    }
}

#[test]
fn fixtures_round_trip_through_the_printer() {
    for entry in std::fs::read_dir(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let spec = parse_spec(&text).unwrap();
        assert_eq!(parse_spec(&print_spec(&spec)).unwrap(), spec);
    }
}

fn name() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,4}"
}

fn path_spec(squares: bool) -> impl Strategy<Value = PathSpec> {
    let edge = (name(), name(), name(), 1usize..4).prop_map(|(name, src, dst, color)| EdgeDecl { name, src, dst, color });
    let square = (name(), name(), name(), name()).prop_map(|(first, second, third, fourth)| SquareDecl { first, second, third, fourth });
    let max_squares = if squares { 4 } else { 0 };
    (prop::collection::vec(name(), 0..4), prop::collection::vec(edge, 0..6), prop::collection::vec(square, 0..=max_squares))
        .prop_map(|(vertices, edges, squares)| PathSpec { vertices, edges, squares })
}

fn spec() -> impl Strategy<Value = CategorySpec> {
    let graph = path_spec(false).prop_map(|mut p| {
        for e in &mut p.edges {
            e.color = 1;
        }
        CategorySpec::GraphPath(p)
    });
    let kgraph = path_spec(true).prop_map(CategorySpec::KGraph);
    let m = (name(), name(), prop::option::of(2u32..12));
    let artin = (prop::collection::vec(name(), 0..5), prop::collection::vec(m, 0..5))
        .prop_map(|(atoms, m)| CategorySpec::Artin(ArtinSpec { atoms, m }));
    let mor = (name(), name(), name()).prop_map(|(name, src, dst)| MorDecl { name, src, dst });
    let comp = (name(), name(), name()).prop_map(|(f, g, h)| CompDecl { f, g, h });
    let explicit = (prop::collection::vec(name(), 0..4), prop::collection::vec(mor, 0..5), prop::collection::vec(comp, 0..5))
        .prop_map(|(objects, mors, comps)| CategorySpec::Explicit(ExplicitSpec { objects, mors, comps }));
    prop_oneof![graph, kgraph, artin, explicit]
}

proptest! {
    #[test]
    fn printed_specs_parse_back(s in spec()) {
        let text = print_spec(&s);
        prop_assert_eq!(parse_spec(&text).unwrap(), s);
    }

    #[test]
    fn parser_never_panics(text in "(backend (artin|kgraph|explicit)\n)?([a-z=# 0-9]{0,12}\n){0,6}") {
        let _ = parse_spec(&text);
    }
}
