use std::path::{Path, PathBuf};
use std::process::Command;

use addtop::corpus::f2xf2_instance;
use addtop::lincat::category_to_json;
use addtop::presheaf::Presheaf;
use addtop::topology::Topology;
use serde_json::Value;

fn addtop(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_addtop")).args(args).output().expect("binary runs");
    let text = String::from_utf8(out.stdout).expect("utf-8 report");
    let report = serde_json::from_str(&text).unwrap_or(Value::Null);
    (out.status.code().expect("exit code"), report, text)
}

fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p
}

struct Files {
    _dir: tempfile::TempDir,
    category: PathBuf,
    pretopology: PathBuf,
    topology: PathBuf,
    presheaf: PathBuf,
}

fn f2xf2_files() -> Files {
    let dir = tempfile::tempdir().unwrap();
    let k = f2xf2_instance();
    let c = &k.category;
    let category = write(dir.path(), "cat.json", &category_to_json(c));
    let pretopology = write(dir.path(), "pt.json", &k.pretopology("s_e1").unwrap().to_json(c));
    let e1 = addtop::sieve::generated_sieve(c, 0, &[c.basis_morphism(0, 0, 0)]).unwrap();
    let topology = write(dir.path(), "t.json", &Topology::from_min_sieves(c, vec![e1]).unwrap().to_json(c));
    let presheaf = write(dir.path(), "f.json", &Presheaf::representable(c, 0).to_json(c));
    Files { _dir: dir, category, pretopology, topology, presheaf }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn proj_hom_example() {
    let (code, report, _) = addtop(&["proj-hom", "--n", "1", "--d", "3", "--window", "10"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["dim"], 4);
    let (code, report, _) = addtop(&["proj-hom", "--n", "1", "--d", "-2", "--window", "10"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["dim"], 0);
}

#[test]
fn proj_hom_outside_window_is_a_resource_error() {
    let (code, report, _) = addtop(&["proj-hom", "--n", "1", "--d", "5", "--window", "3"]);
    assert_eq!(code, 3);
    assert!(report["results"]["error"].is_string());
}

#[test]
fn verify_roundtrip_suite() {
    let (code, report, _) = addtop(&["verify", "--suite", "roundtrip"]);
    assert_eq!(code, 0);
    let suite = &report["results"]["roundtrip"];
    assert_eq!(suite["passed"], true);
    assert!(suite["theorem"].is_string());
    assert_eq!(suite["instances"].as_array().unwrap().len(), 6);
}

#[test]
fn unknown_suite_is_an_input_error() {
    assert_eq!(addtop(&["verify", "--suite", "nope"]).0, 2);
}

#[test]
fn validate_accepts_and_rejects() {
    let f = f2xf2_files();
    let (code, report, _) = addtop(&["validate", s(&f.category)]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["valid"], true);

    let mut broken: Value = serde_json::from_str(&std::fs::read_to_string(&f.category).unwrap()).unwrap();
    broken["identity"]["*"] = serde_json::json!([1, 0]);
    let bad = write(f._dir.path(), "bad.json", &broken);
    assert_eq!(addtop(&["validate", s(&bad)]).0, 2);

    let truncated = f._dir.path().join("truncated.json");
    std::fs::write(&truncated, "{\"field\": ").unwrap();
    let (code, report, _) = addtop(&["validate", s(&truncated)]);
    assert_eq!(code, 2);
    assert!(report["results"]["error"].as_str().unwrap().contains("malformed JSON"));
}

#[test]
fn top_reports_verdicts_and_closure() {
    let f = f2xf2_files();
    let (code, report, _) = addtop(&["top", "--pretopology", s(&f.pretopology), s(&f.category)]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["PTa"]["status"], "Verified");
    assert_eq!(report["results"]["PTb"]["status"], "Verified");
    let expected = std::fs::read_to_string(&f.topology).unwrap();
    assert_eq!(report["results"]["topology"], serde_json::from_str::<Value>(&expected).unwrap());
    for role in ["args", "category", "pretopology"] {
        assert_eq!(report["inputs"][role].as_str().unwrap().len(), 64);
    }
}

#[test]
fn sheaf_commands() {
    let f = f2xf2_files();
    let (code, report, _) = addtop(&["check-sheaf", "--topology", s(&f.topology), "--presheaf", s(&f.presheaf), s(&f.category)]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["sheaf"], false);
    assert_eq!(report["results"]["separated"], false);
    let (_, via, _) = addtop(&["check-sheaf", "--pretopology", s(&f.pretopology), "--presheaf", s(&f.presheaf), s(&f.category)]);
    assert_eq!(via["results"]["sheafVia"], via["results"]["sheaf"]);
    let (code, report, _) = addtop(&["sheafify", "--topology", s(&f.topology), "--presheaf", s(&f.presheaf), s(&f.category)]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["sheaf"]["values"]["*"], 1);
    assert_eq!(report["results"]["inputIsSheaf"], false);
}

#[test]
fn enumeration_and_caps() {
    let f = f2xf2_files();
    let (code, report, _) = addtop(&["enumerate-topologies", s(&f.category)]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["count"], 4);
    assert_eq!(addtop(&["enumerate-topologies", "--max-sieves", "1", s(&f.category)]).0, 3);
}

#[test]
fn props_of_the_e1_topology() {
    let f = f2xf2_files();
    let (code, report, _) = addtop(&["props", "--topology", s(&f.topology), s(&f.category)]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["axioms"], true);
    assert_eq!(report["results"]["subcanonical"], false);
    assert_eq!(report["results"]["monoidal"], true);
}

#[test]
fn reports_are_deterministic_with_sorted_keys() {
    let f = f2xf2_files();
    let args = ["top", "--pretopology", s(&f.pretopology), s(&f.category)];
    let (_, _, first) = addtop(&args);
    let (_, _, second) = addtop(&args);
    assert_eq!(first, second);
    let (_, a, _) = addtop(&["verify", "--suite", "sheafification", "--seed", "7"]);
    let (_, b, _) = addtop(&["verify", "--suite", "sheafification", "--seed", "7"]);
    assert_eq!(a, b);
    let keys: Vec<&String> = a.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["command", "exitCode", "inputs", "results", "warnings"]);
    let top = first.find("\"command\"").unwrap();
    assert!(top < first.find("\"exitCode\"").unwrap() && first.find("\"exitCode\"").unwrap() < first.find("\"inputs\"").unwrap());
}

#[test]
fn corpus_lists_bundled_instances() {
    let (code, report, _) = addtop(&["corpus"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["instances"].as_array().unwrap().len(), 6);
}
