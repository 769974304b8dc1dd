use std::fs;
use std::process::{Command, Output};

use gaplab_core::canonical::are_isomorphic;
use gaplab_core::constructions::named_graph;
use gaplab_core::graph6::decode_graph6;
use serde_json::Value;

fn gaplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gaplab")).args(args).output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn invariants_of_r13_and_k2() {
    let o = gaplab(&["invariants", "--construct", "R13"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["gap"], 3);
    assert_eq!(v["theta"], 7);
    assert_eq!(v["zeta"], 7);

    let v = json(&gaplab(&["invariants", "--graph6", "A_"]));
    assert_eq!((v["n"].as_u64(), v["gap"].as_u64()), (Some(2), Some(0)));
}

#[test]
fn graph_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("c5.g6");
    fs::write(&p, "# five-cycle\nDhc\n").unwrap();
    let v = json(&gaplab(&["gap", "--file", p.to_str().unwrap()]));
    assert_eq!(v["gap"], 1);

    fs::write(&p, "Dhc\nDhc\n").unwrap();
    assert_eq!(code(&gaplab(&["gap", "--file", p.to_str().unwrap()])), 4);
}

#[test]
fn formula_queries() {
    let v = json(&gaplab(&["formula", "gap2", "--n", "17"]));
    assert_eq!(v["value"]["lo"], 4);
    assert_eq!(v["value"]["hi"], 4);
    assert!(v["provenance"].as_array().is_some_and(|p| !p.is_empty()));

    let o = gaplab(&["formula", "s2", "--t", "7"]);
    assert_eq!(json(&o)["value"]["lo"], 27);
    assert!(String::from_utf8_lossy(&o.stderr).contains("t=7"));

    let v = json(&gaplab(&["formula", "s-bounds", "--t", "5"]));
    assert_eq!(
        (v["value"]["lo"].as_i64(), v["value"]["hi"].as_i64()),
        (Some(20), Some(21))
    );

    let v = json(&gaplab(&["formula", "beta", "--n", "10", "--theta", "6"]));
    assert_eq!(
        (v["value"]["lo"].as_i64(), v["value"]["hi"].as_i64()),
        (Some(4), Some(5))
    );

    assert_eq!(code(&gaplab(&["formula", "beta", "--n", "10", "--theta", "2"])), 2);
}

#[test]
fn ramsey_commands() {
    let v = json(&gaplab(&["ramsey", "twins"]));
    assert_eq!(v["twins"], serde_json::json!([[3, 6], [6, 9]]));
    let v = json(&gaplab(&["ramsey", "perfect", "--n", "10"]));
    assert_eq!(v["ramsey_perfect"], "yes");
    assert_eq!(code(&gaplab(&["ramsey", "validate"])), 0);
}

#[test]
fn table_override() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("t.json");
    let table = gaplab(&["ramsey", "table"]).stdout;
    fs::write(&p, &table).unwrap();
    let v = json(&gaplab(&[
        "--table",
        p.to_str().unwrap(),
        "formula",
        "gap2",
        "--n",
        "17",
    ]));
    assert_eq!(v["value"]["lo"], 4);

    // R(3,7) = 21 contradicts the inequalities
    let mut t: Value = serde_json::from_slice(&table).unwrap();
    for e in t["r3"].as_array_mut().unwrap() {
        if e["l"] == 7 {
            e["lo"] = 21.into();
            e["hi"] = 21.into();
        }
    }
    fs::write(&p, t.to_string()).unwrap();
    assert_eq!(
        code(&gaplab(&["--table", p.to_str().unwrap(), "ramsey", "validate"])),
        1
    );

    fs::write(&p, "{not json").unwrap();
    assert_eq!(code(&gaplab(&["--table", p.to_str().unwrap(), "ramsey", "table"])), 4);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&gaplab(&["no-such-command"])), 2);
    assert_eq!(code(&gaplab(&["gap"])), 2);
    assert_eq!(code(&gaplab(&["gap", "--construct", "Nonsense"])), 2);
    assert_eq!(code(&gaplab(&["gap", "--graph6", "A"])), 4);
    assert_eq!(code(&gaplab(&["enumerate", "--n", "13"])), 3);
    assert_eq!(code(&gaplab(&["critical", "--construct", "R13", "--limit", "12"])), 3);
    assert_eq!(code(&gaplab(&["verify", "--suite", "nope"])), 2);
}

#[test]
fn construct_and_ingest() {
    let o = gaplab(&["construct", "R13", "--graph6"]);
    let g6 = String::from_utf8(o.stdout).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r13.g6");
    fs::write(&p, format!("# circulant\n{g6}")).unwrap();
    let v = json(&gaplab(&[
        "ingest",
        "ramsey-catalog",
        "--path",
        p.to_str().unwrap(),
        "--l",
        "5",
    ]));
    assert_eq!(v["count"], 1);
    // wrong order for l = 4
    let o = gaplab(&["ingest", "ramsey-catalog", "--path", p.to_str().unwrap(), "--l", "4"]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("validation"));

    let v = json(&gaplab(&["construct", "stable-gap-optimal", "--n", "14"]));
    assert_eq!(v["n"], 14);
    assert_eq!(code(&gaplab(&["construct", "stable-gap-optimal", "--n", "15"])), 4);
}

#[test]
fn graph_commands() {
    let v = json(&gaplab(&["critical", "--construct", "2C5"]));
    assert_eq!(v["full_critical"], true);
    let v = json(&gaplab(&["chain", "--construct", "R13"]));
    let gaps: Vec<u64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["gap"].as_u64().unwrap())
        .collect();
    assert_eq!(gaps.first(), Some(&3));
    assert_eq!(gaps.last(), Some(&0));
    let v = json(&gaplab(&["clique-helly", "--construct", "T6"]));
    assert_eq!(v["is_clique_helly"], false);
    let v = json(&gaplab(&["matching", "--construct", "C5"]));
    assert_eq!(
        (v["matching"]["size"].as_u64(), v["factor_critical"].as_bool()),
        (Some(2), Some(true))
    );
    let v = json(&gaplab(&["connectivity", "--construct", "2C5"]));
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
    let v = json(&gaplab(&["perfectness-gap", "--construct", "C5"]));
    assert_eq!(v["perfectness_gap"], 1);
}

#[test]
fn census_is_deterministic_across_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let a = gaplab(&["--jobs", "1", "census", "gap", "--n-max", "8", "--csv"]);
    let b = gaplab(&[
        "--jobs",
        "3",
        "census",
        "gap",
        "--n-max",
        "8",
        "--csv",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("5,34,1,")));
    let side = fs::read_to_string(dir.path().join("gap_n5.g6")).unwrap();
    let w = decode_graph6(side.trim()).unwrap();
    assert!(are_isomorphic(&w, &named_graph("C5").unwrap()));

    let v = json(&gaplab(&["enumerate", "--n", "6", "--count"]));
    assert_eq!(v[6]["count"], 156);
    let o = gaplab(&["enumerate", "--n", "5", "--triangle-free"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 14);
}

#[test]
fn verify_suites_and_recheck() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    for suite in ["ramsey-table", "s2-discrepancy", "structure"] {
        let o = gaplab(&["verify", "--suite", suite, "--out-dir", out]);
        assert_eq!(code(&o), 0, "{suite}");
        assert_eq!(json(&o)["verdict"], "PASS");
    }
    let o = gaplab(&["verify", "--suite", "s2-discrepancy", "--out-dir", out]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("discrepancy at t=7"));

    let cert = dir.path().join("ramsey-table.json");
    assert_eq!(code(&gaplab(&["verify", "--recheck", cert.to_str().unwrap()])), 0);
    let mut c: Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    c["evidence"]["perfect_up_to_39"] = serde_json::json!([10, 20]);
    fs::write(&cert, c.to_string()).unwrap();
    assert_eq!(code(&gaplab(&["verify", "--recheck", cert.to_str().unwrap()])), 1);
}

#[test]
fn property_suite_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let run = || {
        let o = gaplab(&[
            "--seed",
            "3",
            "verify",
            "--suite",
            "properties",
            "--cases",
            "2000",
            "--out-dir",
            out,
        ]);
        assert_eq!(code(&o), 0);
        fs::read(dir.path().join("property-suites.json")).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn small_extremal_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = gaplab(&[
        "verify",
        "--suite",
        "small-extremal",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["verdict"], "PASS");
    let ids: Vec<&str> = v["claims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["claim"].as_str().unwrap())
        .collect();
    assert!(ids.contains(&"unique-2-extremal") && ids.contains(&"r13-unique-35-ramsey"));
    for id in ids {
        let p = dir.path().join(format!("{id}.json"));
        assert_eq!(code(&gaplab(&["verify", "--recheck", p.to_str().unwrap()])), 0, "{id}");
    }
}
