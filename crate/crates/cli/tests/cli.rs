use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_torsionlab")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, s) = run(&a);
    (code, serde_json::from_str(&s).unwrap())
}

#[test]
fn ring_info_and_ideals() {
    let (code, v) = json(&["ring", "info", "--ring", "Z/4 * F3"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["payload"]["ideals"], 6);
    let (_, v) = json(&["ideal", "op", "--ring", "Z/12", "--op", "annihilator", "--left", "(4)"]);
    assert_eq!(v["payload"]["result"], "(3)");
    let (_, v) = json(&["ideal", "list", "--ring", "F2[x]/(x^2)"]);
    assert_eq!(v["payload"]["count"], 3);
}

#[test]
fn filters() {
    let (_, v) = json(&["filter", "generate", "--ring", "Z/12", "--seeds", "(2)"]);
    assert_eq!(v["payload"]["basis"][0][0], "4");
    let (_, v) = json(&["filter", "list", "--ring", "Z/6"]);
    assert_eq!(v["payload"]["count"], 4);
    let (code, _) = json(&["filter", "from-spec", "--ring", "Z", "--primes", "(2);(3)"]);
    assert_eq!(code, 0);
    let (code, v) = json(&["filter", "validate", "--ring", "Z/12", "--basis", "(2)"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdicts"][0]["verdict"], "fail");
    assert!(v["verdicts"][0]["witness"].is_array());
}

#[test]
fn verification_and_constructions() {
    for args in [
        vec!["verify", "bijection", "--ring", "Z/12"],
        vec!["verify", "bijection", "--ring", "Z", "--seeds", "(6)"],
        vec!["verify", "duality", "--ring", "F2[x]/(x^2)"],
        vec!["verify", "construction", "--ring", "Z/6"],
        vec!["construct", "silting", "--ring", "Z/12", "--seeds", "(2)", "--gens", "(2):[2,6]"],
        vec!["construct", "cosilting", "--ring", "Z/12", "--seeds", "(4)"],
        vec!["classify", "--ring", "Z/12", "--module", "R/(4) (+) R/(3)"],
    ] {
        let (code, v) = json(&args);
        assert_eq!(code, 0, "{args:?}");
        assert!(v["verdicts"].as_array().unwrap().iter().all(|x| x["verdict"] == "pass"));
    }
    let (_, v) = json(&["construct", "cosilting", "--ring", "Z/12", "--seeds", "(4)"]);
    assert_eq!(v["payload"]["C_size"], "3");
}

#[test]
fn deterministic_output_and_timing_apart() {
    let args = ["verify", "bijection", "--ring", "Z/12", "--json"];
    assert_eq!(run(&args).1, run(&args).1);
    let (_, v) = json(&["ring", "info", "--ring", "Z/6", "--timing"]);
    assert!(v["timing"]["seconds"].is_number());
    assert!(v["payload"].get("timing").is_none());
}

#[test]
fn catalogue_and_errors() {
    let dir = std::env::temp_dir().join(format!("torsionlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let empty = dir.join("empty.txt");
    std::fs::write(&empty, "# nothing here\n").unwrap();
    let (code, v) = json(&["catalogue", "run", "--file", empty.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["rings"].as_array().unwrap().len(), 0);
    let big = dir.join("big.txt");
    std::fs::write(&big, "Z/6\nZ/4096 * Z/4096\n").unwrap();
    let (code, v) = json(&["catalogue", "run", "--file", big.to_str().unwrap()]);
    assert_ne!(code, 0);
    assert_eq!(v["payload"]["failed"], 1);
    let out = dir.join("report.json");
    let (code, s) = run(&["catalogue", "run", "--json", "--out", out.to_str().unwrap()]);
    assert_eq!((code, s.as_str()), (0, ""));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["payload"]["rings"].as_array().unwrap().len(), 7);
    let (code, _) = run(&["ring", "info", "--ring", "Z/(3"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["ring", "info", "--ring", "Z/6", "--bogus"]);
    assert_ne!(code, 0);
    let (code, _) = run(&["filter", "generate", "--ring", "Z/6", "--seeds", "(2)"]);
    assert_eq!(code, 0);
}

#[test]
fn guard_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_torsionlab"))
        .args(["ring", "info", "--ring", "Z/12"])
        .env("TORSIONLAB_GUARD", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
