//! The `herbrand` binary end to end.

use std::io::Write;
use std::process::{Command, Output};

use herbrand::semantics::{parse_value, Bound, Model};
use herbrand::syntax::{parse_target, parse_type, print_target};

const RUNNING: &str = "forall^st n:N. exists^st m:N. n = m";

fn herbrand(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_herbrand"))
        .args(args)
        .env_remove("HERBRAND_BUDGET")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = format!("{}/schemas/{name}", env!("CARGO_MANIFEST_DIR"));
    let s: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&s).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, doc: &serde_json::Value) {
    let errs: Vec<String> = v.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errs.is_empty(), "{errs:#?}");
}

#[test]
fn types_line() {
    let o = herbrand(&["types", RUNNING]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "up+: (N -> N*)*  up-: N  down+: N -> N*  down-: N\n");
}

#[test]
fn formula_from_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# running example").unwrap();
    writeln!(f, "forall^st n:N.").unwrap();
    writeln!(f, "  exists^st m:N. n = m").unwrap();
    let arg = format!("@{}", f.path().display());
    let o = herbrand(&["types", &arg]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("up+: (N -> N*)*"));
}

#[test]
fn types_json_matches_schema() {
    let v = schema("types.schema.json");
    for e in herbrand::verifier::default_corpus() {
        let text = herbrand::syntax::print_formula(&e.formula);
        let o = herbrand(&["types", &text, "--json"]);
        assert_eq!(o.status.code(), Some(0));
        let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_valid(&v, &doc);
        for part in ["up", "down"] {
            for sign in ["positive", "negative"] {
                for t in doc[part][sign].as_array().unwrap() {
                    parse_type(t.as_str().unwrap()).unwrap();
                }
            }
        }
    }
}

#[test]
fn translate_json_matches_schema_and_reparses() {
    let v = schema("translation.schema.json");
    for e in herbrand::verifier::default_corpus() {
        let text = herbrand::syntax::print_formula(&e.formula);
        for p in ["up", "down"] {
            let o = herbrand(&["translate", &text, "--presentation", p, "--json"]);
            assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
            let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
            assert_valid(&v, &doc);
            let body = doc["body"].as_str().unwrap();
            assert_eq!(print_target(&parse_target(body).unwrap()), body);
        }
    }
}

#[test]
fn translate_text() {
    let o = herbrand(&["translate", RUNNING, "--presentation", "down"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("body: exists m in r#0 u#0. u#0 = m\n"), "{}", stdout(&o));
}

#[test]
fn verify_json_matches_schema() {
    let o = herbrand(&["verify", "--json", "-"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_valid(&schema("report.schema.json"), &doc);
    let reports = doc["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 13 * 11);
    assert!(reports.iter().all(|r| r["status"] != "Fail"));
}

#[test]
fn verify_mutation_fails_with_schema_valid_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = herbrand(&["verify", "--mutate", "sq-equality", "--ids", "order_implication", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_valid(&schema("report.schema.json"), &doc);
    let failed: Vec<&serde_json::Value> = doc["reports"].as_array().unwrap().iter().filter(|r| r["status"] == "Fail").collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|r| r["mutation"] == "sq-equality"));
}

#[test]
fn verify_custom_corpus() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("a.hfi"), format!("# only one\n{RUNNING}\n")).unwrap();
    std::fs::write(dir.path().join("ignored.txt"), "junk").unwrap();
    let o = herbrand(&["verify", "--corpus", dir.path().to_str().unwrap(), "--ids", "THM_MAIN_1", "--json", "-"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let reports = doc["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["name"], "a");
}

#[test]
fn witness_exit_codes() {
    let yes = herbrand(&["check", "--formula", RUNNING, "--witness", "{fun n:N => {n}}", "--k", "5"]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(stdout(&yes), "WITNESS: yes (checked n=0..5)\n");
    let no = herbrand(&["check", "--formula", RUNNING, "--witness", "{fun n:N => {succ n}}"]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(stdout(&no), "WITNESS: no (counterexample: n=0)\n");
}

#[test]
fn sat_with_counter() {
    let o = herbrand(&["check", "--formula", RUNNING, "--presentation", "down", "--witness", "fun n:N => {n}", "--counter", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "SAT: yes (k=2)\n");
}

#[test]
fn errors_exit_two() {
    for args in [
        vec!["types", "forall n:N. n = "],
        vec!["types", "x = 0 \\/ x = 1"],
        vec!["check", "--formula", RUNNING, "--witness", "{}"],
        vec!["check", "--formula", RUNNING, "--witness", "fun n:N => {n}"],
        vec!["order", "--kind", "preceq", "--type", "N", "0", "1"],
        vec!["verify", "--k", "0"],
        vec!["frobnicate"],
    ] {
        let o = herbrand(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stdout(&o));
        assert!(!stderr(&o).is_empty(), "{args:?}");
    }
}

#[test]
fn help_goes_to_stdout() {
    let o = herbrand(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify"));
}

#[test]
fn budget_from_environment() {
    let args = ["verify", "--ids", "ORDER_IMPLICATION", "--json", "-"];
    let small = Command::new(env!("CARGO_BIN_EXE_herbrand")).args(args).env("HERBRAND_BUDGET", "8").output().unwrap();
    let big = Command::new(env!("CARGO_BIN_EXE_herbrand")).args(args).env("HERBRAND_BUDGET", "200000").output().unwrap();
    let budget = |o: &Output| -> Vec<serde_json::Value> {
        let doc: serde_json::Value = serde_json::from_str(&stdout(o)).unwrap();
        doc["reports"].as_array().unwrap().iter().map(|r| r["bound"]["budget"].clone()).collect()
    };
    assert!(budget(&small).iter().all(|b| b == 8));
    assert!(budget(&big).iter().all(|b| b == 200000));
}

#[test]
fn convert_output_reparses() {
    let o = herbrand(&["convert", "--formula", RUNNING, "--dir", "down-pos", "--value", "{fun n:N => {n}, fun n:N => {succ n}}", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text, "fun-table [0 => {0,1}, 1 => {1,2}, 2 => {2,3}, 3 => {3}]\n");
    let m = Model::new(Bound::new(3, 4096, 0).unwrap()).unwrap();
    let v = parse_value(text.trim_end(), &parse_type("N -> N*").unwrap(), &m).unwrap();
    assert_eq!(v.to_string(), text.trim_end());
}

#[test]
fn convert_emit_term() {
    let o = herbrand(&["convert", "--formula", RUNNING, "--dir", "down-pos", "--emit-term"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("input x#0 : (N -> N*)*\n"), "{text}");
    assert!(text.trim_end().ends_with(" : N -> N*"), "{text}");
}

#[test]
fn order_commands() {
    let t1 = "{fun n:N => {n}, fun n:N => {succ n}}";
    let t2 = "{fun n:N => {n, succ n}}";
    let cases = [
        (vec!["order", "--kind", "sq", "--formula", RUNNING, t1, t2], "sq: true (k=2)\n"),
        (vec!["order", "--kind", "sq", "--formula", RUNNING, t2, t1], "sq: true (k=2)\n"),
        (vec!["order", "--kind", "subset", "--formula", RUNNING, t1, t2], "subset: false (k=2)\n"),
        (vec!["order", "--kind", "preceq", "--type", "N*", "{0}", "{0, 1}"], "preceq: true (k=2)\n"),
        (vec!["order", "--kind", "preceq", "--type", "N -> N*", "fun n:N => {n}", "fun n:N => {n, succ n}"], "preceq: true (k=2)\n"),
        (vec!["order", "--kind", "preceq", "--type", "N -> N*", "fun n:N => {n, succ n}", "fun n:N => {n}"], "preceq: false (k=2)\n"),
    ];
    for (args, want) in cases {
        let o = herbrand(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        assert_eq!(stdout(&o), want, "{args:?}");
    }
}
