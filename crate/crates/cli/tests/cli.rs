use std::process::{Command, Output};

use serde_json::Value;

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");

fn fixture(name: &str) -> String {
    format!("{FIXTURES}/{name}")
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_omega"));
    cmd.args(args).env_remove("OMEGA_STEP_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is one JSON document")
}

fn ok(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    json(&o)
}

#[test]
fn copy_duplicator_wins_on_growing_blocks() {
    let v = ok(&[
        "game", "play", "--word", "blocks(a,b;affine 1 0)", "--oracle", "U", "--spoiler", "random", "--duplicator", "copy",
        "--horizon", "10", "--seed", "7",
    ]);
    assert_eq!(v["winner"], "duplicator");
    assert_eq!(v["transcript"]["horizon"], 10);
}

#[test]
fn stored_transcripts_validate() {
    let dir = std::env::temp_dir().join(format!("omega-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.json");
    let path = path.to_str().unwrap();
    ok(&["game", "play", "--word", "(aab)^w", "--oracle", "Uprime", "--spoiler", "diverging", "--output", path]);
    let v = ok(&["game", "validate", path, "--oracle", "Uprime"]);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    assert_eq!(v["matches_recorded"], true);
    assert_eq!(v["verdict"]["winner"], "spoiler");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn arnold_classes_of_the_unbounded_language() {
    let v = ok(&["congruence", "arnold", "--oracle", "U", "--word-bound", "4", "--context-bound", "3"]);
    assert_eq!(v["count"], 2);
    assert_eq!(v["transitive"], true);
}

#[test]
fn prime_blocks_have_one_right_class() {
    let v = ok(&["congruence", "right", "--oracle", "primes", "--word-bound", "3", "--tail-bound", "3"]);
    assert_eq!(v["count"], 1);
}

#[test]
fn satisfiable_formula_has_a_validated_model() {
    let v = ok(&["mso", "sat", &fixture("inf_a_and_inf_b.mso")]);
    assert_eq!(v["satisfiable"], true);
    assert_eq!(v["validated"], true);
    let model: String = v["model"]["word"].as_str().unwrap().into();
    assert!(model.contains('a') && model.contains('b'));
    let v = ok(&["mso", "sat", &fixture("unsat.mso")]);
    assert_eq!(v["satisfiable"], false);
}

#[test]
fn language_atoms_are_evaluated_through_oracles() {
    let v = ok(&["mso", "eval", &fixture("lang.mso"), "--valuation", &fixture("val.json"), "--oracle", "P"]);
    assert_eq!(v["value"], true);
}

#[test]
fn game_sentence_has_one_atom() {
    let v = ok(&["mso", "encode-game", "--alphabet", "a,b,1"]);
    assert_eq!(v["language_atoms"], 1);
    assert_eq!(v["closed"], true);
}

#[test]
fn automaton_commands() {
    let inf_a = fixture("inf_a.ba");
    let fin_a = fixture("fin_a.ba");
    assert_eq!(ok(&["buchi", "accepts", &inf_a, "--word", "b(ab)^w"])["accepts"], true);
    assert_eq!(ok(&["buchi", "accepts", &inf_a, "--word", "a(b)^w"])["accepts"], false);
    assert_eq!(ok(&["buchi", "empty", &inf_a])["empty"], false);
    let inter = ok(&["buchi", "intersect", &inf_a, &fin_a]);
    assert!(inter["states"].as_u64().unwrap() > 0);
    let comp = ok(&["buchi", "complement", &inf_a]);
    assert!(comp["text"].as_str().unwrap().starts_with("alphabet a b"));
    assert_eq!(ok(&["buchi", "equiv", &inf_a, &inf_a])["equivalent"], true);
    assert_eq!(ok(&["buchi", "equiv", &inf_a, &fin_a])["equivalent"], false);
}

#[test]
fn classifier_commands() {
    let v = ok(&["congruence", "check1", &fixture("mod3.cls")]);
    assert_eq!(v["satisfied"], false);
    let v = ok(&["congruence", "repair", &fixture("mod3.cls")]);
    assert_eq!(v["index_before"], 2);
    assert_eq!(v["index_after"], 1);
    assert_eq!(ok(&["congruence", "check1", &fixture("nonempty.cls")])["satisfied"], true);
    let v = ok(&["congruence", "kernel", &fixture("inf_a.ba")]);
    assert!(v["index"].as_u64().unwrap() >= 2);
}

#[test]
fn oracle_commands() {
    assert_eq!(ok(&["oracle", "member", "--oracle", "U", "--word", "blocks(a,b;affine 1 0)"])["member"], true);
    assert_eq!(ok(&["oracle", "member", "--oracle", "Uprime", "--word", "(ab1)^w"])["member"], false);
    assert!(ok(&["oracle", "neutral-test", "--oracle", "Uprime", "--samples", "50"])["counterexample"].is_null());
    let v = ok(&["oracle", "find-violation", "--oracle", "U", "--classifier", &fixture("nonempty.cls")]);
    assert_eq!(v["verified"], true);
}

#[test]
fn separator_languages() {
    assert_eq!(ok(&["trio", "l2", "--language", "anbn", "--input", "a#aa#a%#aa%#"])["member"], true);
    assert_eq!(ok(&["trio", "l2", "--language", "anbn", "--input", "a#aa#aa%#a%#"])["member"], false);
    assert_eq!(ok(&["trio", "l1", "--language", "anbn", "--input", "a#aa"])["member"], false);
    assert_eq!(ok(&["trio", "project", "--language", "anbn", "--input", "a#aa#a%#aa%#"])["image"], "##%#%#");
    assert_eq!(ok(&["trio", "loop", "--language", "set:aa", "--word", "(a)^w"])["member"], true);
    let v = ok(&["trio", "census", "--language", "anbn", "--max-len", "8"]);
    assert_eq!(v["unequal_counts"], 0);
    assert!(v["members"].as_u64().unwrap() > 0);
}

#[test]
fn identical_invocations_give_identical_output() {
    let args = ["game", "play", "--word", "(aaab)^w", "--oracle", "U", "--spoiler", "random", "--duplicator", "random", "--seed", "3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["oracle", "neutral-test", "--oracle", "Uprime", "--seed", "9"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn exit_statuses() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["game", "play", "--word", "(a)^w"]).status.code(), Some(2));
    let bad_file = run(&["buchi", "empty", &fixture("missing.ba")]);
    assert_eq!(bad_file.status.code(), Some(2));
    assert_eq!(json(&bad_file)["error"]["kind"], "input");

    let budget = run_env(&["buchi", "complement", &fixture("inf_a.ba")], &[("OMEGA_STEP_BUDGET", "2")]);
    assert_eq!(budget.status.code(), Some(1));
    let msg = json(&budget)["error"]["message"].as_str().unwrap().to_string();
    assert!(msg.contains("budget") && msg.contains("monoid"), "{msg}");

    let unsupported = run(&["oracle", "member", "--oracle", "Uprime", "--word", "a(1)^w"]);
    assert_eq!(unsupported.status.code(), Some(1));
    assert!(json(&unsupported)["error"]["message"].as_str().unwrap().contains("unsupported"));
}
