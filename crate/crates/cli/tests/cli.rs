use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_synergy")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn compute(file: &str, value: &str, coalition: &str) -> Value {
    let path = data(file);
    let o = run(&[
        "compute",
        "--game",
        path.to_str().unwrap(),
        "--value",
        value,
        "--coalition",
        coalition,
        "--format",
        "json",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    json(&o)
}

#[test]
fn compute_on_two_pairs_game() {
    let exact = |v: &str, c: &str| compute("two_pairs.json", v, c)["result"]["exact"].as_str().unwrap().to_string();
    assert_eq!(exact("union-shapley", "A,C"), "1");
    assert_eq!(exact("union-shapley", "B,A"), "1/2");
    assert_eq!(exact("worth", "A,B"), "1");
    assert_eq!(exact("dividend", "A,B,C"), "0");
    assert_eq!(exact("interaction-index", "A,C"), "0");
    let doc = compute("two_pairs.json", "intersection-shapley", "A,B");
    assert_eq!(doc["format"], 1);
    assert_eq!(doc["result"]["decimal"], "0.5");
}

#[test]
fn compute_text_shows_fraction_and_decimal() {
    let path = data("two_pairs.json");
    let o = run(&["compute", "--game", path.to_str().unwrap(), "--value", "union-shapley", "--coalition", "A,B"]);
    assert_eq!(stdout(&o).trim(), "union-shapley({A,B}) = 1/2 (0.5)");
}

#[test]
fn three_player_table_layout() {
    let path = data("three_player.json");
    let o = run(&[
        "table",
        "--game",
        path.to_str().unwrap(),
        "--value",
        "worth,sum-shapley,intersection-shapley,union-shapley",
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    let expected = "\
coalition,worth,worth_decimal,sum-shapley,sum-shapley_decimal,intersection-shapley,intersection-shapley_decimal,union-shapley,union-shapley_decimal
\"A\",2,2,4,4,4,4,4,4
\"B\",3,3,5,5,5,5,5,5
\"C\",5,5,8,8,8,8,8,8
\"A,B\",5,5,9,9,1,1,8,8
\"A,C\",9,9,12,12,2,2,10,10
\"B,C\",10,10,13,13,2,2,11,11
\"A,B,C\",17,17,17,17,1,1,13,13
";
    assert_eq!(stdout(&o), expected);
}

#[test]
fn table_json_and_custom_weights() {
    let game = data("two_pairs.json");
    let weights = data("union_weights.json");
    let o = run(&[
        "table",
        "--game",
        game.to_str().unwrap(),
        "--value",
        "semivalue:custom,union-shapley",
        "--weights",
        weights.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = json(&o);
    assert_eq!(doc["format"], 1);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 15);
    for row in rows {
        assert_eq!(row["values"]["semivalue:custom"], row["values"]["union-shapley"]);
    }
}

#[test]
fn custom_value_without_weights_is_a_usage_error() {
    let game = data("two_pairs.json");
    let o = run(&["compute", "--game", game.to_str().unwrap(), "--value", "synergistic:custom", "--coalition", "A"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--weights"));
}

#[test]
fn input_errors_exit_with_one() {
    let game = data("two_pairs.json");
    let g = game.to_str().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"players\": [\"A\"], ").unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["compute", "--game", g, "--value", "union-shapley", "--coalition", "A,Z"],
        vec!["compute", "--game", g, "--value", "union-shapley", "--coalition", ""],
        vec!["compute", "--game", g, "--value", "no-such-value", "--coalition", "A"],
        vec!["compute", "--game", broken.to_str().unwrap(), "--value", "worth", "--coalition", "A"],
        vec!["axioms", "--game", g, "--value", "worth", "--axioms", "no-such-axiom"],
        vec!["gen", "--n", "21", "--family", "uniform"],
        vec!["gen", "--n", "3", "--family", "no-such-family"],
        vec!["frobnicate"],
    ];
    for args in cases {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn axiom_failure_exits_with_two_and_reports_witness() {
    let game = data("null_a.json");
    let o = run(&[
        "axioms",
        "--game",
        game.to_str().unwrap(),
        "--value",
        "interaction-index",
        "--axioms",
        "null-player",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let doc = json(&o);
    assert_eq!(doc["format"], 1);
    let cell = &doc["cells"][0][0];
    assert_eq!(cell["verdict"], "fail");
    assert_eq!(cell["witness"]["player"], 1);
    assert_eq!(cell["witness"]["lhs"], "0");
    assert_eq!(cell["witness"]["rhs"], "1");
}

#[test]
fn worth_fails_shapley_consistency_on_three_player_game() {
    let game = data("three_player.json");
    let o = run(&["axioms", "--game", game.to_str().unwrap(), "--value", "worth", "--axioms", "shapley-consistency"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("2 != 4"), "{}", stdout(&o));
}

#[test]
fn union_shapley_passes_its_axioms_on_a_corpus() {
    let o = run(&[
        "axioms",
        "--value",
        "union-shapley",
        "--corpus",
        "20",
        "--n",
        "5",
        "--seed",
        "4",
        "--axioms",
        "efficiency,shapley-consistency,symmetry,linearity,null-player,dummy-player,weak-monotonicity,monotonicity,balanced-contributions,potential,potential-reconstruction,null-player-out",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    for family in ["positive", "uniform", "unanimity-mix"] {
        let a = run(&["gen", "--n", "3", "--family", family, "--seed", "7"]);
        let b = run(&["gen", "--n", "3", "--family", family, "--seed", "7"]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.json");
        std::fs::write(&path, &a.stdout).unwrap();
        let o = run(&["table", "--game", path.to_str().unwrap(), "--value", "worth"]);
        assert!(o.status.success(), "{family}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(stdout(&o).lines().count(), 8);
    }
    let doc: Value = serde_json::from_slice(&run(&["gen", "--n", "4", "--family", "uniform"]).stdout).unwrap();
    assert_eq!(doc["worths"].as_object().unwrap().len(), 15);
}

#[test]
fn approx_estimates() {
    let game = data("two_pairs.json");
    let g = game.to_str().unwrap();
    let args = [
        "approx",
        "--game",
        g,
        "--value",
        "union-shapley",
        "--coalition",
        "A,C",
        "--samples",
        "100000",
        "--seed",
        "1",
        "--format",
        "json",
    ];
    let first = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, run(&args).stdout);
    let doc = json(&first);
    let (est, se) = (doc["estimate"].as_f64().unwrap(), doc["std_error"].as_f64().unwrap());
    assert!((est - 1.0).abs() <= 3.0 * se, "{est} +/- {se}");
    assert!(doc["generator"].as_str().unwrap().contains("chacha8"));

    let null = data("null_a.json");
    let o = run(&[
        "approx",
        "--game",
        null.to_str().unwrap(),
        "--value",
        "shapley",
        "--coalition",
        "B",
        "--format",
        "json",
    ]);
    let doc = json(&o);
    assert_eq!(doc["estimate"].as_f64(), Some(0.0));
    assert_eq!(doc["std_error"].as_f64(), Some(0.0));
}

#[test]
fn approx_on_builtin_oracle() {
    let o = run(&[
        "approx",
        "--oracle",
        "unanimity-pairs:30",
        "--value",
        "union-shapley",
        "--coalition",
        "P1,P3",
        "--samples",
        "20000",
        "--format",
        "json",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = json(&o);
    // Two disjoint pair unanimity games, each reached by the group: exact value 1.
    let (est, se) = (doc["estimate"].as_f64().unwrap(), doc["std_error"].as_f64().unwrap());
    assert!((est - 1.0).abs() <= 4.0 * se + 1e-12, "{est} +/- {se}");
    let bad = run(&["approx", "--oracle", "majority:99:3", "--value", "shapley", "--coalition", "P1"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn summary_rows_on_symmetric_game() {
    let game = data("unanimity_n5.json");
    let o = run(&["table", "--game", game.to_str().unwrap(), "--value", "all", "--format", "json"]);
    assert!(o.status.success());
    let doc = json(&o);
    assert_eq!(doc["values"].as_array().unwrap().len(), 8);
    for row in doc["rows"].as_array().unwrap() {
        let k = row["coalition"].as_str().unwrap().split(',').count();
        let exact = |name: &str| row["values"][name]["exact"].as_str().unwrap().to_string();
        assert_eq!(exact("union-shapley"), "1/5");
        assert_eq!(exact("intersection-shapley"), "1/5");
        let merge = if k == 5 { "1".to_string() } else { format!("1/{}", 6 - k) };
        assert_eq!(exact("merge-shapley"), merge);
        assert_eq!(exact("interaction-index"), merge);
        let share = if k == 5 { "1".to_string() } else { format!("{k}/5") };
        assert_eq!(exact("sum-shapley"), share);
        assert_eq!(exact("scaled-intersection-shapley"), share);
        let indicator = if k == 5 { "1" } else { "0" };
        assert_eq!(exact("worth"), indicator);
        assert_eq!(exact("dividend"), indicator);
    }
}

#[test]
fn single_player_game_has_one_row() {
    let game = data("single.json");
    let o = run(&["table", "--game", game.to_str().unwrap(), "--value", "all", "--format", "csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[1], format!("\"Solo\"{}", ",7/2,3.5".repeat(8)));
}
