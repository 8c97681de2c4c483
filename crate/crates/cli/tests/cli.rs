use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn ringproof(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringproof"))
        .current_dir(root())
        .env_remove("RINGPROOF_CONFIG")
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ringproof-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn normalize_examples() {
    assert_eq!(stdout(&ringproof(&["normalize", "[x,[x,y]]"])), "x^2*y - 2*x*y*x + y*x^2\n");
    assert_eq!(stdout(&ringproof(&["normalize", "x - x"])), "0\n");
    assert_eq!(stdout(&ringproof(&["normalize", "--vars", "y,x", "x*y + y*x"])), "y*x + x*y\n");
    let bad = ringproof(&["normalize", "x +"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_without_dependencies_is_a_resolution_failure() {
    let o = ringproof(&["--json", "verify", "proofs/thm_exp8.rpf"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["scripts"][0]["failure"]["class"], "resolution");
}

#[test]
fn corrupted_script_is_a_parse_error_with_span() {
    let p = scratch("corrupt.rpf", "format 1\ntheorem t\nvars x\nhave a: x = x by\n");
    let o = ringproof(&["verify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("corrupt.rpf:4:"));
}

#[test]
fn verify_paths_on_top_of_the_corpus() {
    let p = scratch(
        "extra.rpf",
        "format 1\ntheorem extra\nvars x y\naxiom potency: x^3 = x\nimport thm_3potent_via_buckley\n\
         have c: x*y = y*x by facts [thm_3potent_via_buckley{x -> x, y -> y}]\nqed x*y = y*x\n",
    );
    let o = ringproof(&["verify", "--all", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("78 theorems registered"));
}

#[test]
fn shift_cap_exit_code() {
    let o = ringproof(&["verify", "--shift-cap", "2", "proofs/eq2_reversible_from_potency_n3.rpf"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn member_examples() {
    let ok = ringproof(&["member", "--target", "[x,[x,y]] - [x^2,y]", "--fact", "2*[a,b] = 0 {a -> x, b -> y*x}", "--explain"]);
    assert_eq!(ok.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["member"], true);
    assert_eq!(v["witness"][0]["coefficient"], "-1");
    let none = ringproof(&["member", "--target", "x*y - y*x"]);
    assert_eq!(none.status.code(), Some(1));
    let low = ringproof(&["member", "--target", "x*y*x", "--fact", "x = 0", "--degree", "2"]);
    assert_eq!(low.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&low.stderr).contains("below the target degree"));
    let named = ringproof(&["member", "--target", "2*(x*y)", "--fact", "lemma_char_n2{x -> x*y}"]);
    assert_eq!(named.status.code(), Some(0));
}

#[test]
fn models_examples() {
    let none = ringproof(&["models", "--order", "4", "--axiom", "x^3 = x", "--goal", "x*y = y*x", "--mode", "first-noncommutative"]);
    assert_eq!(stdout(&none), "none\n");
    let one = ringproof(&["--json", "models", "--order", "4", "--goal", "x*y = y*x", "--mode", "first-noncommutative"]);
    let v: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v["rings"].as_array().unwrap().len(), 1);
    assert_eq!(v["rings"][0]["goal"]["holds"], false);
    let field = ringproof(&["--json", "models", "--max-order", "2", "--axiom", "x^2 = x", "--goal", "x = 0", "--mode", "counterexample"]);
    let v: serde_json::Value = serde_json::from_slice(&field.stdout).unwrap();
    assert_eq!(v["rings"][0]["order"], 2);
    assert_eq!(v["rings"][0]["goal"]["witness"][0][1], 1);
    assert_eq!(ringproof(&["models", "--order", "17"]).status.code(), Some(2));
    assert_eq!(ringproof(&["models", "--order", "2", "--axiom", "[[x,y],[z,w]] = 0"]).status.code(), Some(2));
}

#[test]
fn config_from_environment() {
    let cfg = scratch("config.toml", "format = \"json\"\nshift_cap = 5\n");
    let o = Command::new(env!("CARGO_BIN_EXE_ringproof"))
        .current_dir(root())
        .env("RINGPROOF_CONFIG", &cfg)
        .args(["normalize", "x*x"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["normal_form"], "x^2");
    let bad = scratch("bad.toml", "shift_cap = 0\n");
    let o = Command::new(env!("CARGO_BIN_EXE_ringproof"))
        .env("RINGPROOF_CONFIG", &bad)
        .args(["normalize", "x"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
