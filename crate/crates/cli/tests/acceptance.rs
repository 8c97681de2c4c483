//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ringproof::algebra::{normalize, Alphabet, CanonicalForm, Expression};
use ringproof::checker::{verify_corpus, Manifest, RunConfiguration, TheoremRegistry, VerifyOptions};
use ringproof::syntax::{format_expression, parse_expression, parse_expression_in};
use serde_json::Value;

type Outcome = Result<String, String>;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringproof"))
        .current_dir(root())
        .env_remove("RINGPROOF_CONFIG")
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Result<Value, String> {
    serde_json::from_slice(&out.stdout).map_err(|e| format!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn corpus_is_complete() -> Outcome {
    let start = Instant::now();
    let out = run(&["--json", "verify", "--all"]);
    let wall = start.elapsed();
    ensure(out.status.code() == Some(0), format!("exit {:?}", out.status.code()))?;
    let v = json(&out)?;
    let registered = v["registered"].as_u64().unwrap_or(0);
    ensure(registered >= 30, format!("only {registered} theorems registered"))?;
    let exp8 = v["scripts"]
        .as_array()
        .and_then(|s| s.iter().find(|r| r["script"] == "thm_exp8"))
        .ok_or("thm_exp8 missing")?;
    let exp8_ms = exp8["elapsed_ms"].as_f64().unwrap_or(f64::MAX);
    ensure(wall <= Duration::from_secs(600), format!("wall time {wall:?}"))?;
    ensure(exp8_ms <= 300_000.0, format!("thm_exp8 took {exp8_ms} ms"))?;
    Ok(format!("{registered} theorems in {:.2} s; thm_exp8 {exp8_ms:.1} ms", wall.as_secs_f64()))
}

fn brandenburg_identity() -> Outcome {
    let expr = "((x+y)^2-(x+y))-(x^2-x)-(y^2-y)+((y*x)^2-y*x)-((-(y*x))^2-(-(y*x)))";
    let out = run(&["normalize", expr]);
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.success() && text == "x*y - y*x\n", format!("got {text:?}"))?;
    Ok("normalizes to x*y - y*x with no facts".into())
}

fn crosscheck_is_clean() -> Outcome {
    let out = run(&["--json", "crosscheck", "--max-order", "8"]);
    let v = json(&out)?;
    let violations = v["violations"].as_array().map_or(usize::MAX, Vec::len);
    ensure(out.status.success() && violations == 0, format!("{violations} violations"))?;
    Ok(format!(
        "{} theorems against {} models up to order 8, 0 violations",
        v["theorems"], v["rings_checked"]
    ))
}

/// All ring multiplication tables over an addition table, by full enumeration.
fn naive_rings(add: &[Vec<u8>]) -> Vec<Vec<Vec<u8>>> {
    let m = add.len();
    let mut out = Vec::new();
    for code in 0..(m as u64).pow((m * m) as u32) {
        let t: Vec<Vec<u8>> = (0..m)
            .map(|a| (0..m).map(|b| ((code / (m as u64).pow((a * m + b) as u32)) % m as u64) as u8).collect())
            .collect();
        if is_ring(add, &t) {
            out.push(t);
        }
    }
    out
}

fn is_ring(add: &[Vec<u8>], t: &[Vec<u8>]) -> bool {
    let m = add.len();
    (0..m).all(|a| {
        (0..m).all(|b| {
            (0..m).all(|c| {
                t[t[a][b] as usize][c] == t[a][t[b][c] as usize]
                    && t[a][add[b][c] as usize] == add[t[a][b] as usize][t[a][c] as usize]
                    && t[add[a][b] as usize][c] == add[t[a][c] as usize][t[b][c] as usize]
            })
        })
    })
}

fn cyclic(m: usize) -> Vec<Vec<u8>> {
    (0..m).map(|a| (0..m).map(|b| ((a + b) % m) as u8).collect()).collect()
}

fn table(v: &Value) -> Vec<Vec<u8>> {
    v.as_array()
        .map(|rows| {
            rows.iter()
                .map(|r| r.as_array().map(|c| c.iter().map(|x| x.as_u64().unwrap_or(0) as u8).collect()).unwrap_or_default())
                .collect()
        })
        .unwrap_or_default()
}

fn potent_rings_commute() -> Outcome {
    for n in 2..=7 {
        let axiom = format!("x^{n} = x");
        let out = run(&["--json", "models", "--max-order", "8", "--axiom", &axiom, "--mode", "first-noncommutative"]);
        let v = json(&out)?;
        let found = v["rings"].as_array().map_or(usize::MAX, Vec::len);
        ensure(out.status.success() && found == 0, format!("{axiom}: {found} noncommutative rings"))?;
    }
    for m in 1..=3 {
        let noncomm = naive_rings(&cyclic(m))
            .iter()
            .filter(|t| (0..m).any(|a| (0..m).any(|b| t[a][b] != t[b][a])))
            .count();
        ensure(noncomm == 0, format!("naive oracle finds a noncommutative ring of order {m}"))?;
    }
    let out = run(&["--json", "models", "--max-order", "8", "--mode", "first-noncommutative"]);
    let v = json(&out)?;
    let ring = v["rings"].get(0).ok_or("no noncommutative ring without axioms")?;
    let (add, mul) = (table(&ring["addition"]), table(&ring["multiplication"]));
    ensure(ring["order"] == 4, format!("first noncommutative ring has order {}", ring["order"]))?;
    ensure(is_ring(&add, &mul), "returned tables are not a ring")?;
    ensure((0..4).any(|a| (0..4).any(|b| mul[a][b] != mul[b][a])), "returned ring commutes")?;
    Ok("x^n = x (n = 2..7) has no noncommutative model up to order 8; without axioms the first one has order 4".into())
}

fn naive_counts_agree() -> Outcome {
    let mut rows = Vec::new();
    for m in 1..=3usize {
        let all = naive_rings(&cyclic(m));
        for n in [None, Some(2u32), Some(3)] {
            let expected = all
                .iter()
                .filter(|t| n.map_or(true, |n| (0..m as u8).all(|x| (1..n).fold(x, |acc, _| t[acc as usize][x as usize]) == x)))
                .count() as u64;
            let order = m.to_string();
            let axiom = n.map(|n| format!("x^{n} = x"));
            let mut args = vec!["--json", "models", "--order", &order, "--mode", "count"];
            if let Some(a) = &axiom {
                args.extend(["--axiom", a]);
            }
            let v = json(&run(&args))?;
            let got = v["counts"][0]["count"].as_u64().ok_or("missing count")?;
            ensure(got == expected, format!("order {m}, {axiom:?}: search {got}, oracle {expected}"))?;
            rows.push(got.to_string());
        }
    }
    Ok(format!("counts [{}] match full-table enumeration", rows.join(" ")))
}

fn random_expr(rng: &mut ChaCha8Rng, budget: u32) -> Expression {
    let var = |rng: &mut ChaCha8Rng| Expression::var(["x", "y", "z"][rng.gen_range(0..3)]);
    if budget <= 1 || rng.gen_bool(0.3) {
        return var(rng);
    }
    match rng.gen_range(0..7) {
        0 => {
            let (a, b) = (random_expr(rng, budget), random_expr(rng, budget));
            Expression::sum(a, b)
        }
        1 => Expression::neg(random_expr(rng, budget)),
        2 => Expression::scalar(rng.gen_range(-9i64..=9), random_expr(rng, budget)),
        3 => {
            let left = rng.gen_range(1..budget);
            Expression::product(random_expr(rng, left), random_expr(rng, budget - left))
        }
        4 => {
            let k = rng.gen_range(1..=budget.min(3));
            Expression::power(random_expr(rng, budget / k), k)
        }
        5 => {
            let left = rng.gen_range(1..budget);
            Expression::commutator(random_expr(rng, left), random_expr(rng, budget - left))
        }
        _ => {
            let k = rng.gen_range(1..budget);
            Expression::ad_pow(random_expr(rng, 1), k, random_expr(rng, budget - k))
        }
    }
}

fn normalizer_laws() -> Outcome {
    let abc = Alphabet::new(["x", "y", "z"]).map_err(|e| e.to_string())?;
    let nf = |e: &Expression| normalize(e, &abc).expect("closed over x, y, z");
    let seed = RunConfiguration::from_env().map_err(|e| e.to_string())?.seed;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..1000 {
        let e = random_expr(&mut rng, 6);
        let (a, b, c) = (random_expr(&mut rng, 2), random_expr(&mut rng, 2), random_expr(&mut rng, 2));
        let k: i64 = rng.gen_range(-9..=9);
        let fail = |what: &str| format!("case {i}: {what} fails for {}", format_expression(&e));
        ensure(nf(&e).degree() <= 6, fail("degree bound"))?;
        ensure(nf(&Expression::sum(a.clone(), b.clone())) == &nf(&a) + &nf(&b), fail("additivity"))?;
        ensure(nf(&Expression::product(a.clone(), b.clone())) == nf(&a).mul(&nf(&b)), fail("multiplicativity"))?;
        ensure(nf(&Expression::scalar(k, a.clone())) == nf(&a).scale(&BigInt::from(k)), fail("scaling"))?;
        ensure(nf(&Expression::commutator(a.clone(), a.clone())).is_zero(), fail("[a,a] = 0"))?;
        ensure(
            nf(&Expression::commutator(a.clone(), b.clone())) == -&nf(&Expression::commutator(b.clone(), a.clone())),
            fail("antisymmetry"),
        )?;
        ensure(
            nf(&Expression::commutator(Expression::sum(a.clone(), b.clone()), c.clone()))
                == &nf(&Expression::commutator(a.clone(), c.clone())) + &nf(&Expression::commutator(b.clone(), c.clone())),
            fail("bilinearity"),
        )?;
        let unfolded = Expression::commutator(a.clone(), Expression::commutator(a.clone(), b.clone()));
        ensure(nf(&Expression::ad_pow(a.clone(), 2, b.clone())) == nf(&unfolded), fail("ad unfolding"))?;
        let text = format_expression(&e);
        let back = parse_expression(&text).map_err(|err| fail(&err.to_string()))?;
        ensure(format_expression(&back) == text && nf(&back) == nf(&e), fail("print/parse round trip"))?;
        let form: CanonicalForm = nf(&e);
        let shown = parse_expression_in(&form.display(&abc), &abc).map_err(|err| fail(&err.to_string()))?;
        ensure(nf(&shown) == form, fail("canonical form round trip"))?;
    }
    Ok(format!("1000 random expressions over x, y, z (seed {seed:#x})"))
}

fn witnesses_replay() -> Outcome {
    let dir = root().join("proofs");
    let manifest = Manifest::load(&dir.join("manifest.toml")).map_err(|e| e.to_string())?;
    let report = verify_corpus(&manifest, &dir, &TheoremRegistry::new(), &VerifyOptions::default(), 4)
        .map_err(|e| e.to_string())?;
    let (mut checks, mut mutations) = (0, 0);
    for script in &report.scripts {
        for step in &script.steps {
            for check in &step.checks {
                let w = &check.raw_witness;
                ensure(w.replay(&check.facts) == check.target_form, format!("{} `{}` does not replay", script.script, step.label))?;
                for i in 0..w.terms.len() {
                    let mut bad = w.clone();
                    bad.terms[i].coefficient += BigInt::from(1);
                    ensure(bad.replay(&check.facts) != check.target_form, format!("{} `{}` survives mutation", script.script, step.label))?;
                    mutations += 1;
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} witnesses replay; {mutations} single-coefficient mutations all detected"))
}

fn expect_failure(dir: &Path, file: &str, text: &str, label: &str, class: &str) -> Result<(), String> {
    let path = dir.join(file);
    std::fs::write(&path, text).map_err(|e| e.to_string())?;
    let path = path.display().to_string();
    let out = run(&["--json", "verify", "--all", &path]);
    ensure(out.status.code() == Some(1), format!("{file}: exit {:?}", out.status.code()))?;
    let v = json(&out)?;
    let last = v["scripts"].as_array().and_then(|s| s.last()).ok_or("no reports")?;
    let f = &last["failure"];
    ensure(f["label"] == label && f["class"] == class, format!("{file}: failed at {} [{}]", f["label"], f["class"]))
}

fn negative_controls() -> Outcome {
    let dir = std::env::temp_dir().join(format!("ringproof-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let result = (|| {
        expect_failure(&dir, "wrong_qed.rpf", "format 1\ntheorem wrong_qed\nvars x y\naxiom potency: x^2 = x\nqed x*y = y*x\n", "qed", "qed")?;
        expect_failure(
            &dir,
            "undischarged.rpf",
            "format 1\nlemma undischarged\nvars x y\naxiom e: [x^2 - x, y] = 0\nimport lemma_NL_p2\n\
             have comm: [x, y] = 0 by rule lemma_NL_p2 with {x -> x, y -> y}\nqed [x, y] = 0\n",
            "comm",
            "premise",
        )?;
        let rev = std::fs::read_to_string(root().join("proofs/eq2_reversible_from_potency_n3.rpf")).map_err(|e| e.to_string())?;
        let low = rev.replace("lemma eq2_reversible_from_potency_n3", "lemma low_degree").replace("degree 6", "degree 5");
        expect_failure(&dir, "low_degree.rpf", &low, "rev", "membership")
    })();
    let _ = std::fs::remove_dir_all(&dir);
    result?;
    Ok("wrong qed, undischarged premise and low degree bound each fail where expected".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("corpus completeness", corpus_is_complete),
        ("commutator identity by normalization", brandenburg_identity),
        ("kernel soundness cross-check", crosscheck_is_clean),
        ("semantic corroboration", potent_rings_commute),
        ("normalizer algebra properties", normalizer_laws),
        ("membership witness replay", witnesses_replay),
        ("negative controls", negative_controls),
        ("tiny-scale oracle equivalence", naive_counts_agree),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
