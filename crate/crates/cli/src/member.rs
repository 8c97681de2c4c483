use std::collections::BTreeMap;
use std::path::PathBuf;

use ringproof::algebra::{normalize, Expression};
use ringproof::checker::{verify_corpus, Statement, TheoremRegistry};
use ringproof::membership::{check_membership, FactInstance, FactSourceKind, MembershipError, WitnessTermJson};
use ringproof::syntax::{format_expression, parse_equation, parse_expression, parse_statement, parse_substitution};
use serde::Serialize;

use crate::normalize::alphabet_for;
use crate::output::{load_manifest, print_json};
use crate::{Context, Status};

#[derive(clap::Args)]
pub struct Args {
    /// Expression (or equation) whose difference should lie in the ideal.
    #[arg(long)]
    target: String,
    /// `NAME{x -> e, ...}` for a corpus theorem, or an inline identity such as
    /// `2*[a,b] = 0 {a -> x, b -> y*x}`; unmapped variables stay as they are.
    #[arg(long)]
    fact: Vec<String>,
    /// Degree bound D (default: largest degree among target and facts).
    #[arg(long)]
    degree: Option<usize>,
    /// Print the witness as JSON.
    #[arg(long)]
    explain: bool,
    /// Generator order, comma separated.
    #[arg(long, value_delimiter = ',')]
    vars: Vec<String>,
    /// Corpus manifest used to resolve named facts.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Serialize)]
struct Outcome {
    member: bool,
    target: String,
    degree_bound: usize,
    columns: usize,
    witness: Vec<WitnessTermJson>,
}

struct ParsedFact {
    name: String,
    inline: Option<Statement>,
    subst: Vec<(String, Expression)>,
}

fn split_fact(text: &str, index: usize) -> Result<ParsedFact, String> {
    let text = text.trim();
    let (head, subst) = match text.find('{') {
        Some(i) if text.ends_with('}') => (text[..i].trim(), parse_substitution(&text[i..]).map_err(|e| format!("`{text}`: {e}"))?),
        _ => (text, Vec::new()),
    };
    if head.contains('=') {
        let st = parse_statement(head).map_err(|e| format!("`{head}`: {e}"))?;
        if !st.premises.is_empty() {
            return Err(format!("`{head}`: inline facts must be identities"));
        }
        let name = format!("fact{index}");
        Ok(ParsedFact {
            inline: Some(Statement::from_syntax(&name, &st)),
            name,
            subst,
        })
    } else {
        Ok(ParsedFact {
            name: head.to_string(),
            inline: None,
            subst,
        })
    }
}

fn resolve(names: &[String], manifest: Option<&std::path::Path>, ctx: &Context) -> Result<TheoremRegistry, (Status, String)> {
    if names.is_empty() {
        return Ok(TheoremRegistry::new());
    }
    let (full, base) = load_manifest(manifest).map_err(|e| (Status::Usage, e.to_string()))?;
    let sub = full.closure(names);
    let report = verify_corpus(&sub, &base, &TheoremRegistry::new(), &ctx.config.verify_options(), ctx.config.parallelism)
        .map_err(|e| (Status::Failed, e.to_string()))?;
    Ok(report.registry)
}

pub fn run(args: Args, ctx: &Context) -> Status {
    match execute(&args, ctx) {
        Ok(s) => s,
        Err((s, msg)) => {
            eprintln!("error: {msg}");
            s
        }
    }
}

fn execute(args: &Args, ctx: &Context) -> Result<Status, (Status, String)> {
    let usage = |m: String| (Status::Usage, m);
    let target = match parse_expression(&args.target) {
        Ok(e) => e,
        Err(_) => parse_equation(&args.target).map_err(|e| usage(e.to_string()))?.difference(),
    };
    let parsed = args
        .fact
        .iter()
        .enumerate()
        .map(|(i, f)| split_fact(f, i + 1))
        .collect::<Result<Vec<_>, _>>()
        .map_err(usage)?;
    let named: Vec<String> = parsed.iter().filter(|f| f.inline.is_none()).map(|f| f.name.clone()).collect();
    let registry = resolve(&named, args.manifest.as_deref(), ctx)?;

    let mut statements = Vec::new();
    for f in &parsed {
        let st = match &f.inline {
            Some(st) => st.clone(),
            None => {
                let thm = registry.get(&f.name).ok_or_else(|| usage(format!("unknown theorem `{}`", f.name)))?;
                if thm.statement.is_rule() {
                    return Err(usage(format!("`{}` is a conditional rule, not an identity", f.name)));
                }
                thm.statement.clone()
            }
        };
        let mut sigma: BTreeMap<String, Expression> = st.vars().iter().map(|v| (v.clone(), Expression::var(v))).collect();
        for (v, e) in &f.subst {
            if !sigma.contains_key(v) {
                return Err(usage(format!("`{}` has no variable `{v}`", f.name)));
            }
            sigma.insert(v.clone(), e.clone());
        }
        statements.push((f, st, sigma));
    }

    let mut seen = target.free_vars();
    for (_, st, sigma) in &statements {
        for v in st.vars() {
            seen.extend(sigma[v].free_vars());
        }
    }
    let alphabet = alphabet_for(&args.vars, seen).map_err(usage)?;
    let target_form = normalize(&target, &alphabet).map_err(|e| usage(e.to_string()))?;
    let mut facts = Vec::new();
    for (f, st, sigma) in &statements {
        let (_, form) = st.instantiate(sigma, &alphabet).map_err(|e| usage(e.to_string()))?;
        facts.push(FactInstance {
            kind: if f.inline.is_some() { FactSourceKind::Inline } else { FactSourceKind::Theorem },
            name: f.name.clone(),
            substitution: sigma.iter().map(|(k, v)| (k.clone(), format_expression(v))).collect(),
            form,
        });
    }

    let outcome = match check_membership(&target_form, &facts, args.degree, ctx.config.shift_cap) {
        Ok(o) => o,
        Err(e @ MembershipError::ShiftCap { .. }) => return Err((Status::ResourceCap, e.to_string())),
        Err(e) => return Err(usage(e.to_string())),
    };
    let shown = target_form.display(&alphabet);
    let Some(witness) = outcome.witness else {
        if ctx.json() {
            print_json(&Outcome {
                member: false,
                target: shown,
                degree_bound: outcome.bound,
                columns: outcome.columns,
                witness: Vec::new(),
            });
        } else {
            println!(
                "not a member: {shown} is outside the ideal within degree {} ({} shifts)",
                outcome.bound, outcome.columns
            );
        }
        return Ok(Status::Failed);
    };
    if witness.replay(&facts) != target_form {
        return Err((Status::Failed, "witness does not replay to the target".into()));
    }
    let terms = witness.to_json(&facts, &alphabet);
    if ctx.json() || args.explain {
        print_json(&Outcome {
            member: true,
            target: shown,
            degree_bound: outcome.bound,
            columns: outcome.columns,
            witness: terms,
        });
    } else {
        println!("member within degree {} ({} shifts): {shown}", outcome.bound, outcome.columns);
        for t in &terms {
            let subst: Vec<String> = t.substitution.iter().map(|(k, v)| format!("{k} -> {v}")).collect();
            println!(
                "  {} * [{}] {}{{{}}} [{}]",
                t.coefficient,
                t.left.as_deref().unwrap_or(""),
                t.fact,
                subst.join(", "),
                t.right.as_deref().unwrap_or("")
            );
        }
    }
    Ok(Status::Ok)
}
