use std::path::PathBuf;

use ringproof::checker::verify_corpus;
use ringproof::models::crosscheck;

use crate::output::{corpus_error_status, describe_failure, load_manifest, print_json};
use crate::{Context, Status};

#[derive(clap::Args)]
pub struct Args {
    /// Largest ring order to enumerate (at most 16).
    #[arg(long, default_value_t = 8)]
    max_order: usize,
    /// Corpus manifest (default: proofs/manifest.toml).
    #[arg(long)]
    manifest: Option<PathBuf>,
}

pub fn run(args: Args, ctx: &Context) -> Status {
    let options = ctx.config.verify_options();
    let corpus = load_manifest(args.manifest.as_deref()).and_then(|(manifest, base)| {
        verify_corpus(&manifest, &base, &Default::default(), &options, ctx.config.parallelism)
    });
    let corpus = match corpus {
        Ok(c) => c,
        Err(e) => {
            match &e {
                ringproof::checker::CorpusError::Failed(r) => eprintln!("{}", describe_failure(r)),
                _ => eprintln!("error: {e}"),
            }
            return corpus_error_status(&e);
        }
    };
    let report = match crosscheck(&corpus.registry, args.max_order) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return Status::Usage;
        }
    };
    if ctx.json() {
        print_json(&report);
    } else {
        for h in &report.hypothesis_sets {
            let counts: Vec<String> = h.rings_by_order.iter().map(|(m, n)| format!("{m}:{n}")).collect();
            println!("{} theorems under [{}]; models by order {}", h.theorems.len(), h.hypotheses.join("; "), counts.join(" "));
        }
        for v in &report.violations {
            let assign: Vec<String> = v.assignment.iter().map(|(x, e)| format!("{x} = {e}")).collect();
            println!("VIOLATION {} in a ring of order {} on {}: {}", v.theorem, v.order, v.group, assign.join(", "));
        }
        println!(
            "{} theorems checked against {} models up to order {}; {} violations",
            report.theorems,
            report.rings_checked,
            report.max_order,
            report.violations.len()
        );
    }
    if report.violations.is_empty() {
        Status::Ok
    } else {
        Status::Failed
    }
}
