use std::path::PathBuf;

use ringproof::checker::{
    export_theorem, verify_corpus, verify_script, CorpusReport, TheoremRegistry, VerificationReport,
};
use ringproof::syntax::parse_script_named;
use serde::Serialize;

use crate::output::{
    corpus_error_status, describe_failure, describe_success, failure_status, load_manifest, print_json,
    print_witnesses,
};
use crate::{Context, Status};

#[derive(clap::Args)]
pub struct Args {
    /// Scripts to verify, in order, after the corpus if `--all` is given.
    paths: Vec<PathBuf>,
    /// Verify every script listed in the manifest.
    #[arg(long)]
    all: bool,
    /// Corpus manifest (default: proofs/manifest.toml).
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Hard cap on generated shifts per membership check.
    #[arg(long)]
    shift_cap: Option<usize>,
    /// Worker threads for independent scripts.
    #[arg(long)]
    jobs: Option<usize>,
    /// Print membership witnesses.
    #[arg(long)]
    explain: bool,
}

#[derive(Serialize)]
struct Summary<'a> {
    success: bool,
    registered: usize,
    scripts: Vec<&'a VerificationReport>,
    error: Option<String>,
}

/// Verifies the corpus (with `--all`) and then each listed file on top of
/// the theorems registered so far.
pub fn verify_all(args: &Args, ctx: &Context) -> (Status, Vec<VerificationReport>, TheoremRegistry, Option<String>) {
    let options = ctx.config.verify_options();
    let mut reports = Vec::new();
    let mut registry = TheoremRegistry::new();
    if args.all {
        let loaded = load_manifest(args.manifest.as_deref());
        let result = loaded.and_then(|(manifest, base)| {
            verify_corpus(&manifest, &base, &registry, &options, ctx.config.parallelism)
        });
        match result {
            Ok(CorpusReport {
                scripts, registry: r, ..
            }) => {
                reports = scripts;
                registry = r;
            }
            Err(e) => {
                let status = corpus_error_status(&e);
                if let ringproof::checker::CorpusError::Failed(r) = e {
                    reports.push(*r);
                    return (status, reports, registry, None);
                }
                return (status, reports, registry, Some(e.to_string()));
            }
        }
    }
    for path in &args.paths {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return (Status::Usage, reports, registry, Some(format!("{}: {e}", path.display()))),
        };
        let script = match parse_script_named(&text, Some(&path.display().to_string())) {
            Ok(s) => s,
            Err(e) => return (Status::Usage, reports, registry, Some(format!("parse error at {e}"))),
        };
        let report = verify_script(&script, &registry, &options);
        if let Some(f) = &report.failure {
            let status = failure_status(&f.reason);
            reports.push(report);
            return (status, reports, registry, None);
        }
        let thm = export_theorem(&report).expect("report succeeded");
        if let Err(e) = registry.register(thm) {
            reports.push(report);
            return (Status::Failed, reports, registry, Some(e.to_string()));
        }
        reports.push(report);
    }
    (Status::Ok, reports, registry, None)
}

pub fn run(args: Args, ctx: &mut Context) -> Status {
    if let Some(cap) = args.shift_cap {
        ctx.config.shift_cap = cap.max(1);
    }
    if let Some(j) = args.jobs {
        ctx.config.parallelism = j.max(1);
    }
    if !args.all && args.paths.is_empty() {
        eprintln!("error: nothing to verify (give script paths or --all)");
        return Status::Usage;
    }
    let (status, reports, registry, error) = verify_all(&args, ctx);
    if ctx.json() {
        print_json(&Summary {
            success: status == Status::Ok,
            registered: registry.len(),
            scripts: reports.iter().collect(),
            error: error.clone(),
        });
    } else {
        for r in &reports {
            if r.success {
                println!("{}", describe_success(r));
            } else {
                println!("{}", describe_failure(r));
            }
            if args.explain {
                print_witnesses(r);
            }
        }
        if let Some(e) = &error {
            eprintln!("error: {e}");
        }
        if status == Status::Ok {
            println!("verified {} scripts; {} theorems registered", reports.len(), registry.len());
        }
    }
    status
}
