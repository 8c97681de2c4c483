use std::path::{Path, PathBuf};

use ringproof::checker::{CorpusError, FailureReason, Manifest, VerificationReport};
use serde::Serialize;

use crate::Status;

pub fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
}

/// The manifest given on the command line, else `proofs/manifest.toml` under
/// the working directory, else the corpus shipped with the sources.
pub fn manifest_path(given: Option<&Path>) -> PathBuf {
    if let Some(p) = given {
        return p.to_path_buf();
    }
    let local = PathBuf::from("proofs/manifest.toml");
    if local.exists() {
        return local;
    }
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../proofs/manifest.toml"))
}

pub fn load_manifest(given: Option<&Path>) -> Result<(Manifest, PathBuf), CorpusError> {
    let path = manifest_path(given);
    let manifest = Manifest::load(&path)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok((manifest, base))
}

pub fn failure_status(reason: &FailureReason) -> Status {
    if reason.is_resource_cap() {
        Status::ResourceCap
    } else {
        Status::Failed
    }
}

pub fn corpus_error_status(e: &CorpusError) -> Status {
    match e {
        CorpusError::Io { .. } | CorpusError::Manifest(_) | CorpusError::Syntax(_) => Status::Usage,
        CorpusError::Failed(r) => r.failure.as_ref().map_or(Status::Failed, |f| failure_status(&f.reason)),
        _ => Status::Failed,
    }
}

pub fn describe_failure(report: &VerificationReport) -> String {
    match &report.failure {
        Some(f) => format!("FAIL {}: step `{}` at {}: {} [{}]", report.script, f.label, f.span, f.message, f.class),
        None => format!("FAIL {}", report.script),
    }
}

pub fn describe_success(report: &VerificationReport) -> String {
    format!(
        "ok   {} ({} steps, {:.1} ms): {}",
        report.script,
        report.steps.len(),
        report.elapsed_ms,
        report.statement
    )
}

pub fn print_witnesses(report: &VerificationReport) {
    for step in &report.steps {
        for check in &step.checks {
            println!(
                "  {}: {} = 0 within degree {} ({} shifts)",
                step.label, check.target, check.degree_bound, check.columns
            );
            for t in &check.witness {
                let subst: Vec<String> = t.substitution.iter().map(|(k, v)| format!("{k} -> {v}")).collect();
                println!(
                    "    {} * [{}] {}{{{}}} [{}]",
                    t.coefficient,
                    t.left.as_deref().unwrap_or(""),
                    t.fact,
                    subst.join(", "),
                    t.right.as_deref().unwrap_or("")
                );
            }
        }
    }
}
