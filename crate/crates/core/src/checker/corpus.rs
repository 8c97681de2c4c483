use std::collections::HashMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::registry::{RegistryError, TheoremRegistry};
use super::verify::{export_theorem, verify_script, VerificationReport, VerifyOptions};
use crate::syntax::{parse_script_named, ScriptFile, SyntaxError};

/// One manifest line: a script, the name it must export, and the theorems it
/// may import.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub path: String,
    pub name: String,
    #[serde(default)]
    pub deps: Vec<String>,
}

/// Ordered corpus listing, stored as TOML `[[script]]` tables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    #[serde(default, rename = "script")]
    pub scripts: Vec<ManifestEntry>,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("manifest: {0}")]
    Manifest(String),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{path} declares `{found}` but the manifest expects `{expected}`")]
    NameMismatch { path: String, expected: String, found: String },
    #[error("`{0}` is listed twice")]
    DuplicateName(String),
    #[error("`{script}` depends on unknown `{dep}`")]
    UnknownDependency { script: String, dep: String },
    #[error("dependency cycle: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("`{script}` depends on `{dep}`, which is listed after it")]
    OrderViolation { script: String, dep: String },
    #[error("`{script}` imports `{import}` without listing it as a dependency")]
    UndeclaredImport { script: String, import: String },
    #[error("`{}` failed", .0.script)]
    Failed(Box<VerificationReport>),
    #[error(transparent)]
    Registry(#[from] RegistryError),
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Manifest, CorpusError> {
        toml::from_str(text).map_err(|e| CorpusError::Manifest(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Manifest, CorpusError> {
        let text = std::fs::read_to_string(path).map_err(|e| CorpusError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Manifest::parse(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("manifest serializes")
    }

    /// Checks names, dependency order and cycles. Dependencies outside the
    /// manifest must already be in `known`.
    pub fn check_order(&self, known: &TheoremRegistry) -> Result<(), CorpusError> {
        let mut pos = HashMap::new();
        for (i, e) in self.scripts.iter().enumerate() {
            if pos.insert(e.name.as_str(), i).is_some() || known.contains(&e.name) {
                return Err(CorpusError::DuplicateName(e.name.clone()));
            }
        }
        for e in &self.scripts {
            for d in &e.deps {
                if !pos.contains_key(d.as_str()) && !known.contains(d) {
                    return Err(CorpusError::UnknownDependency {
                        script: e.name.clone(),
                        dep: d.clone(),
                    });
                }
            }
        }
        if let Some(cycle) = self.find_cycle(&pos) {
            return Err(CorpusError::Cycle(cycle));
        }
        for (i, e) in self.scripts.iter().enumerate() {
            for d in &e.deps {
                if pos.get(d.as_str()).is_some_and(|&j| j >= i) {
                    return Err(CorpusError::OrderViolation {
                        script: e.name.clone(),
                        dep: d.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    fn find_cycle(&self, pos: &HashMap<&str, usize>) -> Option<Vec<String>> {
        // 0 unvisited, 1 on stack, 2 done
        let mut state = vec![0u8; self.scripts.len()];
        let mut stack = Vec::new();
        fn dfs(m: &Manifest, pos: &HashMap<&str, usize>, i: usize, state: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<String>> {
            state[i] = 1;
            stack.push(i);
            for d in &m.scripts[i].deps {
                let Some(&j) = pos.get(d.as_str()) else { continue };
                if state[j] == 1 {
                    let from = stack.iter().position(|&k| k == j).expect("on stack");
                    let mut cycle: Vec<String> = stack[from..].iter().map(|&k| m.scripts[k].name.clone()).collect();
                    cycle.push(m.scripts[j].name.clone());
                    return Some(cycle);
                }
                if state[j] == 0 {
                    if let Some(c) = dfs(m, pos, j, state, stack) {
                        return Some(c);
                    }
                }
            }
            stack.pop();
            state[i] = 2;
            None
        }
        (0..self.scripts.len()).find_map(|i| if state[i] == 0 { dfs(self, pos, i, &mut state, &mut stack) } else { None })
    }

    /// Sub-manifest of `roots` and everything they transitively depend on,
    /// in manifest order.
    pub fn closure(&self, roots: &[String]) -> Manifest {
        let pos: HashMap<&str, usize> = self.scripts.iter().enumerate().map(|(i, e)| (e.name.as_str(), i)).collect();
        let mut keep = vec![false; self.scripts.len()];
        let mut todo: Vec<usize> = roots.iter().filter_map(|r| pos.get(r.as_str()).copied()).collect();
        while let Some(i) = todo.pop() {
            if std::mem::replace(&mut keep[i], true) {
                continue;
            }
            todo.extend(self.scripts[i].deps.iter().filter_map(|d| pos.get(d.as_str()).copied()));
        }
        Manifest {
            scripts: self.scripts.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e.clone()).collect(),
        }
    }
}

/// Reports in manifest order plus the registry they built.
#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub scripts: Vec<VerificationReport>,
    pub registered: usize,
    #[serde(skip)]
    pub registry: TheoremRegistry,
}

pub fn load_script(base_dir: &Path, entry: &ManifestEntry) -> Result<ScriptFile, CorpusError> {
    let path: PathBuf = base_dir.join(&entry.path);
    let text = std::fs::read_to_string(&path).map_err(|e| CorpusError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Ok(parse_script_named(&text, Some(&entry.path))?)
}

/// Verifies a manifest on top of `base`. Scripts at the same dependency depth
/// run concurrently on up to `parallelism` threads; the registry is extended
/// only if every script verifies.
pub fn verify_corpus(
    manifest: &Manifest,
    base_dir: &Path,
    base: &TheoremRegistry,
    options: &VerifyOptions,
    parallelism: usize,
) -> Result<CorpusReport, CorpusError> {
    manifest.check_order(base)?;
    let mut scripts = Vec::with_capacity(manifest.scripts.len());
    for e in &manifest.scripts {
        let s = load_script(base_dir, e)?;
        if s.name != e.name {
            return Err(CorpusError::NameMismatch {
                path: e.path.clone(),
                expected: e.name.clone(),
                found: s.name,
            });
        }
        if let Some(i) = s.imports.iter().find(|i| !e.deps.contains(&i.node)) {
            return Err(CorpusError::UndeclaredImport {
                script: e.name.clone(),
                import: i.node.clone(),
            });
        }
        scripts.push(s);
    }

    let pos: HashMap<&str, usize> = manifest.scripts.iter().enumerate().map(|(i, e)| (e.name.as_str(), i)).collect();
    let mut depth = vec![0usize; scripts.len()];
    for (i, e) in manifest.scripts.iter().enumerate() {
        depth[i] = e
            .deps
            .iter()
            .filter_map(|d| pos.get(d.as_str()))
            .map(|&j| depth[j] + 1)
            .max()
            .unwrap_or(0);
    }
    let levels = depth.iter().copied().max().map_or(0, |m| m + 1);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism.max(1))
        .build()
        .map_err(|e| CorpusError::Manifest(format!("thread pool: {e}")))?;
    let mut registry = base.clone();
    let mut reports: Vec<Option<VerificationReport>> = vec![None; scripts.len()];
    for level in 0..levels {
        let members: Vec<usize> = (0..scripts.len()).filter(|&i| depth[i] == level).collect();
        let done: Vec<(usize, VerificationReport)> = pool.install(|| {
            members
                .par_iter()
                .map(|&i| (i, verify_script(&scripts[i], &registry, options)))
                .collect()
        });
        for (i, report) in done {
            if !report.success {
                return Err(CorpusError::Failed(Box::new(report)));
            }
            reports[i] = Some(report);
        }
        for &i in &members {
            let thm = export_theorem(reports[i].as_ref().expect("verified")).expect("successful report");
            registry.register(thm)?;
        }
    }
    Ok(CorpusReport {
        registered: scripts.len(),
        scripts: reports.into_iter().map(|r| r.expect("every level ran")).collect(),
        registry,
    })
}
