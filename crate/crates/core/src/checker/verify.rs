use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use super::registry::{Provenance, RegisteredTheorem, TheoremRegistry};
use super::statement::{Statement, SubstitutionError};
use crate::algebra::{normalize, AlgebraError, Alphabet, CanonicalForm, Expression};
use crate::membership::{
    check_membership, FactInstance, FactSourceKind, MembershipError, MembershipWitness, WitnessTermJson,
    DEFAULT_SHIFT_CAP,
};
use crate::syntax::{
    format_expression, Equation, FactRef, Justification, ScriptFile, ScriptKind, SourceSpan, Step, SubstSyntax,
};

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub shift_cap: usize,
    /// Degree bounds keyed by `script/step`, taking precedence over the
    /// bound written in the script.
    pub degree_overrides: HashMap<String, usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            shift_cap: DEFAULT_SHIFT_CAP,
            degree_overrides: HashMap::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FailureReason {
    #[error("unknown import `{0}`")]
    UnknownImport(String),
    #[error("import `{import}` was proved under `{requirement}`, which is not available here")]
    ContextUnavailable { import: String, requirement: String },
    #[error("`{name}` is not {expected}")]
    KindMismatch { name: String, expected: &'static str },
    #[error("local fact `{0}` takes no substitution")]
    LocalWithSubstitution(String),
    #[error("`{0}` needs an explicit substitution")]
    MissingSubstitution(String),
    #[error("bad substitution for `{name}`: {source}")]
    Substitution { name: String, source: SubstitutionError },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("sides differ by {difference}")]
    NormalizeMismatch { difference: String },
    #[error("not in the ideal of the cited facts within degree {bound} ({columns} shifts)")]
    NotInIdeal { bound: usize, columns: usize },
    #[error("premise {index} `{premise}` is not derivable within degree {bound}")]
    PremiseUndischarged { index: usize, premise: String, bound: usize },
    #[error("rule concludes `{expected} = 0`, step states `{found} = 0`")]
    RuleConclusionMismatch { expected: String, found: String },
    #[error("final equation differs by {difference}, which is not a derived fact")]
    QedMismatch { difference: String },
    #[error(transparent)]
    Membership(#[from] MembershipError),
    #[error("witness does not replay to the target")]
    WitnessReplay,
}

impl FailureReason {
    /// Stable short name for reports.
    pub fn class(&self) -> &'static str {
        match self {
            FailureReason::UnknownImport(_)
            | FailureReason::KindMismatch { .. }
            | FailureReason::LocalWithSubstitution(_)
            | FailureReason::MissingSubstitution(_) => "resolution",
            FailureReason::ContextUnavailable { .. } => "context",
            FailureReason::Substitution { .. } | FailureReason::Algebra(_) => "substitution",
            FailureReason::NormalizeMismatch { .. } => "normalize",
            FailureReason::NotInIdeal { .. } | FailureReason::WitnessReplay => "membership",
            FailureReason::PremiseUndischarged { .. } => "premise",
            FailureReason::RuleConclusionMismatch { .. } => "rule-conclusion",
            FailureReason::QedMismatch { .. } => "qed",
            FailureReason::Membership(MembershipError::BoundBelowTarget { .. }) => "degree-bound",
            FailureReason::Membership(MembershipError::ShiftCap { .. }) => "shift-cap",
        }
    }

    pub fn is_resource_cap(&self) -> bool {
        matches!(self, FailureReason::Membership(MembershipError::ShiftCap { .. }))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyFailure {
    pub label: String,
    pub span: SourceSpan,
    pub class: &'static str,
    pub message: String,
    #[serde(skip)]
    pub reason: FailureReason,
}

impl VerifyFailure {
    fn new(label: &str, span: &SourceSpan, reason: FailureReason) -> Self {
        VerifyFailure {
            label: label.to_string(),
            span: span.clone(),
            class: reason.class(),
            message: reason.to_string(),
            reason,
        }
    }
}

/// One ideal-membership query and its certificate.
#[derive(Debug, Clone, Serialize)]
pub struct MembershipCheck {
    pub target: String,
    pub degree_bound: usize,
    pub columns: usize,
    pub witness: Vec<WitnessTermJson>,
    #[serde(skip)]
    pub target_form: CanonicalForm,
    #[serde(skip)]
    pub facts: Vec<FactInstance>,
    #[serde(skip)]
    pub raw_witness: MembershipWitness,
}

#[derive(Debug, Clone, Serialize)]
pub struct StepReport {
    pub label: String,
    pub justification: &'static str,
    pub checks: Vec<MembershipCheck>,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub script: String,
    pub kind: ScriptKind,
    pub success: bool,
    pub statement: String,
    pub steps: Vec<StepReport>,
    pub failure: Option<VerifyFailure>,
    pub elapsed_ms: f64,
    #[serde(skip)]
    pub exported: Option<(Statement, Vec<Statement>)>,
    #[serde(skip)]
    pub imports: Vec<String>,
    #[serde(skip)]
    pub alphabet: Option<Alphabet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExportError {
    #[error("`{0}` did not verify")]
    NotVerified(String),
}

/// Turns a successful report into a theorem carrying its ambient context.
pub fn export_theorem(report: &VerificationReport) -> Result<RegisteredTheorem, ExportError> {
    match (&report.exported, report.success) {
        (Some((statement, context)), true) => Ok(RegisteredTheorem {
            statement: statement.clone(),
            context: context.clone(),
            provenance: Provenance::Verified {
                script: report.script.clone(),
            },
            dependencies: report.imports.clone(),
        }),
        _ => Err(ExportError::NotVerified(report.script.clone())),
    }
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1000.0
}

fn expand_eq(eq: &Equation, defs: &BTreeMap<String, Expression>) -> Equation {
    Equation::new(eq.lhs.expand(defs), eq.rhs.expand(defs))
}

struct Verifier<'a> {
    script: &'a ScriptFile,
    options: &'a VerifyOptions,
    alphabet: Alphabet,
    /// Ambient axioms and rules, then imported statements, by name.
    citable: HashMap<String, Statement>,
    defs: BTreeMap<String, Expression>,
    ledger: Vec<FactInstance>,
}

impl Verifier<'_> {
    fn bound(&self, label: &str, written: Option<usize>) -> Option<usize> {
        self.options
            .degree_overrides
            .get(&format!("{}/{label}", self.script.name))
            .copied()
            .or(written)
    }

    fn statement(&self, name: &str) -> Result<&Statement, FailureReason> {
        self.citable
            .get(name)
            .ok_or_else(|| FailureReason::UnknownImport(name.to_string()))
    }

    fn sigma(&self, name: &str, subst: &SubstSyntax) -> Result<BTreeMap<String, Expression>, FailureReason> {
        let mut out = BTreeMap::new();
        for (v, e) in subst {
            if out.insert(v.clone(), e.expand(&self.defs)).is_some() {
                return Err(FailureReason::Substitution {
                    name: name.to_string(),
                    source: SubstitutionError::Duplicate(v.clone()),
                });
            }
        }
        Ok(out)
    }

    fn instantiate(
        &self,
        st: &Statement,
        sigma: &BTreeMap<String, Expression>,
    ) -> Result<(Vec<CanonicalForm>, CanonicalForm), FailureReason> {
        st.instantiate(sigma, &self.alphabet)
            .map_err(|source| FailureReason::Substitution {
                name: st.name().to_string(),
                source,
            })
    }

    fn fact(&self, r: &FactRef) -> Result<FactInstance, FailureReason> {
        if let Some(f) = self.ledger.iter().find(|f| f.name == r.name) {
            if r.subst.is_some() {
                return Err(FailureReason::LocalWithSubstitution(r.name.clone()));
            }
            return Ok(f.clone());
        }
        let st = self.statement(&r.name)?;
        if st.is_rule() {
            return Err(FailureReason::KindMismatch {
                name: r.name.clone(),
                expected: "an identity",
            });
        }
        let subst = r
            .subst
            .as_ref()
            .ok_or_else(|| FailureReason::MissingSubstitution(r.name.clone()))?;
        let sigma = self.sigma(&r.name, subst)?;
        let (_, form) = self.instantiate(st, &sigma)?;
        let kind = if self.script.axioms.iter().any(|a| a.node.label == r.name) {
            FactSourceKind::Axiom
        } else {
            FactSourceKind::Theorem
        };
        Ok(FactInstance {
            kind,
            name: r.name.clone(),
            substitution: sigma.iter().map(|(k, v)| (k.clone(), format_expression(v))).collect(),
            form,
        })
    }

    fn member(
        &self,
        target: &CanonicalForm,
        facts: Vec<FactInstance>,
        bound: Option<usize>,
    ) -> Result<Result<MembershipCheck, (usize, usize)>, FailureReason> {
        let outcome = check_membership(target, &facts, bound, self.options.shift_cap)?;
        let Some(witness) = outcome.witness else {
            return Ok(Err((outcome.bound, outcome.columns)));
        };
        if &witness.replay(&facts) != target {
            return Err(FailureReason::WitnessReplay);
        }
        Ok(Ok(MembershipCheck {
            target: target.display(&self.alphabet),
            degree_bound: outcome.bound,
            columns: outcome.columns,
            witness: witness.to_json(&facts, &self.alphabet),
            target_form: target.clone(),
            facts,
            raw_witness: witness,
        }))
    }

    fn have(&self, label: &str, eq: &Equation, by: &Justification) -> Result<Vec<MembershipCheck>, FailureReason> {
        let target = normalize(&eq.difference(), &self.alphabet)?;
        match by {
            Justification::Normalize => {
                if target.is_zero() {
                    Ok(Vec::new())
                } else {
                    Err(FailureReason::NormalizeMismatch {
                        difference: target.display(&self.alphabet),
                    })
                }
            }
            Justification::Facts { refs, degree } => {
                let facts = refs.iter().map(|r| self.fact(&r.node)).collect::<Result<Vec<_>, _>>()?;
                match self.member(&target, facts, self.bound(label, *degree))? {
                    Ok(check) => Ok(vec![check]),
                    Err((bound, columns)) => Err(FailureReason::NotInIdeal { bound, columns }),
                }
            }
            Justification::Rule { name, subst, degree } => {
                let st = self.statement(name)?;
                if !st.is_rule() {
                    return Err(FailureReason::KindMismatch {
                        name: name.clone(),
                        expected: "a conditional rule",
                    });
                }
                let sigma = self.sigma(name, subst)?;
                let (premises, concl) = self.instantiate(st, &sigma)?;
                let mut checks = Vec::new();
                for (i, p) in premises.iter().enumerate() {
                    let bound = self.bound(label, *degree).unwrap_or(p.degree());
                    match self.member(p, self.ledger.clone(), Some(bound))? {
                        Ok(check) => checks.push(check),
                        Err((bound, _)) => {
                            return Err(FailureReason::PremiseUndischarged {
                                index: i + 1,
                                premise: format!("{} = 0", p.display(&self.alphabet)),
                                bound,
                            })
                        }
                    }
                }
                if !concl.equal_up_to_sign(&target) {
                    return Err(FailureReason::RuleConclusionMismatch {
                        expected: concl.display(&self.alphabet),
                        found: target.display(&self.alphabet),
                    });
                }
                Ok(checks)
            }
        }
    }
}

fn justification_name(by: &Justification) -> &'static str {
    match by {
        Justification::Normalize => "normalize",
        Justification::Facts { .. } => "facts",
        Justification::Rule { .. } => "rule",
    }
}

/// Checks every step of `script` against the theorems in `registry`. The
/// first failing step stops verification.
pub fn verify_script(script: &ScriptFile, registry: &TheoremRegistry, options: &VerifyOptions) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport {
        script: script.name.clone(),
        kind: script.kind,
        success: false,
        statement: String::new(),
        steps: Vec::new(),
        failure: None,
        elapsed_ms: 0.0,
        exported: None,
        imports: script.imports.iter().map(|i| i.node.clone()).collect(),
        alphabet: None,
    };
    if let Err(f) = run(script, registry, options, &mut report) {
        log::info!("{}: step `{}` failed: {}", script.name, f.label, f.message);
        report.failure = Some(f);
    } else {
        report.success = true;
    }
    report.elapsed_ms = ms(start);
    report
}

fn run(
    script: &ScriptFile,
    registry: &TheoremRegistry,
    options: &VerifyOptions,
    report: &mut VerificationReport,
) -> Result<(), VerifyFailure> {
    let header = &script.conclusion.span;
    let alphabet = Alphabet::new(script.vars.iter().cloned())
        .map_err(|e| VerifyFailure::new("vars", header, FailureReason::Algebra(e)))?;

    let mut context = Vec::new();
    for a in &script.axioms {
        let mut vars = Vec::new();
        a.node.eq.collect_vars(&mut vars);
        context.push(Statement::with_vars(&a.node.label, vars, Vec::new(), a.node.eq.clone()));
    }
    for r in &script.rules {
        let mut vars = Vec::new();
        for p in &r.node.premises {
            p.collect_vars(&mut vars);
        }
        r.node.conclusion.collect_vars(&mut vars);
        context.push(Statement::with_vars(
            &r.node.label,
            vars,
            r.node.premises.clone(),
            r.node.conclusion.clone(),
        ));
    }

    let mut available = context.clone();
    for imp in &script.imports {
        let thm = registry
            .get(&imp.node)
            .ok_or_else(|| VerifyFailure::new(&imp.node, &imp.span, FailureReason::UnknownImport(imp.node.clone())))?;
        for need in &thm.context {
            if !available.iter().any(|have| need.matches(have)) {
                return Err(VerifyFailure::new(
                    &imp.node,
                    &imp.span,
                    FailureReason::ContextUnavailable {
                        import: imp.node.clone(),
                        requirement: need.display(),
                    },
                ));
            }
        }
        available.push(thm.statement.clone());
    }
    let mut citable: HashMap<String, Statement> = context.iter().map(|s| (s.name().to_string(), s.clone())).collect();
    for imp in &script.imports {
        let thm = registry.get(&imp.node).expect("checked above");
        citable.insert(imp.node.clone(), thm.statement.clone());
    }

    let mut v = Verifier {
        script,
        options,
        alphabet,
        citable,
        defs: BTreeMap::new(),
        ledger: Vec::new(),
    };
    for h in &script.hyps {
        let form = normalize(&h.node.eq.difference(), &v.alphabet)
            .map_err(|e| VerifyFailure::new(&h.node.label, &h.span, e.into()))?;
        v.ledger.push(FactInstance::local(&h.node.label, form));
    }

    for step in &script.body {
        match &step.node {
            Step::Let { name, expr } => {
                let e = expr.expand(&v.defs);
                v.defs.insert(name.clone(), e);
            }
            Step::Have { label, eq, by } => {
                let t = Instant::now();
                let eq = expand_eq(eq, &v.defs);
                let checks = v.have(label, &eq, by).map_err(|r| VerifyFailure::new(label, &step.span, r))?;
                let form = normalize(&eq.difference(), &v.alphabet).expect("normalized in have");
                log::debug!("{}: `{label}` verified", script.name);
                v.ledger.push(FactInstance::local(label, form));
                report.steps.push(StepReport {
                    label: label.clone(),
                    justification: justification_name(by),
                    checks,
                    elapsed_ms: ms(t),
                });
            }
        }
    }

    let t = Instant::now();
    let qed = expand_eq(&script.conclusion.node, &v.defs);
    let diff = normalize(&qed.difference(), &v.alphabet)
        .map_err(|e| VerifyFailure::new("qed", &script.conclusion.span, e.into()))?;
    if !diff.is_zero() && !v.ledger.iter().any(|f| f.form.equal_up_to_sign(&diff)) {
        return Err(VerifyFailure::new(
            "qed",
            &script.conclusion.span,
            FailureReason::QedMismatch {
                difference: diff.display(&v.alphabet),
            },
        ));
    }
    report.steps.push(StepReport {
        label: "qed".to_string(),
        justification: "qed",
        checks: Vec::new(),
        elapsed_ms: ms(t),
    });

    let hyps: Vec<Equation> = script.hyps.iter().map(|h| h.node.eq.clone()).collect();
    let mut occurring = Vec::new();
    for h in &hyps {
        h.collect_vars(&mut occurring);
    }
    qed.collect_vars(&mut occurring);
    let vars: Vec<String> = script.vars.iter().filter(|x| occurring.contains(x)).cloned().collect();
    let statement = Statement::with_vars(&script.name, vars, hyps, qed);
    report.statement = statement.display();
    report.exported = Some((statement, context));
    report.alphabet = Some(v.alphabet);
    Ok(())
}
