use serde::Serialize;

use super::SourceSpan;
use crate::algebra::Expression;

/// A node with its source location. Equality ignores the span, so a parsed
/// script compares equal to a re-parse of its formatted text.
#[derive(Debug, Clone)]
pub struct Spanned<T> {
    pub node: T,
    pub span: SourceSpan,
}

impl<T> Spanned<T> {
    pub fn new(node: T, span: SourceSpan) -> Self {
        Spanned { node, span }
    }
}

impl<T: PartialEq> PartialEq for Spanned<T> {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}

impl<T: Eq> Eq for Spanned<T> {}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Expression,
    pub rhs: Expression,
}

impl Equation {
    pub fn new(lhs: Expression, rhs: Expression) -> Self {
        Equation { lhs, rhs }
    }

    /// `lhs - rhs`.
    pub fn difference(&self) -> Expression {
        Expression::sub(self.lhs.clone(), self.rhs.clone())
    }

    pub fn collect_vars(&self, out: &mut Vec<String>) {
        self.lhs.collect_vars(out);
        self.rhs.collect_vars(out);
    }
}

/// `premises => conclusion`; an empty premise list is a plain identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatementSyntax {
    pub premises: Vec<Equation>,
    pub conclusion: Equation,
}

impl StatementSyntax {
    /// Variables in order of first occurrence (premises first).
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        for p in &self.premises {
            p.collect_vars(&mut out);
        }
        self.conclusion.collect_vars(&mut out);
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScriptKind {
    Lemma,
    Theorem,
}

impl ScriptKind {
    pub fn keyword(self) -> &'static str {
        match self {
            ScriptKind::Lemma => "lemma",
            ScriptKind::Theorem => "theorem",
        }
    }
}

/// Ordered substitution as written in the source.
pub type SubstSyntax = Vec<(String, Expression)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactRef {
    pub name: String,
    pub subst: Option<SubstSyntax>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Normalize,
    Facts {
        refs: Vec<Spanned<FactRef>>,
        degree: Option<usize>,
    },
    Rule {
        name: String,
        subst: SubstSyntax,
        degree: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Let { name: String, expr: Expression },
    Have {
        label: String,
        eq: Equation,
        by: Justification,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomDecl {
    pub label: String,
    pub eq: Equation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleDecl {
    pub label: String,
    pub premises: Vec<Equation>,
    pub conclusion: Equation,
}

/// A parsed `.rpf` proof script.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptFile {
    pub format: u32,
    pub kind: ScriptKind,
    pub name: String,
    pub vars: Vec<String>,
    pub imports: Vec<Spanned<String>>,
    /// Ambient identities, universally quantified over their own variables.
    pub axioms: Vec<Spanned<AxiomDecl>>,
    /// Ambient conditional rules.
    pub rules: Vec<Spanned<RuleDecl>>,
    /// Local premises about the script variables.
    pub hyps: Vec<Spanned<AxiomDecl>>,
    pub body: Vec<Spanned<Step>>,
    pub conclusion: Spanned<Equation>,
}
