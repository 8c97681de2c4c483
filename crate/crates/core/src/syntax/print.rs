use std::fmt::Write;

use super::script::*;
use crate::algebra::Expression;

/// Formats an expression so that parsing the text yields the same tree.
pub fn format_expression(e: &Expression) -> String {
    let mut s = String::new();
    sum(e, &mut s);
    s
}

fn sum(e: &Expression, out: &mut String) {
    match e {
        Expression::Sum(l, r) => {
            sum(l, out);
            if let Expression::Neg(inner) = r.as_ref() {
                out.push_str(" - ");
                term(inner, out);
            } else {
                out.push_str(" + ");
                term(r, out);
            }
        }
        _ => term(e, out),
    }
}

fn term(e: &Expression, out: &mut String) {
    match e {
        Expression::Sum(..) => paren(e, out),
        Expression::Product(l, r) => {
            if matches!(l.as_ref(), Expression::Zero) {
                out.push_str("(0)");
            } else {
                term(l, out);
            }
            out.push('*');
            unary(r, out);
        }
        _ => unary(e, out),
    }
}

fn unary(e: &Expression, out: &mut String) {
    match e {
        Expression::Sum(..) | Expression::Product(..) => paren(e, out),
        Expression::Neg(inner) => {
            out.push('-');
            match inner.as_ref() {
                Expression::Scalar(..) | Expression::Zero => paren(inner, out),
                _ => unary(inner, out),
            }
        }
        Expression::Scalar(k, inner) => {
            let _ = write!(out, "{k}*");
            unary(inner, out);
        }
        Expression::Zero => out.push('0'),
        _ => postfix(e, out),
    }
}

fn postfix(e: &Expression, out: &mut String) {
    match e {
        Expression::Power(base, k) => {
            atom(base, out);
            let _ = write!(out, "^{k}");
        }
        _ => atom(e, out),
    }
}

fn atom(e: &Expression, out: &mut String) {
    match e {
        Expression::Var(v) => out.push_str(v),
        Expression::Commutator(a, b) => {
            out.push('[');
            sum(a, out);
            out.push_str(", ");
            sum(b, out);
            out.push(']');
        }
        Expression::AdPow { op, k, arg } => {
            out.push_str("ad(");
            sum(op, out);
            out.push(')');
            if *k != 1 {
                let _ = write!(out, "^{k}");
            }
            out.push('(');
            sum(arg, out);
            out.push(')');
        }
        _ => paren(e, out),
    }
}

fn paren(e: &Expression, out: &mut String) {
    out.push('(');
    sum(e, out);
    out.push(')');
}

pub fn format_equation(eq: &Equation) -> String {
    format!("{} = {}", format_expression(&eq.lhs), format_expression(&eq.rhs))
}

pub fn format_statement(st: &StatementSyntax) -> String {
    if st.premises.is_empty() {
        format_equation(&st.conclusion)
    } else {
        let premises: Vec<String> = st.premises.iter().map(format_equation).collect();
        format!("{} => {}", premises.join(" & "), format_equation(&st.conclusion))
    }
}

pub fn format_substitution(s: &SubstSyntax) -> String {
    let parts: Vec<String> = s
        .iter()
        .map(|(v, e)| format!("{v} -> {}", format_expression(e)))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn format_justification(by: &Justification) -> String {
    match by {
        Justification::Normalize => "by normalize".to_string(),
        Justification::Facts { refs, degree } => {
            let parts: Vec<String> = refs
                .iter()
                .map(|r| match &r.node.subst {
                    Some(s) => format!("{}{}", r.node.name, format_substitution(s)),
                    None => r.node.name.clone(),
                })
                .collect();
            let mut s = format!("by facts [{}]", parts.join(", "));
            if let Some(d) = degree {
                let _ = write!(s, " degree {d}");
            }
            s
        }
        Justification::Rule { name, subst, degree } => {
            let mut s = format!("by rule {name} with {}", format_substitution(subst));
            if let Some(d) = degree {
                let _ = write!(s, " degree {d}");
            }
            s
        }
    }
}

/// Canonical text layout of a script.
pub fn format_script(s: &ScriptFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "format {}", s.format);
    let _ = writeln!(out, "{} {}", s.kind.keyword(), s.name);
    if s.vars.is_empty() {
        out.push_str("vars\n");
    } else {
        let _ = writeln!(out, "vars {}", s.vars.join(" "));
    }
    for i in &s.imports {
        let _ = writeln!(out, "import {}", i.node);
    }
    for a in &s.axioms {
        let _ = writeln!(out, "axiom {}: {}", a.node.label, format_equation(&a.node.eq));
    }
    for r in &s.rules {
        let st = StatementSyntax {
            premises: r.node.premises.clone(),
            conclusion: r.node.conclusion.clone(),
        };
        let _ = writeln!(out, "rule {}: {}", r.node.label, format_statement(&st));
    }
    for h in &s.hyps {
        let _ = writeln!(out, "hyp {}: {}", h.node.label, format_equation(&h.node.eq));
    }
    for step in &s.body {
        match &step.node {
            Step::Let { name, expr } => {
                let _ = writeln!(out, "let {name} := {}", format_expression(expr));
            }
            Step::Have { label, eq, by } => {
                let _ = writeln!(out, "have {label}: {} {}", format_equation(eq), format_justification(by));
            }
        }
    }
    let _ = writeln!(out, "qed {}", format_equation(&s.conclusion.node));
    out
}
