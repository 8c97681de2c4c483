//! Text formats: the expression language, `.rpf` proof scripts and the
//! statement syntax used for model-finder axioms.
//!
//! Expression grammar, loosest binding first:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*'? unary)*
//! unary   := '-' unary | INT '*'? unary | '0' | postfix
//! postfix := atom ('^' INT)*
//! atom    := IDENT | '(' expr ')' | '[' expr ',' expr ']' | 'ad' '(' expr ')' ('^' INT)? '(' expr ')'
//! ```
//!
//! Integer literals only occur as scalar multipliers, with the single
//! exception of `0` for the additive identity.

mod lexer;
mod parser;
mod print;
mod script;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use parser::{is_keyword, FORMAT_VERSION, KEYWORDS};
pub use print::{format_equation, format_expression, format_script, format_statement, format_substitution};
pub use script::*;

use crate::algebra::{Alphabet, CanonicalForm, Expression};

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct SourceSpan {
    pub file: Option<String>,
    pub line: usize,
    pub column: usize,
    /// Byte offset of the first character.
    pub offset: usize,
    /// Length in bytes.
    pub length: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(file) = &self.file {
            write!(f, "{file}:")?;
        }
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxErrorKind {
    #[error("unexpected character `{0}`")]
    Lexical(char),
    #[error("expected {expected}, found {found}")]
    UnexpectedToken { expected: String, found: String },
    #[error("exponent must be a positive integer, found `{0}`")]
    BadExponent(String),
    #[error("bare integer `{0}` (integers only appear as scalar multipliers; there is no unity)")]
    BareInteger(String),
    #[error("duplicate name `{0}`")]
    DuplicateLabel(String),
    #[error("undeclared name `{0}`")]
    Undeclared(String),
    #[error("unsupported format version {0}")]
    UnsupportedFormat(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {kind}")]
pub struct SyntaxError {
    pub kind: SyntaxErrorKind,
    pub span: SourceSpan,
}

impl SyntaxError {
    pub fn new(kind: SyntaxErrorKind, span: SourceSpan) -> Self {
        SyntaxError { kind, span }
    }
}

/// Parses a standalone expression.
pub fn parse_expression(text: &str) -> Result<Expression, SyntaxError> {
    let mut p = parser::Parser::new(text, None)?;
    let e = p.expr()?;
    p.expect_eof()?;
    Ok(e)
}

/// Parses an expression and checks every variable against `alphabet`.
pub fn parse_expression_in(text: &str, alphabet: &Alphabet) -> Result<Expression, SyntaxError> {
    let e = parse_expression(text)?;
    for v in e.free_vars() {
        if alphabet.index_of(&v).is_none() {
            return Err(SyntaxError::new(
                SyntaxErrorKind::Undeclared(v),
                SourceSpan {
                    line: 1,
                    column: 1,
                    length: text.len(),
                    ..Default::default()
                },
            ));
        }
    }
    Ok(e)
}

pub fn parse_equation(text: &str) -> Result<Equation, SyntaxError> {
    let mut p = parser::Parser::new(text, None)?;
    let e = p.equation()?;
    p.expect_eof()?;
    Ok(e)
}

/// Parses `eq`, or `eq & eq … => eq` for a conditional rule.
pub fn parse_statement(text: &str) -> Result<StatementSyntax, SyntaxError> {
    let mut p = parser::Parser::new(text, None)?;
    let st = p.statement()?;
    p.expect_eof()?;
    Ok(st)
}

/// Parses `{x -> e, …}`.
pub fn parse_substitution(text: &str) -> Result<SubstSyntax, SyntaxError> {
    let mut p = parser::Parser::new(text, None)?;
    let s = p.substitution()?;
    p.expect_eof()?;
    Ok(s)
}

/// Parses and name-resolves a proof script.
pub fn parse_script(text: &str) -> Result<ScriptFile, SyntaxError> {
    parse_script_named(text, None)
}

pub fn parse_script_named(text: &str, file: Option<&str>) -> Result<ScriptFile, SyntaxError> {
    parser::Parser::new(text, file)?.script()
}

/// Anything with a canonical textual form.
pub enum Formattable<'a> {
    Expression(&'a Expression),
    Form(&'a CanonicalForm, &'a Alphabet),
    Script(&'a ScriptFile),
}

pub fn format(v: Formattable<'_>) -> String {
    match v {
        Formattable::Expression(e) => format_expression(e),
        Formattable::Form(f, a) => f.display(a),
        Formattable::Script(s) => format_script(s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{normalize, Expression as E};

    fn x() -> E {
        E::var("x")
    }
    fn y() -> E {
        E::var("y")
    }

    #[test]
    fn commutator_of_power_and_sum() {
        let e = parse_expression("[x^2,y^2+y]").unwrap();
        assert_eq!(e, E::commutator(E::power(x(), 2), E::sum(E::power(y(), 2), y())));
    }

    #[test]
    fn ad_polynomial_matches_commutator() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let lhs = parse_expression("ad(x)^4(y) + ad(x)^2(y) + ad(x)(y)").unwrap();
        let rhs = parse_expression("[x^4 + x^2 + x, y]").unwrap();
        assert_ne!(normalize(&lhs, &a).unwrap(), normalize(&rhs, &a).unwrap());
        // Only equal modulo 2-torsion; here check the ad form expands as nested commutators.
        let nested = parse_expression("[x,[x,[x,[x,y]]]] + [x,[x,y]] + [x,y]").unwrap();
        assert_eq!(normalize(&lhs, &a).unwrap(), normalize(&nested, &a).unwrap());
    }

    #[test]
    fn zero_exponent_rejected() {
        let err = parse_expression("x^0").unwrap_err();
        assert!(matches!(err.kind, SyntaxErrorKind::BadExponent(_)));
        assert_eq!(err.span.column, 3);
        let err = parse_expression("x^-2").unwrap_err();
        assert!(matches!(err.kind, SyntaxErrorKind::BadExponent(_)));
    }

    #[test]
    fn bare_integers_rejected() {
        for src in ["1", "x + 2", "x*3", "[x, 5]"] {
            let err = parse_expression(src).unwrap_err();
            assert!(matches!(err.kind, SyntaxErrorKind::BareInteger(_)), "{src}: {err}");
        }
        assert_eq!(parse_expression("0").unwrap(), E::Zero);
        assert_eq!(parse_expression("3*x^2").unwrap(), E::scalar(3, E::power(x(), 2)));
    }

    #[test]
    fn precedence() {
        // ^ binds tighter than unary minus, which binds tighter than *.
        assert_eq!(parse_expression("-x^2").unwrap(), E::neg(E::power(x(), 2)));
        assert_eq!(parse_expression("-x*y").unwrap(), E::product(E::neg(x()), y()));
        assert_eq!(parse_expression("x y").unwrap(), E::product(x(), y()));
        assert_eq!(parse_expression("x - y").unwrap(), E::sub(x(), y()));
        assert_eq!(parse_expression("-2*x").unwrap(), E::scalar(-2, x()));
    }

    #[test]
    fn form_formatting() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let f = normalize(&parse_expression("[x,[x,y]]").unwrap(), &a).unwrap();
        assert_eq!(format(Formattable::Form(&f, &a)), "x^2*y - 2*x*y*x + y*x^2");
    }

    #[test]
    fn statements() {
        let st = parse_statement("x*y = 0 => y*x = 0").unwrap();
        assert_eq!(st.premises.len(), 1);
        assert_eq!(st.vars(), vec!["x", "y"]);
        let st = parse_statement("x^3 = x").unwrap();
        assert!(st.premises.is_empty());
        assert!(parse_statement("x = x & y = y").is_err());
    }

    const CHAR4: &str = "format 1
lemma lemma_char_n4
vars x
axiom potency: x^4 = x
have neg: -x = x by facts [potency{x -> -x}, potency{x -> x}]
qed 2*x = 0
";

    #[test]
    fn script_round_trip() {
        let s = parse_script(CHAR4).unwrap();
        assert_eq!(s.name, "lemma_char_n4");
        assert_eq!(s.body.len(), 1);
        let again = parse_script(&format_script(&s)).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn trivial_script() {
        let s = parse_script("format 1\nlemma refl\nvars x\nqed x = x\n").unwrap();
        assert!(s.body.is_empty());
    }

    #[test]
    fn undeclared_import_is_a_resolution_error() {
        let src = "format 1\ntheorem t\nvars x y\nhave a: x = x by facts [missing_thm{x -> x}]\nqed x = x\n";
        let err = parse_script(src).unwrap_err();
        assert_eq!(err.kind, SyntaxErrorKind::Undeclared("missing_thm".into()));
        assert_eq!(err.span.line, 4);
    }

    #[test]
    fn duplicate_labels_rejected() {
        let src = "format 1\nlemma t\nvars x\nhave a: x = x by normalize\nhave a: x = x by normalize\nqed x = x\n";
        let err = parse_script(src).unwrap_err();
        assert_eq!(err.kind, SyntaxErrorKind::DuplicateLabel("a".into()));
    }

    #[test]
    fn undeclared_variable() {
        let src = "format 1\nlemma t\nvars x\nqed x = z\n";
        let err = parse_script(src).unwrap_err();
        assert_eq!(err.kind, SyntaxErrorKind::Undeclared("z".into()));
    }

    #[test]
    fn crlf_and_wrapped_lines() {
        let src = "format 1\r\nlemma t\r\nvars x y\r\nhave a: [x,\r\n  y] = -[y, x] by normalize\r\nqed x = x\r\n";
        let s = parse_script(src).unwrap();
        assert_eq!(s.body.len(), 1);
    }

    #[test]
    fn wrong_format_version() {
        let err = parse_script("format 2\nlemma t\nvars x\nqed x = x\n").unwrap_err();
        assert_eq!(err.kind, SyntaxErrorKind::UnsupportedFormat(2));
    }
}
