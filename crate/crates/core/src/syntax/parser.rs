use std::collections::HashSet;

use num_traits::{ToPrimitive, Zero};

use super::lexer::{lex, Tok, Token};
use super::script::*;
use super::{SourceSpan, SyntaxError, SyntaxErrorKind};
use crate::algebra::Expression;

pub const KEYWORDS: &[&str] = &[
    "ad", "format", "lemma", "theorem", "vars", "import", "axiom", "rule", "hyp", "let", "have", "by",
    "normalize", "facts", "degree", "with", "qed",
];

pub const FORMAT_VERSION: u32 = 1;

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

type PResult<T> = Result<T, SyntaxError>;

pub struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    pub fn new(src: &str, file: Option<&str>) -> PResult<Self> {
        Ok(Parser {
            toks: lex(src, file)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, n: usize) -> &Tok {
        let i = (self.pos + n).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].span.clone()
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> SyntaxError {
        SyntaxError::new(
            SyntaxErrorKind::UnexpectedToken {
                expected: expected.to_string(),
                found: self.peek().describe(),
            },
            self.span(),
        )
    }

    fn expect(&mut self, tok: Tok, what: &str) -> PResult<SourceSpan> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(what))
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect_kw(&mut self, kw: &str) -> PResult<SourceSpan> {
        if self.is_kw(kw) {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&format!("`{kw}`")))
        }
    }

    /// A non-keyword identifier.
    fn ident(&mut self, what: &str) -> PResult<(String, SourceSpan)> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) => {
                let span = self.bump().span;
                Ok((s, span))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn skip_newlines(&mut self) {
        while *self.peek() == Tok::Newline {
            self.bump();
        }
    }

    fn end_of_line(&mut self) -> PResult<()> {
        match self.peek() {
            Tok::Newline => {
                self.skip_newlines();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => Err(self.unexpected("end of line")),
        }
    }

    pub fn expect_eof(&mut self) -> PResult<()> {
        self.skip_newlines();
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn starts_unary(&self, tok: &Tok) -> bool {
        match tok {
            Tok::Ident(s) => s == "ad" || !is_keyword(s),
            Tok::LParen | Tok::LBrack | Tok::Int(_) => true,
            _ => false,
        }
    }

    // expr := term (('+' | '-') term)*
    pub fn expr(&mut self) -> PResult<Expression> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expression::sum(lhs, rhs);
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expression::sub(lhs, rhs);
                }
                _ => return Ok(lhs),
            }
        }
    }

    // term := unary ('*'? unary)*
    fn term(&mut self) -> PResult<Expression> {
        let mut lhs = self.unary()?;
        loop {
            if *self.peek() == Tok::Star {
                self.bump();
            } else if !self.starts_unary(&self.peek().clone()) {
                return Ok(lhs);
            }
            let rhs = self.unary()?;
            lhs = Expression::product(lhs, rhs);
        }
    }

    fn scalar_follows(&self, n: usize) -> bool {
        let t = self.peek_at(n).clone();
        t == Tok::Star || self.starts_unary(&t)
    }

    fn scalar_operand(&mut self) -> PResult<Expression> {
        if *self.peek() == Tok::Star {
            self.bump();
        }
        self.unary()
    }

    // unary := '-' INT '*'? unary | '-' unary | INT '*'? unary | '0' | postfix
    fn unary(&mut self) -> PResult<Expression> {
        match self.peek().clone() {
            Tok::Minus => {
                self.bump();
                if let Tok::Int(n) = self.peek().clone() {
                    if self.scalar_follows(1) {
                        self.bump();
                        let inner = self.scalar_operand()?;
                        return Ok(Expression::Scalar(-n, Box::new(inner)));
                    }
                }
                Ok(Expression::neg(self.unary()?))
            }
            Tok::Int(n) => {
                let span = self.span();
                if self.scalar_follows(1) {
                    self.bump();
                    let inner = self.scalar_operand()?;
                    Ok(Expression::Scalar(n, Box::new(inner)))
                } else if n.is_zero() {
                    self.bump();
                    Ok(Expression::Zero)
                } else {
                    Err(SyntaxError::new(SyntaxErrorKind::BareInteger(n.to_string()), span))
                }
            }
            _ => self.postfix(),
        }
    }

    fn exponent(&mut self) -> PResult<u32> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                match n.to_u32() {
                    Some(k) if k >= 1 => Ok(k),
                    _ => Err(SyntaxError::new(SyntaxErrorKind::BadExponent(n.to_string()), span)),
                }
            }
            Tok::Minus => {
                let mut text = "-".to_string();
                let mut len = 1;
                self.bump();
                if let Tok::Int(n) = self.peek().clone() {
                    text.push_str(&n.to_string());
                    len += self.span().length;
                }
                let mut span = span;
                span.length = len;
                Err(SyntaxError::new(SyntaxErrorKind::BadExponent(text), span))
            }
            _ => Err(self.unexpected("exponent")),
        }
    }

    // postfix := atom ('^' exponent)*
    fn postfix(&mut self) -> PResult<Expression> {
        let mut base = self.atom()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let k = self.exponent()?;
            base = Expression::Power(Box::new(base), k);
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<Expression> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "ad" => {
                self.bump();
                self.expect(Tok::LParen, "`(` after `ad`")?;
                let op = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                let k = if *self.peek() == Tok::Caret {
                    self.bump();
                    self.exponent()?
                } else {
                    1
                };
                self.expect(Tok::LParen, "`(` before the argument of `ad`")?;
                let arg = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expression::AdPow {
                    op: Box::new(op),
                    k,
                    arg: Box::new(arg),
                })
            }
            Tok::Ident(s) if !is_keyword(&s) => {
                self.bump();
                Ok(Expression::Var(s))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::LBrack => {
                self.bump();
                let a = self.expr()?;
                self.expect(Tok::Comma, "`,` in commutator")?;
                let b = self.expr()?;
                self.expect(Tok::RBrack, "`]`")?;
                Ok(Expression::commutator(a, b))
            }
            _ => Err(self.unexpected("expression")),
        }
    }

    pub fn equation(&mut self) -> PResult<Equation> {
        let lhs = self.expr()?;
        self.expect(Tok::Eq, "`=`")?;
        let rhs = self.expr()?;
        Ok(Equation::new(lhs, rhs))
    }

    /// `eq (& eq)* (=> eq)?`
    pub fn statement(&mut self) -> PResult<StatementSyntax> {
        let mut eqs = vec![self.equation()?];
        while *self.peek() == Tok::Amp {
            self.bump();
            eqs.push(self.equation()?);
        }
        if *self.peek() == Tok::Implies {
            self.bump();
            let conclusion = self.equation()?;
            Ok(StatementSyntax {
                premises: eqs,
                conclusion,
            })
        } else if eqs.len() == 1 {
            Ok(StatementSyntax {
                premises: vec![],
                conclusion: eqs.pop().expect("one equation"),
            })
        } else {
            Err(self.unexpected("`=>`"))
        }
    }

    pub fn substitution(&mut self) -> PResult<SubstSyntax> {
        self.expect(Tok::LBrace, "`{`")?;
        let mut out: SubstSyntax = Vec::new();
        if *self.peek() == Tok::RBrace {
            self.bump();
            return Ok(out);
        }
        loop {
            let (name, span) = self.ident("variable name")?;
            if out.iter().any(|(n, _)| *n == name) {
                return Err(SyntaxError::new(SyntaxErrorKind::DuplicateLabel(name), span));
            }
            self.expect(Tok::Arrow, "`->`")?;
            let e = self.expr()?;
            out.push((name, e));
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RBrace => {
                    self.bump();
                    return Ok(out);
                }
                _ => return Err(self.unexpected("`,` or `}`")),
            }
        }
    }

    fn optional_degree(&mut self) -> PResult<Option<usize>> {
        if self.is_kw("degree") {
            self.bump();
            let span = self.span();
            match self.peek().clone() {
                Tok::Int(n) => {
                    self.bump();
                    n.to_usize()
                        .map(Some)
                        .ok_or_else(|| SyntaxError::new(SyntaxErrorKind::BadExponent(n.to_string()), span))
                }
                _ => Err(self.unexpected("degree bound")),
            }
        } else {
            Ok(None)
        }
    }

    fn justification(&mut self) -> PResult<Justification> {
        self.expect_kw("by")?;
        if self.is_kw("normalize") {
            self.bump();
            return Ok(Justification::Normalize);
        }
        if self.is_kw("facts") {
            self.bump();
            self.expect(Tok::LBrack, "`[`")?;
            let mut refs = Vec::new();
            if *self.peek() != Tok::RBrack {
                loop {
                    let (name, span) = self.ident("fact name")?;
                    let subst = if *self.peek() == Tok::LBrace {
                        Some(self.substitution()?)
                    } else {
                        None
                    };
                    refs.push(Spanned::new(FactRef { name, subst }, span));
                    match self.peek() {
                        Tok::Comma => {
                            self.bump();
                        }
                        Tok::RBrack => break,
                        _ => return Err(self.unexpected("`,` or `]`")),
                    }
                }
            }
            self.expect(Tok::RBrack, "`]`")?;
            let degree = self.optional_degree()?;
            return Ok(Justification::Facts { refs, degree });
        }
        if self.is_kw("rule") {
            self.bump();
            let (name, _) = self.ident("rule name")?;
            self.expect_kw("with")?;
            let subst = self.substitution()?;
            let degree = self.optional_degree()?;
            return Ok(Justification::Rule { name, subst, degree });
        }
        Err(self.unexpected("`normalize`, `facts` or `rule`"))
    }

    pub fn script(&mut self) -> PResult<ScriptFile> {
        self.skip_newlines();
        self.expect_kw("format")?;
        let span = self.span();
        let format = match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                n.to_u32().unwrap_or(u32::MAX)
            }
            _ => return Err(self.unexpected("format version")),
        };
        if format != FORMAT_VERSION {
            return Err(SyntaxError::new(SyntaxErrorKind::UnsupportedFormat(format), span));
        }
        self.end_of_line()?;

        let kind = if self.is_kw("lemma") {
            ScriptKind::Lemma
        } else if self.is_kw("theorem") {
            ScriptKind::Theorem
        } else {
            return Err(self.unexpected("`lemma` or `theorem`"));
        };
        self.bump();
        let (name, _) = self.ident("script name")?;
        self.end_of_line()?;

        self.expect_kw("vars")?;
        let mut vars = Vec::new();
        while let Tok::Ident(_) = self.peek() {
            let (v, span) = self.ident("variable")?;
            if vars.contains(&v) {
                return Err(SyntaxError::new(SyntaxErrorKind::DuplicateLabel(v), span));
            }
            vars.push(v);
        }
        self.end_of_line()?;

        let mut imports = Vec::new();
        let mut axioms = Vec::new();
        let mut rules = Vec::new();
        let mut hyps = Vec::new();
        loop {
            let span = self.span();
            if self.is_kw("import") {
                self.bump();
                let (n, nspan) = self.ident("theorem name")?;
                imports.push(Spanned::new(n, nspan));
            } else if self.is_kw("axiom") || self.is_kw("hyp") {
                let is_hyp = self.is_kw("hyp");
                self.bump();
                let (label, _) = self.ident("label")?;
                self.expect(Tok::Colon, "`:`")?;
                let eq = self.equation()?;
                let decl = Spanned::new(AxiomDecl { label, eq }, span);
                if is_hyp {
                    hyps.push(decl);
                } else {
                    axioms.push(decl);
                }
            } else if self.is_kw("rule") {
                self.bump();
                let (label, _) = self.ident("label")?;
                self.expect(Tok::Colon, "`:`")?;
                let st = self.statement()?;
                if st.premises.is_empty() {
                    return Err(SyntaxError::new(
                        SyntaxErrorKind::UnexpectedToken {
                            expected: "`=>` in rule".into(),
                            found: "identity".into(),
                        },
                        span,
                    ));
                }
                rules.push(Spanned::new(
                    RuleDecl {
                        label,
                        premises: st.premises,
                        conclusion: st.conclusion,
                    },
                    span,
                ));
            } else {
                break;
            }
            self.end_of_line()?;
        }

        let mut body = Vec::new();
        loop {
            let span = self.span();
            if self.is_kw("let") {
                self.bump();
                let (name, _) = self.ident("abbreviation name")?;
                self.expect(Tok::Assign, "`:=`")?;
                let expr = self.expr()?;
                body.push(Spanned::new(Step::Let { name, expr }, span));
            } else if self.is_kw("have") {
                self.bump();
                let (label, _) = self.ident("step label")?;
                self.expect(Tok::Colon, "`:`")?;
                let eq = self.equation()?;
                let by = self.justification()?;
                body.push(Spanned::new(Step::Have { label, eq, by }, span));
            } else {
                break;
            }
            self.end_of_line()?;
        }

        let span = self.span();
        if !self.is_kw("qed") {
            return Err(self.unexpected("`let`, `have` or `qed`"));
        }
        self.bump();
        let eq = self.equation()?;
        let conclusion = Spanned::new(eq, span);
        self.expect_eof()?;

        let script = ScriptFile {
            format,
            kind,
            name,
            vars,
            imports,
            axioms,
            rules,
            hyps,
            body,
            conclusion,
        };
        resolve(&script)?;
        Ok(script)
    }
}

fn check_idents(e: &Expression, scope: &HashSet<String>, span: &SourceSpan) -> PResult<()> {
    for v in e.free_vars() {
        if !scope.contains(&v) {
            return Err(SyntaxError::new(SyntaxErrorKind::Undeclared(v), span.clone()));
        }
    }
    Ok(())
}

fn check_eq(eq: &Equation, scope: &HashSet<String>, span: &SourceSpan) -> PResult<()> {
    check_idents(&eq.lhs, scope, span)?;
    check_idents(&eq.rhs, scope, span)
}

/// Name resolution: labels are unique, every reference is declared.
fn resolve(s: &ScriptFile) -> PResult<()> {
    let mut labels: HashSet<String> = HashSet::new();
    let mut claim = |name: &str, span: &SourceSpan| -> PResult<()> {
        if labels.insert(name.to_string()) {
            Ok(())
        } else {
            Err(SyntaxError::new(SyntaxErrorKind::DuplicateLabel(name.to_string()), span.clone()))
        }
    };
    for i in &s.imports {
        claim(&i.node, &i.span)?;
    }
    for a in &s.axioms {
        claim(&a.node.label, &a.span)?;
    }
    for r in &s.rules {
        claim(&r.node.label, &r.span)?;
    }
    for h in &s.hyps {
        claim(&h.node.label, &h.span)?;
    }

    let imports: HashSet<&str> = s.imports.iter().map(|i| i.node.as_str()).collect();
    let axioms: HashSet<&str> = s.axioms.iter().map(|a| a.node.label.as_str()).collect();
    let rules: HashSet<&str> = s.rules.iter().map(|r| r.node.label.as_str()).collect();
    let mut ledger: HashSet<String> = s.hyps.iter().map(|h| h.node.label.clone()).collect();

    let mut scope: HashSet<String> = s.vars.iter().cloned().collect();
    for h in &s.hyps {
        check_eq(&h.node.eq, &scope, &h.span)?;
    }

    let mut seen_steps: HashSet<String> = HashSet::new();
    for step in &s.body {
        match &step.node {
            Step::Let { name, expr } => {
                check_idents(expr, &scope, &step.span)?;
                if scope.contains(name) || labels.contains(name) || !seen_steps.insert(name.clone()) {
                    return Err(SyntaxError::new(SyntaxErrorKind::DuplicateLabel(name.clone()), step.span.clone()));
                }
                scope.insert(name.clone());
            }
            Step::Have { label, eq, by } => {
                if labels.contains(label) || scope.contains(label) || !seen_steps.insert(label.clone()) {
                    return Err(SyntaxError::new(SyntaxErrorKind::DuplicateLabel(label.clone()), step.span.clone()));
                }
                check_eq(eq, &scope, &step.span)?;
                match by {
                    Justification::Normalize => {}
                    Justification::Facts { refs, .. } => {
                        for r in refs {
                            let n = r.node.name.as_str();
                            if !(imports.contains(n) || axioms.contains(n) || ledger.contains(n)) {
                                return Err(SyntaxError::new(SyntaxErrorKind::Undeclared(n.to_string()), r.span.clone()));
                            }
                            for (_, e) in r.node.subst.iter().flatten() {
                                check_idents(e, &scope, &r.span)?;
                            }
                        }
                    }
                    Justification::Rule { name, subst, .. } => {
                        if !(imports.contains(name.as_str()) || rules.contains(name.as_str())) {
                            return Err(SyntaxError::new(SyntaxErrorKind::Undeclared(name.clone()), step.span.clone()));
                        }
                        for (_, e) in subst {
                            check_idents(e, &scope, &step.span)?;
                        }
                    }
                }
                ledger.insert(label.clone());
            }
        }
    }
    check_eq(&s.conclusion.node, &scope, &s.conclusion.span)
}
