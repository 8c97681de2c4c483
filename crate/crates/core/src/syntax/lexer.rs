use num_bigint::BigInt;

use super::{SourceSpan, SyntaxError, SyntaxErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Eq,
    Assign,
    Arrow,
    Implies,
    Amp,
    Newline,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Caret => "^",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrack => "[",
            Tok::RBrack => "]",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::Colon => ":",
            Tok::Eq => "=",
            Tok::Assign => ":=",
            Tok::Arrow => "->",
            Tok::Implies => "=>",
            Tok::Amp => "&",
            _ => "",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

/// Splits `src` into tokens. Newlines inside `()`, `[]` or `{}` are dropped so
/// that long steps may wrap; `#` starts a comment running to end of line.
pub fn lex(src: &str, file: Option<&str>) -> Result<Vec<Token>, SyntaxError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0usize;
    let mut line = 1usize;
    let mut line_start = 0usize;
    let mut depth = 0usize;

    let span = |start: usize, len: usize, line: usize, line_start: usize| SourceSpan {
        file: file.map(str::to_string),
        line,
        column: src[line_start..start].chars().count() + 1,
        offset: start,
        length: len,
    };

    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\r' => i += 1,
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'\n' => {
                if depth == 0 {
                    out.push(Token {
                        tok: Tok::Newline,
                        span: span(i, 1, line, line_start),
                    });
                }
                i += 1;
                line += 1;
                line_start = i;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digits parse");
                out.push(Token {
                    tok: Tok::Int(n),
                    span: span(start, i - start, line, line_start),
                });
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(src[start..i].to_string()),
                    span: span(start, i - start, line, line_start),
                });
            }
            _ => {
                let start = i;
                let two = bytes.get(i + 1).copied();
                let (tok, len) = match (c, two) {
                    (b':', Some(b'=')) => (Tok::Assign, 2),
                    (b'-', Some(b'>')) => (Tok::Arrow, 2),
                    (b'=', Some(b'>')) => (Tok::Implies, 2),
                    (b'+', _) => (Tok::Plus, 1),
                    (b'-', _) => (Tok::Minus, 1),
                    (b'*', _) => (Tok::Star, 1),
                    (b'^', _) => (Tok::Caret, 1),
                    (b'(', _) => (Tok::LParen, 1),
                    (b')', _) => (Tok::RParen, 1),
                    (b'[', _) => (Tok::LBrack, 1),
                    (b']', _) => (Tok::RBrack, 1),
                    (b'{', _) => (Tok::LBrace, 1),
                    (b'}', _) => (Tok::RBrace, 1),
                    (b',', _) => (Tok::Comma, 1),
                    (b':', _) => (Tok::Colon, 1),
                    (b'=', _) => (Tok::Eq, 1),
                    (b'&', _) => (Tok::Amp, 1),
                    _ => {
                        let ch = src[start..].chars().next().expect("in bounds");
                        return Err(SyntaxError::new(
                            SyntaxErrorKind::Lexical(ch),
                            span(start, ch.len_utf8(), line, line_start),
                        ));
                    }
                };
                match tok {
                    Tok::LParen | Tok::LBrack | Tok::LBrace => depth += 1,
                    Tok::RParen | Tok::RBrack | Tok::RBrace => depth = depth.saturating_sub(1),
                    _ => {}
                }
                out.push(Token {
                    tok,
                    span: span(start, len, line, line_start),
                });
                i += len;
            }
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        span: span(src.len(), 0, line, line_start),
    });
    Ok(out)
}
