use crate::error::{Error, Result, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(u64),
    Plus,
    Minus,
    Star,
    Slash,
    Eq,
    Comma,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Arrow,
    Newline,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '^' || c == '\''
}

pub fn lex(source: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (l, line) in source.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        let at = |col: usize, len: usize| Span::new(l + 1, col + 1, len);
        while i < chars.len() {
            let c = chars[i];
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            let tok = if ident_start(c) {
                while i < chars.len() && ident_continue(chars[i]) {
                    i += 1;
                }
                Tok::Ident(chars[start..i].iter().collect())
            } else if c.is_ascii_digit() {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let n = text.parse().map_err(|_| Error::Syntax {
                    span: at(start, i - start),
                    message: format!("integer `{text}` is too large"),
                })?;
                Tok::Int(n)
            } else {
                i += 1;
                match c {
                    '+' => Tok::Plus,
                    '-' if chars.get(i) == Some(&'>') => {
                        i += 1;
                        Tok::Arrow
                    }
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '=' => Tok::Eq,
                    ',' => Tok::Comma,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    _ => {
                        return Err(Error::Syntax {
                            span: at(start, 1),
                            message: format!("unexpected character `{c}`"),
                        })
                    }
                }
            };
            out.push(Token { tok, span: at(start, i - start) });
        }
        out.push(Token {
            tok: Tok::Newline,
            span: at(chars.len(), 0),
        });
    }
    let lines = source.lines().count();
    out.push(Token {
        tok: Tok::Eof,
        span: Span::new(lines + 1, 1, 0),
    });
    Ok(out)
}
