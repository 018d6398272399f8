use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    /// Digits with an optional decimal fraction, kept as text.
    Number(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Tilde,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Pos {
    pub line: usize,
    pub column: usize,
}

impl Pos {
    pub fn syntax(self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

/// Splits `text` into tokens; `#` starts a comment running to the end of the
/// line. Positions are 1-based and offset by `first_line - 1` lines.
pub(crate) fn tokenize(text: &str, first_line: usize) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut line = first_line;
    let mut col = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column: col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while let Some(&d) = chars.peek() {
                if d == '\n' {
                    break;
                }
                chars.next();
                col += 1;
            }
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() || d == '.' {
                    s.push(d);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            if s.matches('.').count() > 1 || s == "." {
                return Err(pos.syntax(format!("malformed number `{s}`")));
            }
            out.push((Tok::Number(s), pos));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    s.push(d);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(s), pos));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '~' => Tok::Tilde,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(pos.syntax(format!("unexpected character `{other}`"))),
        };
        chars.next();
        col += 1;
        out.push((tok, pos));
    }
    out.push((Tok::End, Pos { line, column: col }));
    Ok(out)
}
