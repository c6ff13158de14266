use crate::error::{ParseError, SourceSpan};
use crate::term::Builtin;

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Ident(String),
    Str(String),
    Semi,
    Star,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Colon,
    Arrow,
    FatArrow,
    Eq,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Str(s) => format!("\"{s}\""),
            Tok::Semi => "`;`".into(),
            Tok::Star => "`*`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::FatArrow => "`=>`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

pub fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '?'
}

pub fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Splits `src` into tokens. `origin` is the (line, byte offset) of the
/// first character, so spans point into the enclosing file. Alias tokens
/// are rewritten to the builtin they stand for.
pub fn tokenize(
    src: &str,
    origin: (usize, usize),
    aliases: &[(String, Builtin)],
) -> Result<Vec<Token>, ParseError> {
    let (first_line, base) = origin;
    let mut symbolic: Vec<&(String, Builtin)> = aliases
        .iter()
        .filter(|(a, _)| !a.chars().all(is_ident_char))
        .collect();
    symbolic.sort_by_key(|(a, _)| std::cmp::Reverse(a.len()));

    let mut out = Vec::new();
    let mut line = first_line;
    let mut line_start = 0usize;
    let mut i = 0usize;
    let span = |start: usize, end: usize, line: usize, line_start: usize| SourceSpan {
        line,
        column: src[line_start..start].chars().count() + 1,
        start: base + start,
        end: base + end,
    };

    while i < src.len() {
        let rest = &src[i..];
        let c = rest.chars().next().unwrap();
        if c == '\n' {
            i += 1;
            line += 1;
            line_start = i;
            continue;
        }
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        if c == '#' {
            i += rest.find('\n').unwrap_or(rest.len());
            continue;
        }
        if let Some((a, b)) = symbolic.iter().find(|(a, _)| rest.starts_with(a.as_str())) {
            out.push(Token {
                tok: builtin_tok(*b),
                span: span(i, i + a.len(), line, line_start),
            });
            i += a.len();
            continue;
        }
        if is_ident_start(c) {
            let len = c.len_utf8()
                + rest[c.len_utf8()..]
                    .char_indices()
                    .find(|&(_, ch)| !is_ident_char(ch))
                    .map(|(k, _)| k)
                    .unwrap_or(rest.len() - c.len_utf8());
            let word = &rest[..len];
            let tok = match aliases.iter().find(|(a, _)| a == word) {
                Some((_, b)) => builtin_tok(*b),
                None => Tok::Ident(word.to_string()),
            };
            out.push(Token {
                tok,
                span: span(i, i + len, line, line_start),
            });
            i += len;
            continue;
        }
        if c == '"' {
            let Some(close) = rest[1..].find('"') else {
                return Err(ParseError::Syntax {
                    message: "unterminated string".into(),
                    span: span(i, src.len(), line, line_start),
                });
            };
            out.push(Token {
                tok: Tok::Str(rest[1..1 + close].to_string()),
                span: span(i, i + close + 2, line, line_start),
            });
            i += close + 2;
            continue;
        }
        let (tok, len) = if rest.starts_with("->") {
            (Tok::Arrow, 2)
        } else if rest.starts_with("=>") {
            (Tok::FatArrow, 2)
        } else {
            let tok = match c {
                ';' | '∘' => Tok::Semi,
                '*' | '⊗' => Tok::Star,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBrack,
                ']' => Tok::RBrack,
                ',' => Tok::Comma,
                ':' => Tok::Colon,
                '→' => Tok::Arrow,
                '⇒' => Tok::FatArrow,
                '=' => Tok::Eq,
                other => {
                    return Err(ParseError::Syntax {
                        message: format!("unexpected character `{other}`"),
                        span: span(i, i + other.len_utf8(), line, line_start),
                    })
                }
            };
            (tok, c.len_utf8())
        };
        out.push(Token {
            tok,
            span: span(i, i + len, line, line_start),
        });
        i += len;
    }
    out.push(Token {
        tok: Tok::Eof,
        span: span(src.len(), src.len(), line, line_start),
    });
    Ok(out)
}

fn builtin_tok(b: Builtin) -> Tok {
    match b {
        Builtin::Compose => Tok::Semi,
        Builtin::Tensor => Tok::Star,
        Builtin::Id => Tok::Ident("id".into()),
    }
}
