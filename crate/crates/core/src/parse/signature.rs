//! Signature files.
//!
//! ```text
//! category symmetric          # plain | monoidal | braided | symmetric
//! object A B                  # one or more object generators
//! mor f : A -> B * B          # morphism generator
//! iso u : A -> A              # invertible generator, `inv(u)` is legal
//! alias "x" = compose         # compose | tensor | id
//! backend matrix              # following lines belong to the backend
//!   dim A = 2
//! ```
//!
//! Lines of a `backend` block are stored verbatim and interpreted by the
//! semantics module. A block ends at the next top-level keyword.

use super::lexer::Tok;
use super::Parser;
use crate::error::{ParseError, SourceSpan};
use crate::term::{BackendBlock, Builtin, Level, Signature};

const KEYWORDS: &[&str] = &["category", "object", "mor", "iso", "alias", "backend"];

/// Removes a `#` comment that is not inside a string literal.
pub(crate) fn strip_comment(line: &str) -> &str {
    let mut in_str = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_str = !in_str,
            '#' if !in_str => return &line[..i],
            _ => {}
        }
    }
    line
}

/// Lines as `(1-based number, byte offset of line start, text)`.
pub(crate) fn lines(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    let mut offset = 0;
    text.split('\n').enumerate().map(move |(i, l)| {
        let start = offset;
        offset += l.len() + 1;
        (i + 1, start, l)
    })
}

fn first_word(line: &str) -> &str {
    line.split_whitespace().next().unwrap_or("")
}

fn leading_ws(line: &str) -> usize {
    line.len() - line.trim_start().len()
}

/// Parses a signature file.
pub fn parse_signature(text: &str) -> Result<Signature, ParseError> {
    let mut level = None;
    for (no, start, raw) in lines(text) {
        let line = strip_comment(raw);
        if first_word(line) != "category" {
            continue;
        }
        let mut p = Parser::new(line, (no, start), &[])?;
        p.expect_ident()?;
        let (name, span) = p.expect_ident()?;
        p.expect_eof()?;
        if level.is_some() {
            return Err(ParseError::Syntax {
                message: "category level declared twice".into(),
                span,
            });
        }
        level = Some(
            name.parse::<Level>()
                .map_err(|_| ParseError::UnknownLevel { level: name, span })?,
        );
    }

    let mut sig = Signature::new(level.unwrap_or(Level::Symmetric));
    let mut backend: Option<BackendBlock> = None;

    for (no, start, raw) in lines(text) {
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let word = first_word(line);
        if !KEYWORDS.contains(&word) {
            match backend.as_mut() {
                Some(block) => {
                    block.lines.push((no, line.trim().to_string()));
                    continue;
                }
                None => {
                    let col = leading_ws(line);
                    return Err(ParseError::Syntax {
                        message: format!("unknown declaration `{word}`"),
                        span: SourceSpan {
                            line: no,
                            column: col + 1,
                            start: start + col,
                            end: start + col + word.len(),
                        },
                    });
                }
            }
        }
        if let Some(block) = backend.take() {
            sig.add_backend(block);
        }
        let mut p = Parser::new(line, (no, start), &[])?;
        p.expect_ident()?;
        let type_err = |source, span| ParseError::Type { source, span };
        match word {
            "category" => {}
            "object" => {
                let (name, span) = p.expect_ident()?;
                sig.add_object(name).map_err(|e| type_err(e, span))?;
                while !p.at_eof() {
                    let (name, span) = p.expect_ident()?;
                    sig.add_object(name).map_err(|e| type_err(e, span))?;
                }
            }
            "mor" | "iso" => {
                let (name, name_span) = p.expect_ident()?;
                p.expect(&Tok::Colon)?;
                let (dom, dspan) = p.obj()?;
                p.expect(&Tok::Arrow)?;
                let (cod, cspan) = p.obj()?;
                p.expect_eof()?;
                sig.check_obj(&dom).map_err(|e| type_err(e, dspan))?;
                sig.check_obj(&cod).map_err(|e| type_err(e, cspan))?;
                sig.add_morphism(name, dom, cod, word == "iso")
                    .map_err(|e| type_err(e, name_span))?;
            }
            "alias" => {
                let (token, span) = p.expect_str()?;
                p.expect(&Tok::Eq)?;
                let (target, tspan) = p.expect_ident()?;
                p.expect_eof()?;
                let builtin = match target.as_str() {
                    "compose" => Builtin::Compose,
                    "tensor" => Builtin::Tensor,
                    "id" => Builtin::Id,
                    other => {
                        return Err(ParseError::Syntax {
                            message: format!(
                                "alias target must be compose, tensor or id, found `{other}`"
                            ),
                            span: tspan,
                        })
                    }
                };
                if token.is_empty() || token.chars().any(char::is_whitespace) {
                    return Err(ParseError::Syntax {
                        message: "alias token must be non-empty without spaces".into(),
                        span,
                    });
                }
                sig.add_alias(token, builtin).map_err(|e| type_err(e, span))?;
            }
            "backend" => {
                let (kind, _) = p.expect_ident()?;
                p.expect_eof()?;
                backend = Some(BackendBlock {
                    kind,
                    lines: Vec::new(),
                });
            }
            _ => unreachable!(),
        }
    }
    if let Some(block) = backend.take() {
        sig.add_backend(block);
    }
    Ok(sig)
}
