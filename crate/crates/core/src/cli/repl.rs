use std::fs;

use crate::coherence::normal_form;
use crate::error::Error;
use crate::parse::{parse_expr, parse_exprs, parse_rules};
use crate::render::{emit_svg, emit_tikz, layout, RenderConfig};
use crate::tactics::{assoc_rw, cancel_isos, cat_simpl, foliate, partner, right_assoc_all, weak_foliate};
use crate::term::{typecheck, Mor, Signature};

pub const HELP: &str = "\
commands:
  load <expr>               set the current term
  show                      print the current term and its type
  apply <tactic>            foliate | weak_foliate | cancel_isos | cat_simpl | right_assoc
  partner <p> <q>           group p ; q (parenthesize composite arguments)
  rw <rulefile> <rule>      rewrite with a rule, modulo associativity
  normalize                 print the coherence normal form
  render <path>             write a diagram (.tex for TikZ, otherwise SVG)
  undo                      restore the previous term
  quit                      leave";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reply {
    pub text: String,
    pub is_error: bool,
    pub quit: bool,
}

impl Reply {
    fn ok(text: impl Into<String>) -> Reply {
        Reply {
            text: text.into(),
            is_error: false,
            quit: false,
        }
    }
}

/// Interactive proof state: a current term plus an undo stack.
#[derive(Clone, Debug)]
pub struct ReplState {
    pub sig: Signature,
    pub current: Option<Mor>,
    pub undo: Vec<Mor>,
    pub transcript: Vec<String>,
    pub render: RenderConfig,
}

impl ReplState {
    pub fn new(sig: Signature) -> ReplState {
        ReplState {
            sig,
            current: None,
            undo: Vec::new(),
            transcript: Vec::new(),
            render: RenderConfig::default(),
        }
    }

    fn term(&self) -> Result<&Mor, Error> {
        self.current
            .as_ref()
            .ok_or_else(|| Error::Usage("no term loaded, use `load <expr>`".into()))
    }

    fn replace(&mut self, next: Mor) -> String {
        if let Some(prev) = self.current.replace(next) {
            self.undo.push(prev);
        }
        self.current.as_ref().unwrap().to_string()
    }

    fn describe(&self) -> Result<String, Error> {
        let t = self.term()?;
        Ok(format!("{t}\n  : {}", typecheck(t, &self.sig)?))
    }

    fn run(&mut self, line: &str) -> Result<Reply, Error> {
        let (cmd, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let sig = &self.sig;
        let text = match cmd {
            "load" => {
                let t = parse_expr(rest, sig)?;
                self.replace(t)
            }
            "show" => self.describe()?,
            "apply" => {
                let t = self.term()?;
                let next = match rest {
                    "foliate" => foliate(t, sig)?,
                    "weak_foliate" => weak_foliate(t, sig)?,
                    "cancel_isos" => cancel_isos(t, sig)?,
                    "cat_simpl" => cat_simpl(t, sig)?,
                    "right_assoc" => right_assoc_all(t),
                    other => return Err(Error::Usage(format!("unknown tactic `{other}`"))),
                };
                self.replace(next)
            }
            "partner" => {
                let args = parse_exprs(rest, sig)?;
                let [p, q] = args.as_slice() else {
                    return Err(Error::Usage("partner takes two expressions".into()));
                };
                let next = partner(self.term()?, p, q, sig)?;
                self.replace(next)
            }
            "rw" => {
                let (file, name) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| Error::Usage("usage: rw <rulefile> <rule>".into()))?;
                let text = fs::read_to_string(file).map_err(|source| Error::Io {
                    path: file.to_string(),
                    source,
                })?;
                let rules = parse_rules(&text, sig)?;
                let rule = rules
                    .get(name.trim())
                    .ok_or_else(|| Error::Usage(format!("no rule `{}` in {file}", name.trim())))?;
                let next = assoc_rw(self.term()?, rule, sig)?;
                self.replace(next)
            }
            "normalize" => normal_form(self.term()?, sig)?.dump(),
            "render" => {
                if rest.is_empty() {
                    return Err(Error::Usage("usage: render <path>".into()));
                }
                let node = layout(self.term()?, sig, &self.render)?;
                let out = if rest.ends_with(".tex") {
                    emit_tikz(&node, &self.render)
                } else {
                    emit_svg(&node, &self.render)
                };
                fs::write(rest, out).map_err(|source| Error::Io {
                    path: rest.to_string(),
                    source,
                })?;
                format!("wrote {rest}")
            }
            "undo" => match self.undo.pop() {
                Some(prev) => {
                    self.current = Some(prev);
                    self.current.as_ref().unwrap().to_string()
                }
                None => return Err(Error::Usage("nothing to undo".into())),
            },
            "help" => HELP.to_string(),
            "quit" | "exit" => {
                return Ok(Reply {
                    text: String::new(),
                    is_error: false,
                    quit: true,
                })
            }
            other => return Err(Error::Usage(format!("unknown command `{other}`, try `help`"))),
        };
        Ok(Reply::ok(text))
    }

    /// Executes one command line. Failed commands leave the state unchanged.
    pub fn step(&mut self, line: &str) -> Reply {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            return Reply::ok("");
        }
        let reply = self.run(line).unwrap_or_else(|e| Reply {
            text: format!("error: {e}"),
            is_error: true,
            quit: false,
        });
        self.transcript.push(format!("> {line}"));
        if !reply.text.is_empty() {
            self.transcript.push(reply.text.clone());
        }
        reply
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{Level, Obj};

    fn state() -> ReplState {
        let o = Obj::gen;
        ReplState::new(
            Signature::new(Level::Symmetric)
                .with_objects(["A", "B", "B'"])
                .with_mor("g", o("A"), o("B"))
                .with_iso("f", o("B"), o("B'")),
        )
    }

    #[test]
    fn cancel_then_show() {
        let mut s = state();
        s.step("load g ; f ; inv(f)");
        assert_eq!(s.step("apply cancel_isos").text, "g");
        assert_eq!(s.step("show").text, "g\n  : A -> B");
    }

    #[test]
    fn undo_restores() {
        let mut s = state();
        s.step("load (g ; f) ; inv(f)");
        assert_eq!(s.step("apply right_assoc").text, "g ; (f ; inv(f))");
        assert_eq!(s.step("undo").text, "g ; f ; inv(f)");
        assert!(s.step("undo").is_error);
    }

    #[test]
    fn errors_keep_state() {
        let mut s = state();
        s.step("load g ; f");
        let before = s.current.clone();
        assert!(s.step("partner f g").is_error);
        assert!(s.step("apply bogus").is_error);
        assert!(s.step("load f ; g").is_error);
        assert_eq!(s.current, before);
        assert_eq!(s.step("partner g f").text, "g ; f");
        assert!(s.step("quit").quit);
    }
}
