//! Text formats: signature files, morphism expressions and rule files.
//!
//! Expression grammar (`;` may also be written `∘`, `*` may be `⊗`):
//!
//! ```text
//! expr   ::= tensor (";" tensor)*
//! tensor ::= atom ("*" atom)*
//! atom   ::= "(" expr ")" | NAME | "inv" "(" NAME ")"
//!          | "id" "[" obj "]"
//!          | ("alpha" | "alpha_inv") "[" obj "," obj "," obj "]"
//!          | ("lunit" | "lunit_inv" | "runit" | "runit_inv") "[" obj "]"
//!          | ("braid" | "braid_inv") "[" obj "," obj "]"
//! obj    ::= oatom ("*" oatom)*
//! oatom  ::= "I" | NAME | "(" obj ")"
//! ```
//!
//! Both operators associate to the left; parentheses are kept exactly.

mod lexer;
mod rules;
mod signature;

pub use rules::{parse_rules, MetaDecl, Rule, RuleFile};
pub use signature::parse_signature;

use crate::error::{ParseError, SourceSpan};
use crate::term::{self, Builtin, Mor, MorType, Obj, Signature};
use lexer::{Tok, Token};

/// Source spans mirroring the shape of a parsed [`Mor`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanTree {
    pub span: SourceSpan,
    pub children: Vec<SpanTree>,
}

impl SpanTree {
    fn leaf(span: SourceSpan) -> SpanTree {
        SpanTree {
            span,
            children: Vec::new(),
        }
    }
}

pub(crate) struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

fn alias_list(sig: &Signature) -> Vec<(String, Builtin)> {
    sig.aliases().map(|(a, b)| (a.to_string(), b)).collect()
}

impl Parser {
    pub(crate) fn new(
        src: &str,
        origin: (usize, usize),
        aliases: &[(String, Builtin)],
    ) -> Result<Parser, ParseError> {
        Ok(Parser {
            toks: lexer::tokenize(src, origin, aliases)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].span
    }

    fn prev_span(&self) -> SourceSpan {
        self.toks[self.pos.saturating_sub(1)].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            message: message.into(),
            span: self.span(),
        })
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, ParseError> {
        self.error(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, tok: &Tok) -> Result<SourceSpan, ParseError> {
        if self.peek() == tok {
            Ok(self.bump().span)
        } else {
            self.unexpected(&tok.describe())
        }
    }

    pub(crate) fn expect_ident(&mut self) -> Result<(String, SourceSpan), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let span = self.bump().span;
                Ok((s, span))
            }
            _ => self.unexpected("a name"),
        }
    }

    pub(crate) fn expect_str(&mut self) -> Result<(String, SourceSpan), ParseError> {
        match self.peek().clone() {
            Tok::Str(s) => {
                let span = self.bump().span;
                Ok((s, span))
            }
            _ => self.unexpected("a quoted string"),
        }
    }

    pub(crate) fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    pub(crate) fn expect_eof(&mut self) -> Result<(), ParseError> {
        if self.at_eof() {
            Ok(())
        } else {
            self.unexpected("end of input")
        }
    }

    pub(crate) fn peek_is(&self, tok: &Tok) -> bool {
        self.peek() == tok
    }

    pub(crate) fn obj(&mut self) -> Result<(Obj, SourceSpan), ParseError> {
        let (mut acc, mut span) = self.obj_atom()?;
        while self.eat(&Tok::Star) {
            let (rhs, s) = self.obj_atom()?;
            acc = Obj::tensor(acc, rhs);
            span = span.join(s);
        }
        Ok((acc, span))
    }

    fn obj_atom(&mut self) -> Result<(Obj, SourceSpan), ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                let open = self.bump().span;
                let (o, _) = self.obj()?;
                let close = self.expect(&Tok::RParen)?;
                Ok((o, open.join(close)))
            }
            Tok::Ident(name) => {
                let span = self.bump().span;
                if name == "I" {
                    Ok((Obj::Unit, span))
                } else {
                    Ok((Obj::Gen(name), span))
                }
            }
            _ => self.unexpected("an object"),
        }
    }

    pub(crate) fn expr(&mut self) -> Result<(Mor, SpanTree), ParseError> {
        let (mut acc, mut tree) = self.tensor()?;
        while self.eat(&Tok::Semi) {
            let (rhs, rtree) = self.tensor()?;
            acc = Mor::comp(acc, rhs);
            tree = SpanTree {
                span: tree.span.join(rtree.span),
                children: vec![tree, rtree],
            };
        }
        Ok((acc, tree))
    }

    fn tensor(&mut self) -> Result<(Mor, SpanTree), ParseError> {
        let (mut acc, mut tree) = self.atom()?;
        while self.eat(&Tok::Star) {
            let (rhs, rtree) = self.atom()?;
            acc = Mor::tensor(acc, rhs);
            tree = SpanTree {
                span: tree.span.join(rtree.span),
                children: vec![tree, rtree],
            };
        }
        Ok((acc, tree))
    }

    fn obj_args(&mut self, n: usize) -> Result<Vec<Obj>, ParseError> {
        self.expect(&Tok::LBrack)?;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            if i > 0 {
                self.expect(&Tok::Comma)?;
            }
            out.push(self.obj()?.0);
        }
        self.expect(&Tok::RBrack)?;
        Ok(out)
    }

    fn atom(&mut self) -> Result<(Mor, SpanTree), ParseError> {
        let start = self.span();
        let name = match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let (m, mut tree) = self.expr()?;
                let close = self.expect(&Tok::RParen)?;
                tree.span = start.join(close);
                return Ok((m, tree));
            }
            Tok::Ident(name) => name,
            _ => return self.unexpected("a morphism"),
        };
        self.bump();
        let m = match name.as_str() {
            "id" => Mor::Id(self.obj_args(1)?.remove(0)),
            "alpha" | "alpha_inv" => {
                let mut a = self.obj_args(3)?.into_iter();
                let (x, y, z) = (a.next().unwrap(), a.next().unwrap(), a.next().unwrap());
                if name == "alpha" {
                    Mor::Assoc(x, y, z)
                } else {
                    Mor::AssocInv(x, y, z)
                }
            }
            "lunit" => Mor::LUnit(self.obj_args(1)?.remove(0)),
            "lunit_inv" => Mor::LUnitInv(self.obj_args(1)?.remove(0)),
            "runit" => Mor::RUnit(self.obj_args(1)?.remove(0)),
            "runit_inv" => Mor::RUnitInv(self.obj_args(1)?.remove(0)),
            "braid" | "braid_inv" => {
                let mut a = self.obj_args(2)?.into_iter();
                let (x, y) = (a.next().unwrap(), a.next().unwrap());
                if name == "braid" {
                    Mor::Braid(x, y)
                } else {
                    Mor::BraidInv(x, y)
                }
            }
            "inv" => {
                self.expect(&Tok::LParen)?;
                let (g, _) = self.expect_ident()?;
                self.expect(&Tok::RParen)?;
                Mor::Inv(g)
            }
            "I" => {
                return Err(ParseError::Syntax {
                    message: "`I` is an object, not a morphism".into(),
                    span: start,
                })
            }
            _ => Mor::Gen(name),
        };
        Ok((m, SpanTree::leaf(start.join(self.prev_span()))))
    }
}

/// Typechecks a parsed term, attributing errors to the smallest offending
/// subexpression.
pub fn typecheck_spanned(
    term: &Mor,
    spans: &SpanTree,
    sig: &Signature,
) -> Result<MorType, ParseError> {
    let at = |source, span| ParseError::Type { source, span };
    match term {
        Mor::Comp(f, g) | Mor::Tensor(f, g) => {
            let tf = typecheck_spanned(f, &spans.children[0], sig)?;
            let tg = typecheck_spanned(g, &spans.children[1], sig)?;
            let combined = if matches!(term, Mor::Comp(..)) {
                term::compose_types(tf, tg)
            } else {
                term::tensor_types(tf, tg, sig)
            };
            combined.map_err(|e| at(e, spans.span))
        }
        atom => term::atom_type(atom, sig).map_err(|e| at(e, spans.span)),
    }
}

/// Parses without typechecking.
pub fn parse_expr_untyped(text: &str, sig: &Signature) -> Result<(Mor, SpanTree), ParseError> {
    let mut p = Parser::new(text, (1, 0), &alias_list(sig))?;
    let out = p.expr()?;
    p.expect_eof()?;
    Ok(out)
}

/// Parses a morphism expression and typechecks it against `sig`.
pub fn parse_expr(text: &str, sig: &Signature) -> Result<Mor, ParseError> {
    let (m, spans) = parse_expr_untyped(text, sig)?;
    typecheck_spanned(&m, &spans, sig)?;
    Ok(m)
}

/// Parses and typechecks, returning the type as well.
pub fn parse_typed(text: &str, sig: &Signature) -> Result<(Mor, MorType), ParseError> {
    let (m, spans) = parse_expr_untyped(text, sig)?;
    let ty = typecheck_spanned(&m, &spans, sig)?;
    Ok((m, ty))
}

/// Parses a whitespace-separated sequence of expressions, e.g. `f (g ; h)`;
/// composites must be parenthesized to be read as one expression.
pub fn parse_exprs(text: &str, sig: &Signature) -> Result<Vec<Mor>, ParseError> {
    let mut p = Parser::new(text, (1, 0), &alias_list(sig))?;
    let mut out = Vec::new();
    while !p.at_eof() {
        let (m, spans) = p.atom()?;
        typecheck_spanned(&m, &spans, sig)?;
        out.push(m);
    }
    Ok(out)
}

/// Parses an object expression and checks its names against `sig`.
pub fn parse_obj(text: &str, sig: &Signature) -> Result<Obj, ParseError> {
    let mut p = Parser::new(text, (1, 0), &alias_list(sig))?;
    let (o, span) = p.obj()?;
    p.expect_eof()?;
    sig.check_obj(&o)
        .map_err(|source| ParseError::Type { source, span })?;
    Ok(o)
}

/// Canonical text of a term; `parse_expr(&print_expr(t))` gives back `t`.
pub fn print_expr(term: &Mor) -> String {
    term.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::TypeError;
    use crate::term::Level;

    fn sig() -> Signature {
        let a = || Obj::gen("A");
        let b = || Obj::gen("B");
        Signature::new(Level::Symmetric)
            .with_objects(["A", "B", "C"])
            .with_mor("f", a(), a())
            .with_mor("g", a(), a())
            .with_mor("h", a(), a())
            .with_mor("k", a(), b())
    }

    #[test]
    fn left_association_by_default() {
        let s = sig();
        let m = parse_expr("f ; g ; h", &s).unwrap();
        assert_eq!(
            m,
            Mor::comp(Mor::comp(Mor::gen("f"), Mor::gen("g")), Mor::gen("h"))
        );
        let r = parse_expr("f ; (g ; h)", &s).unwrap();
        assert_eq!(
            r,
            Mor::comp(Mor::gen("f"), Mor::comp(Mor::gen("g"), Mor::gen("h")))
        );
        assert_ne!(m, r);
    }

    #[test]
    fn tensor_binds_tighter() {
        let s = sig();
        let m = parse_expr("f * g ; h * f", &s).unwrap();
        assert_eq!(
            m,
            Mor::comp(
                Mor::tensor(Mor::gen("f"), Mor::gen("g")),
                Mor::tensor(Mor::gen("h"), Mor::gen("f"))
            )
        );
    }

    #[test]
    fn structural_atoms() {
        let s = sig();
        let m = parse_expr("alpha[A * B, I, (C)] ; alpha_inv[A * B, I, C]", &s).unwrap();
        let ab = Obj::tensor(Obj::gen("A"), Obj::gen("B"));
        assert_eq!(
            m,
            Mor::comp(
                Mor::Assoc(ab.clone(), Obj::Unit, Obj::gen("C")),
                Mor::AssocInv(ab, Obj::Unit, Obj::gen("C"))
            )
        );
    }

    #[test]
    fn undeclared_generator_has_span() {
        let err = parse_expr("f * q", &sig()).unwrap_err();
        assert_eq!(err.type_error(), Some(&TypeError::UndeclaredName("q".into())));
        assert_eq!(err.span().unwrap().column, 5);
    }

    #[test]
    fn mismatch_reports_composition_span() {
        let err = parse_expr("f * (k ; k)", &sig()).unwrap_err();
        assert!(matches!(
            err.type_error(),
            Some(TypeError::CompositionMismatch { .. })
        ));
        let span = err.span().unwrap();
        assert_eq!((span.start, span.end), (4, 11));
    }

    #[test]
    fn syntax_errors() {
        let s = sig();
        assert!(matches!(parse_expr("f ;", &s), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expr("(f", &s), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expr("f g", &s), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expr("id[A", &s), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn print_round_trip_examples() {
        let s = sig();
        for text in [
            "f ; g ; h",
            "f ; (g ; h)",
            "(f ; g) * h",
            "(f * id[A]) ; ((id[B] * h) ; (g * id[B]))",
            "f * (g * h)",
            "alpha[A * (B * C),I,A] ; alpha_inv[A * (B * C),I,A]",
        ] {
            let m = match parse_expr(text, &s) {
                Ok(m) => m,
                Err(_) => parse_expr_untyped(text, &s).unwrap().0,
            };
            assert_eq!(print_expr(&m), text);
            assert_eq!(parse_expr_untyped(&print_expr(&m), &s).unwrap().0, m);
        }
    }

    #[test]
    fn objects() {
        let s = sig();
        assert_eq!(
            parse_obj("A * I * B", &s).unwrap(),
            Obj::tensor(Obj::tensor(Obj::gen("A"), Obj::Unit), Obj::gen("B"))
        );
        assert!(parse_obj("A * Q", &s).is_err());
    }
}
