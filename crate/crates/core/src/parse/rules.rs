//! Rule files.
//!
//! ```text
//! var ?a : obj                # object metavariable
//! var ?x : ?a -> B            # morphism metavariable with its type
//! rule fuse : ?x ; g => h     # lhs => rhs, lhs read as a composition chain
//! ```
//!
//! Metavariable declarations scope over every later rule in the file.

use std::collections::BTreeSet;

use super::lexer::Tok;
use super::signature::{lines, strip_comment};
use super::{typecheck_spanned, Parser};
use crate::error::ParseError;
use crate::term::{Mor, MorType, Obj, Signature};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetaDecl {
    Obj(String),
    Mor(String, MorType),
}

impl MetaDecl {
    pub fn name(&self) -> &str {
        match self {
            MetaDecl::Obj(n) | MetaDecl::Mor(n, _) => n,
        }
    }
}

/// A rewrite rule `lhs => rhs`. Metavariables are generator names starting
/// with `?`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub name: String,
    pub vars: Vec<MetaDecl>,
    pub lhs: Mor,
    pub rhs: Mor,
    /// Shared type of both sides, possibly mentioning object metavariables.
    pub ty: MorType,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleFile {
    pub rules: Vec<Rule>,
}

impl RuleFile {
    pub fn get(&self, name: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.name == name)
    }
}

pub(crate) fn collect_obj_names(obj: &Obj, out: &mut BTreeSet<String>) {
    match obj {
        Obj::Unit => {}
        Obj::Gen(n) => {
            out.insert(n.clone());
        }
        Obj::Tensor(a, b) => {
            collect_obj_names(a, out);
            collect_obj_names(b, out);
        }
    }
}

/// Object and morphism generator names occurring in a term.
pub(crate) fn names_in(m: &Mor) -> (BTreeSet<String>, BTreeSet<String>) {
    let mut objs = BTreeSet::new();
    let mut mors = BTreeSet::new();
    for atom in m.atoms() {
        match atom {
            Mor::Gen(n) | Mor::Inv(n) => {
                mors.insert(n.clone());
            }
            Mor::Id(a) | Mor::LUnit(a) | Mor::LUnitInv(a) | Mor::RUnit(a) | Mor::RUnitInv(a) => {
                collect_obj_names(a, &mut objs)
            }
            Mor::Assoc(a, b, c) | Mor::AssocInv(a, b, c) => {
                for o in [a, b, c] {
                    collect_obj_names(o, &mut objs);
                }
            }
            Mor::Braid(a, b) | Mor::BraidInv(a, b) => {
                collect_obj_names(a, &mut objs);
                collect_obj_names(b, &mut objs);
            }
            Mor::Comp(..) | Mor::Tensor(..) => unreachable!(),
        }
    }
    (objs, mors)
}

fn is_meta(name: &str) -> bool {
    name.starts_with('?')
}

/// Extends `sig` with the metavariables as ordinary generators.
pub(crate) fn scope(sig: &Signature, vars: &[MetaDecl]) -> Result<Signature, crate::error::TypeError> {
    let mut ext = sig.clone();
    for v in vars {
        match v {
            MetaDecl::Obj(n) => ext.add_object(n.clone())?,
            MetaDecl::Mor(n, ty) => ext.add_morphism(n.clone(), ty.dom.clone(), ty.cod.clone(), false)?,
        }
    }
    Ok(ext)
}

impl Rule {
    /// Validates a rule: both sides typecheck with the same type and every
    /// metavariable on the right is bound on the left.
    pub fn new(
        name: impl Into<String>,
        vars: Vec<MetaDecl>,
        lhs: Mor,
        rhs: Mor,
        sig: &Signature,
    ) -> Result<Rule, ParseError> {
        let name = name.into();
        let ext = scope(sig, &vars).map_err(|source| ParseError::Type {
            source,
            span: Default::default(),
        })?;
        let lhs_ty = crate::term::typecheck(&lhs, &ext).map_err(|source| ParseError::Type {
            source,
            span: Default::default(),
        })?;
        check_free_vars(&name, &vars, &lhs, &rhs)?;
        let rhs_ty = crate::term::typecheck(&rhs, &ext).map_err(|source| ParseError::Type {
            source,
            span: Default::default(),
        })?;
        if lhs_ty != rhs_ty {
            return Err(ParseError::IllTypedRule {
                rule: name,
                lhs: lhs_ty,
                rhs: rhs_ty,
            });
        }
        Ok(Rule {
            name,
            vars,
            lhs,
            rhs,
            ty: lhs_ty,
        })
    }

    pub fn is_obj_var(&self, name: &str) -> bool {
        self.vars
            .iter()
            .any(|v| matches!(v, MetaDecl::Obj(n) if n == name))
    }

    pub fn mor_var(&self, name: &str) -> Option<&MorType> {
        self.vars.iter().find_map(|v| match v {
            MetaDecl::Mor(n, ty) if n == name => Some(ty),
            _ => None,
        })
    }
}

fn check_free_vars(name: &str, vars: &[MetaDecl], lhs: &Mor, rhs: &Mor) -> Result<(), ParseError> {
    let (lhs_objs, lhs_mors) = names_in(lhs);
    let mut bound: BTreeSet<String> = lhs_objs.into_iter().chain(lhs_mors.iter().cloned()).collect();
    for v in vars {
        if let MetaDecl::Mor(n, ty) = v {
            if lhs_mors.contains(n) {
                collect_obj_names(&ty.dom, &mut bound);
                collect_obj_names(&ty.cod, &mut bound);
            }
        }
    }
    let (rhs_objs, rhs_mors) = names_in(rhs);
    match rhs_objs
        .iter()
        .chain(rhs_mors.iter())
        .find(|n| is_meta(n) && !bound.contains(*n))
    {
        Some(var) => Err(ParseError::FreeMetavarInRhs {
            rule: name.to_string(),
            var: var.clone(),
        }),
        None => Ok(()),
    }
}

/// Parses a rule file against `sig`.
pub fn parse_rules(text: &str, sig: &Signature) -> Result<RuleFile, ParseError> {
    let aliases: Vec<_> = sig.aliases().map(|(a, b)| (a.to_string(), b)).collect();
    let mut vars: Vec<MetaDecl> = Vec::new();
    let mut file = RuleFile::default();
    for (no, start, raw) in lines(text) {
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let mut p = Parser::new(line, (no, start), &aliases)?;
        let (kw, kw_span) = p.expect_ident()?;
        match kw.as_str() {
            "var" => {
                let (name, span) = p.expect_ident()?;
                if !is_meta(&name) {
                    return Err(ParseError::Syntax {
                        message: format!("metavariable names start with `?`, found `{name}`"),
                        span,
                    });
                }
                if vars.iter().any(|v| v.name() == name) {
                    return Err(ParseError::Type {
                        source: crate::error::TypeError::DuplicateName(name),
                        span,
                    });
                }
                p.expect(&Tok::Colon)?;
                let ext = scope(sig, &vars).map_err(|source| ParseError::Type { source, span })?;
                if p.peek_is(&Tok::Ident("obj".into())) {
                    p.expect_ident()?;
                    p.expect_eof()?;
                    vars.push(MetaDecl::Obj(name));
                } else {
                    let (dom, dspan) = p.obj()?;
                    p.expect(&Tok::Arrow)?;
                    let (cod, cspan) = p.obj()?;
                    p.expect_eof()?;
                    ext.check_obj(&dom)
                        .map_err(|source| ParseError::Type { source, span: dspan })?;
                    ext.check_obj(&cod)
                        .map_err(|source| ParseError::Type { source, span: cspan })?;
                    vars.push(MetaDecl::Mor(name, MorType::new(dom, cod)));
                }
            }
            "rule" => {
                let (name, name_span) = p.expect_ident()?;
                if file.get(&name).is_some() {
                    return Err(ParseError::Type {
                        source: crate::error::TypeError::DuplicateName(name),
                        span: name_span,
                    });
                }
                p.expect(&Tok::Colon)?;
                let (lhs, lspans) = p.expr()?;
                p.expect(&Tok::FatArrow)?;
                let (rhs, rspans) = p.expr()?;
                p.expect_eof()?;
                let ext = scope(sig, &vars).map_err(|source| ParseError::Type {
                    source,
                    span: name_span,
                })?;
                let lhs_ty = typecheck_spanned(&lhs, &lspans, &ext)?;
                check_free_vars(&name, &vars, &lhs, &rhs)?;
                let rhs_ty = typecheck_spanned(&rhs, &rspans, &ext)?;
                if lhs_ty != rhs_ty {
                    return Err(ParseError::IllTypedRule {
                        rule: name,
                        lhs: lhs_ty,
                        rhs: rhs_ty,
                    });
                }
                file.rules.push(Rule {
                    name,
                    vars: vars.clone(),
                    lhs,
                    rhs,
                    ty: lhs_ty,
                });
            }
            other => {
                return Err(ParseError::Syntax {
                    message: format!("expected `var` or `rule`, found `{other}`"),
                    span: kw_span,
                })
            }
        }
    }
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Level;

    fn sig() -> Signature {
        let o = Obj::gen;
        Signature::new(Level::Symmetric)
            .with_objects(["A", "B", "C"])
            .with_mor("f", o("A"), o("B"))
            .with_mor("g", o("B"), o("C"))
            .with_mor("h", o("A"), o("C"))
            .with_mor("k", o("B"), o("B"))
    }

    #[test]
    fn metavariable_rule() {
        let file = parse_rules("var ?x : A -> B\nrule r : ?x ; g => h\n", &sig()).unwrap();
        assert_eq!(file.rules.len(), 1);
        let r = &file.rules[0];
        assert_eq!(r.vars.len(), 1);
        assert_eq!(r.lhs, Mor::comp(Mor::gen("?x"), Mor::gen("g")));
        assert_eq!(r.mor_var("?x").unwrap().cod, Obj::gen("B"));
    }

    #[test]
    fn ill_typed_rule() {
        let err = parse_rules("rule bad : f => g", &sig()).unwrap_err();
        assert!(matches!(err, ParseError::IllTypedRule { .. }));
    }

    #[test]
    fn concrete_rule_accepted() {
        let file = parse_rules("rule fg : f ; g => h", &sig()).unwrap();
        assert_eq!(file.get("fg").unwrap().ty, MorType::new(Obj::gen("A"), Obj::gen("C")));
    }

    #[test]
    fn free_metavariable_in_rhs() {
        let err = parse_rules(
            "var ?x : B -> B\nvar ?y : B -> B\nrule r : ?x => ?y",
            &sig(),
        )
        .unwrap_err();
        assert_eq!(
            err,
            ParseError::FreeMetavarInRhs {
                rule: "r".into(),
                var: "?y".into()
            }
        );
    }

    #[test]
    fn object_metavariables() {
        let file = parse_rules(
            "var ?a : obj\nvar ?b : obj\nrule swap2 : braid[?a,?b] ; braid[?b,?a] => id[?a * ?b]",
            &sig(),
        )
        .unwrap();
        let r = &file.rules[0];
        assert!(r.is_obj_var("?a"));
        // bound through the type of a morphism metavariable
        parse_rules(
            "var ?a : obj\nvar ?x : ?a -> ?a\nrule drop : ?x => id[?a]",
            &sig(),
        )
        .unwrap();
    }

    #[test]
    fn non_meta_variable_name() {
        assert!(matches!(
            parse_rules("var x : A -> B", &sig()),
            Err(ParseError::Syntax { .. })
        ));
    }
}
