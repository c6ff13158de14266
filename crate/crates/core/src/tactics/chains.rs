//! Rewriting that ignores how composition chains are bracketed.
//!
//! A chain is a maximal run of compositions, flattened to its non-`Comp`
//! elements. Searches visit chains outermost first and, within one depth,
//! left to right; tensor factors open new chains.

use std::collections::BTreeMap;

use crate::error::TacticError;
use crate::parse::Rule;
use crate::term::{typecheck, Mor, Obj, Signature};

/// Applies `f` to the first chain (pre-order) for which it returns a
/// replacement. The rebuilt chain replaces the whole chain root; all other
/// structure is kept.
pub(crate) fn rewrite_first_chain<E>(
    term: &Mor,
    f: &mut impl FnMut(&[&Mor]) -> Result<Option<Mor>, E>,
) -> Result<Option<Mor>, E> {
    if let Some(new) = f(&term.chain())? {
        return Ok(Some(new));
    }
    descend(term, f)
}

fn descend<E>(
    term: &Mor,
    f: &mut impl FnMut(&[&Mor]) -> Result<Option<Mor>, E>,
) -> Result<Option<Mor>, E> {
    Ok(match term {
        Mor::Comp(a, b) => {
            if let Some(a2) = descend(a, f)? {
                Some(Mor::comp(a2, (**b).clone()))
            } else {
                descend(b, f)?.map(|b2| Mor::comp((**a).clone(), b2))
            }
        }
        Mor::Tensor(a, b) => {
            if let Some(a2) = rewrite_first_chain(a, f)? {
                Some(Mor::tensor(a2, (**b).clone()))
            } else {
                rewrite_first_chain(b, f)?.map(|b2| Mor::tensor((**a).clone(), b2))
            }
        }
        _ => None,
    })
}

/// Reassociates the first chain containing `p` immediately followed by
/// `q` so that `p ; q` becomes one subterm. The chain is rebuilt
/// right-associated.
pub fn partner(term: &Mor, p: &Mor, q: &Mor, sig: &Signature) -> Result<Mor, TacticError> {
    typecheck(term, sig)?;
    typecheck(p, sig)?;
    typecheck(q, sig)?;
    let window: Vec<&Mor> = p.chain().into_iter().chain(q.chain()).collect();
    let found = rewrite_first_chain(term, &mut |chain: &[&Mor]| {
        let Some(start) = chain
            .windows(window.len())
            .position(|w| w.iter().zip(&window).all(|(a, b)| a == b))
        else {
            return Ok::<_, TacticError>(None);
        };
        let mut out: Vec<Mor> = chain[..start].iter().map(|m| (*m).clone()).collect();
        out.push(Mor::comp(p.clone(), q.clone()));
        out.extend(chain[start + window.len()..].iter().map(|m| (*m).clone()));
        Ok(Mor::right_assoc(out))
    })?;
    found.ok_or_else(|| TacticError::NotAdjacent {
        first: Box::new(p.clone()),
        second: Box::new(q.clone()),
    })
}

#[derive(Default, Clone, Debug)]
struct Bindings {
    objs: BTreeMap<String, Obj>,
    mors: BTreeMap<String, Mor>,
}

enum Mismatch {
    Shape,
    Conflict,
}

struct Matcher<'a> {
    rule: &'a Rule,
    sig: &'a Signature,
}

impl Matcher<'_> {
    fn obj(&self, pat: &Obj, obj: &Obj, b: &mut Bindings) -> Result<(), Mismatch> {
        match (pat, obj) {
            (Obj::Gen(v), _) if self.rule.is_obj_var(v) => match b.objs.get(v) {
                Some(bound) if bound == obj => Ok(()),
                Some(_) => Err(Mismatch::Conflict),
                None => {
                    b.objs.insert(v.clone(), obj.clone());
                    Ok(())
                }
            },
            (Obj::Unit, Obj::Unit) => Ok(()),
            (Obj::Gen(x), Obj::Gen(y)) if x == y => Ok(()),
            (Obj::Tensor(p1, p2), Obj::Tensor(o1, o2)) => {
                self.obj(p1, o1, b)?;
                self.obj(p2, o2, b)
            }
            _ => Err(Mismatch::Shape),
        }
    }

    fn objs(&self, pats: &[&Obj], objs: &[&Obj], b: &mut Bindings) -> Result<(), Mismatch> {
        pats.iter().zip(objs).try_for_each(|(p, o)| self.obj(p, o, b))
    }

    fn mor(&self, pat: &Mor, m: &Mor, b: &mut Bindings) -> Result<(), Mismatch> {
        use Mor::*;
        match (pat, m) {
            (Gen(v), _) if self.rule.mor_var(v).is_some() => {
                if let Some(bound) = b.mors.get(v) {
                    return if bound == m { Ok(()) } else { Err(Mismatch::Conflict) };
                }
                let declared = self.rule.mor_var(v).unwrap();
                let actual = typecheck(m, self.sig).map_err(|_| Mismatch::Shape)?;
                self.obj(&declared.dom, &actual.dom, b)?;
                self.obj(&declared.cod, &actual.cod, b)?;
                b.mors.insert(v.clone(), m.clone());
                Ok(())
            }
            (Gen(x), Gen(y)) | (Inv(x), Inv(y)) if x == y => Ok(()),
            (Id(p), Id(o))
            | (LUnit(p), LUnit(o))
            | (LUnitInv(p), LUnitInv(o))
            | (RUnit(p), RUnit(o))
            | (RUnitInv(p), RUnitInv(o)) => self.obj(p, o, b),
            (Assoc(p1, p2, p3), Assoc(o1, o2, o3)) | (AssocInv(p1, p2, p3), AssocInv(o1, o2, o3)) => {
                self.objs(&[p1, p2, p3], &[o1, o2, o3], b)
            }
            (Braid(p1, p2), Braid(o1, o2)) | (BraidInv(p1, p2), BraidInv(o1, o2)) => {
                self.objs(&[p1, p2], &[o1, o2], b)
            }
            (Comp(p1, p2), Comp(o1, o2)) | (Tensor(p1, p2), Tensor(o1, o2)) => {
                self.mor(p1, o1, b)?;
                self.mor(p2, o2, b)
            }
            _ => Err(Mismatch::Shape),
        }
    }
}

fn subst_obj(o: &Obj, b: &Bindings) -> Obj {
    match o {
        Obj::Gen(v) => b.objs.get(v).cloned().unwrap_or_else(|| o.clone()),
        Obj::Unit => Obj::Unit,
        Obj::Tensor(x, y) => Obj::tensor(subst_obj(x, b), subst_obj(y, b)),
    }
}

fn instantiate(m: &Mor, b: &Bindings) -> Mor {
    let s = |o: &Obj| subst_obj(o, b);
    match m {
        Mor::Gen(v) => b.mors.get(v).cloned().unwrap_or_else(|| m.clone()),
        Mor::Inv(_) => m.clone(),
        Mor::Id(a) => Mor::Id(s(a)),
        Mor::Comp(x, y) => Mor::comp(instantiate(x, b), instantiate(y, b)),
        Mor::Tensor(x, y) => Mor::tensor(instantiate(x, b), instantiate(y, b)),
        Mor::Assoc(x, y, z) => Mor::Assoc(s(x), s(y), s(z)),
        Mor::AssocInv(x, y, z) => Mor::AssocInv(s(x), s(y), s(z)),
        Mor::LUnit(a) => Mor::LUnit(s(a)),
        Mor::LUnitInv(a) => Mor::LUnitInv(s(a)),
        Mor::RUnit(a) => Mor::RUnit(s(a)),
        Mor::RUnitInv(a) => Mor::RUnitInv(s(a)),
        Mor::Braid(x, y) => Mor::Braid(s(x), s(y)),
        Mor::BraidInv(x, y) => Mor::BraidInv(s(x), s(y)),
    }
}

/// Rewrites the first occurrence of `rule.lhs`, read as a composition
/// chain, regardless of how the term brackets that chain. The rewritten
/// chain is rebuilt right-associated with the instantiated right-hand
/// side spliced in.
pub fn assoc_rw(term: &Mor, rule: &Rule, sig: &Signature) -> Result<Mor, TacticError> {
    typecheck(term, sig)?;
    let lhs = rule.lhs.chain();
    let matcher = Matcher { rule, sig };
    let mut conflicted = false;
    let found = rewrite_first_chain(term, &mut |chain: &[&Mor]| {
        if chain.len() < lhs.len() {
            return Ok::<_, TacticError>(None);
        }
        for start in 0..=chain.len() - lhs.len() {
            let mut b = Bindings::default();
            let outcome = lhs
                .iter()
                .zip(&chain[start..])
                .try_for_each(|(p, m)| matcher.mor(p, m, &mut b));
            match outcome {
                Ok(()) => {
                    let rhs = instantiate(&rule.rhs, &b);
                    let mut out: Vec<Mor> = chain[..start].iter().map(|m| (*m).clone()).collect();
                    out.extend(rhs.chain().into_iter().cloned());
                    out.extend(chain[start + lhs.len()..].iter().map(|m| (*m).clone()));
                    return Ok(Mor::right_assoc(out));
                }
                Err(Mismatch::Conflict) => conflicted = true,
                Err(Mismatch::Shape) => {}
            }
        }
        Ok(None)
    })?;
    match found {
        Some(m) => Ok(m),
        None if conflicted => Err(TacticError::InconsistentBinding(rule.name.clone())),
        None => Err(TacticError::NoMatch(rule.name.clone())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_expr, parse_rules};
    use crate::term::Level;

    fn sig() -> Signature {
        let o = Obj::gen;
        Signature::new(Level::Symmetric)
            .with_objects(["A", "B", "C", "D", "X"])
            .with_mor("a", o("A"), o("A"))
            .with_mor("b", o("A"), o("A"))
            .with_mor("c", o("A"), o("A"))
            .with_mor("d", o("A"), o("A"))
            .with_mor("e", o("A"), o("B"))
            .with_mor("f", o("B"), o("C"))
            .with_mor("g", o("C"), o("D"))
            .with_mor("h", o("B"), o("D"))
            .with_mor("i", o("X"), o("X"))
    }

    fn p(text: &str) -> Mor {
        parse_expr(text, &sig()).unwrap()
    }

    #[test]
    fn partner_regroups() {
        let s = sig();
        let out = partner(&p("a ; (b ; (c ; d))"), &p("b"), &p("c"), &s).unwrap();
        assert_eq!(out, p("a ; ((b ; c) ; d)"));
        let t = p("(a ; b) ; c");
        assert_eq!(partner(&t, &p("a"), &p("b"), &s).unwrap(), t);
        assert_eq!(
            partner(&p("a ; b"), &p("b"), &p("a"), &s),
            Err(TacticError::NotAdjacent {
                first: Box::new(p("b")),
                second: Box::new(p("a"))
            })
        );
    }

    #[test]
    fn partner_under_tensor() {
        let s = sig();
        let out = partner(&p("i * (a ; (b ; c))"), &p("a"), &p("b"), &s).unwrap();
        assert_eq!(out, p("i * ((a ; b) ; c)"));
    }

    #[test]
    fn assoc_rw_examples() {
        let s = sig();
        let rules = parse_rules("rule fg : f ; g => h", &s).unwrap();
        let r = rules.get("fg").unwrap();
        assert_eq!(assoc_rw(&p("i * (e ; f ; g)"), r, &s).unwrap(), p("i * (e ; h)"));
        assert_eq!(assoc_rw(&p("(e ; f) ; g"), r, &s).unwrap(), p("e ; h"));
        assert_eq!(assoc_rw(&p("e ; (f ; g)"), r, &s).unwrap(), p("e ; h"));
        let fg_tensor = p("(e ; f) * (f ; g)");
        assert_eq!(assoc_rw(&fg_tensor, r, &s).unwrap(), p("(e ; f) * h"));
    }

    #[test]
    fn no_match_across_tensor() {
        let s = Signature::new(Level::Symmetric)
            .with_objects(["A"])
            .with_mor("f", Obj::gen("A"), Obj::gen("A"))
            .with_mor("g", Obj::gen("A"), Obj::gen("A"))
            .with_mor("h", Obj::gen("A"), Obj::gen("A"));
        let r = parse_rules("rule fg : f ; g => h", &s).unwrap();
        let t = parse_expr("f * g", &s).unwrap();
        assert_eq!(
            assoc_rw(&t, &r.rules[0], &s),
            Err(TacticError::NoMatch("fg".into()))
        );
    }

    #[test]
    fn metavariables_bind_chain_elements() {
        let s = sig();
        let rules = parse_rules(
            "var ?x : A -> A\nrule dup : ?x ; ?x => ?x\nvar ?o : obj\nrule unit : id[?o] ; id[?o] => id[?o]",
            &s,
        )
        .unwrap();
        let dup = rules.get("dup").unwrap();
        assert_eq!(assoc_rw(&p("a ; (b ; (b ; c))"), dup, &s).unwrap(), p("a ; (b ; c)"));
        assert_eq!(
            assoc_rw(&p("a ; b ; c"), dup, &s),
            Err(TacticError::InconsistentBinding("dup".into()))
        );
        let unit = rules.get("unit").unwrap();
        assert_eq!(assoc_rw(&p("e ; id[B] ; id[B]"), unit, &s).unwrap(), p("e ; id[B]"));
    }

    #[test]
    fn metavariable_types_are_respected() {
        let s = sig();
        let rules = parse_rules("var ?x : A -> B\nrule r : ?x ; f => ?x ; f", &s).unwrap();
        let r = rules.get("r").unwrap();
        // `a : A -> A` does not fit `?x : A -> B`; `e` does
        let out = assoc_rw(&p("a ; (e ; f)"), r, &s).unwrap();
        assert_eq!(out, p("a ; (e ; f)"));
    }
}
