use std::fmt;

use crate::error::{TacticError, TypeError};
use crate::term::{iso_inverse, typecheck, Mor, Signature};

use super::foliate::weak_foliate;

fn cancels(first: &Mor, second: &Mor, sig: &Signature) -> bool {
    first.is_atom()
        && second.is_atom()
        && iso_inverse(first, sig).is_ok_and(|inv| inv.contains(second))
}

/// Rebuilds `shape`'s composition tree with `elems` as its chain elements.
fn refill(shape: &Mor, elems: &mut impl Iterator<Item = Mor>) -> Mor {
    match shape {
        Mor::Comp(a, b) => {
            let a = refill(a, elems);
            let b = refill(b, elems);
            Mor::comp(a, b)
        }
        _ => elems.next().expect("chain length preserved"),
    }
}

fn cancel_pass(term: &Mor, sig: &Signature) -> Result<(Mor, bool), TypeError> {
    let chain = term.chain();
    let mut changed = false;
    let mut elems = Vec::with_capacity(chain.len());
    for e in &chain {
        elems.push(match e {
            Mor::Tensor(a, b) => {
                let (a, ca) = cancel_pass(a, sig)?;
                let (b, cb) = cancel_pass(b, sig)?;
                changed |= ca || cb;
                Mor::tensor(a, b)
            }
            other => (*other).clone(),
        });
    }
    let mut kept: Vec<Mor> = Vec::with_capacity(elems.len());
    let mut cancelled = false;
    for e in &elems {
        match kept.last() {
            Some(top) if cancels(top, e, sig) => {
                kept.pop();
                cancelled = true;
            }
            _ => kept.push(e.clone()),
        }
    }
    if cancelled {
        let out = match Mor::right_assoc(kept) {
            Some(m) => m,
            None => Mor::Id(typecheck(chain[0], sig)?.dom),
        };
        Ok((out, true))
    } else {
        Ok((refill(term, &mut elems.into_iter()), changed))
    }
}

/// Deletes every invertible atom that is directly followed by one of its
/// inverses, whatever the bracketing of the surrounding chain. Chains
/// where something cancelled are rebuilt right-associated.
pub fn cancel_isos(term: &Mor, sig: &Signature) -> Result<Mor, TypeError> {
    typecheck(term, sig)?;
    let mut current = term.clone();
    loop {
        let (next, changed) = cancel_pass(&current, sig)?;
        if !changed {
            return Ok(current);
        }
        current = next;
    }
}

fn strip_ids(term: &Mor) -> Mor {
    match term {
        Mor::Comp(a, b) => {
            let (a, b) = (strip_ids(a), strip_ids(b));
            if a.is_id() {
                b
            } else if b.is_id() {
                a
            } else {
                Mor::comp(a, b)
            }
        }
        Mor::Tensor(a, b) => match (strip_ids(a), strip_ids(b)) {
            (Mor::Id(x), Mor::Id(y)) => Mor::Id(crate::term::Obj::tensor(x, y)),
            (a, b) => Mor::tensor(a, b),
        },
        atom => atom.clone(),
    }
}

/// [`cancel_isos`] plus removal of identities, repeated until stable.
pub fn cat_simpl(term: &Mor, sig: &Signature) -> Result<Mor, TypeError> {
    let mut current = term.clone();
    loop {
        let next = strip_ids(&cancel_isos(&current, sig)?);
        if next == current {
            return Ok(current);
        }
        current = next;
    }
}

/// Right-associates every composition chain, including those inside
/// tensor factors.
pub fn right_assoc_all(term: &Mor) -> Mor {
    match term {
        Mor::Comp(..) => {
            let elems: Vec<Mor> = term.chain().into_iter().map(right_assoc_all).collect();
            Mor::right_assoc(elems).expect("chains are non-empty")
        }
        Mor::Tensor(a, b) => Mor::tensor(right_assoc_all(a), right_assoc_all(b)),
        atom => atom.clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub tactic: String,
    pub term: String,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<22} {}", self.tactic, self.term)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EasyOutcome {
    Proved(Vec<TraceStep>),
    NotProved(Vec<TraceStep>),
}

impl EasyOutcome {
    pub fn is_proved(&self) -> bool {
        matches!(self, EasyOutcome::Proved(_))
    }

    pub fn trace(&self) -> &[TraceStep] {
        match self {
            EasyOutcome::Proved(t) | EasyOutcome::NotProved(t) => t,
        }
    }
}

fn easy_side(
    side: &str,
    term: &Mor,
    sig: &Signature,
    trace: &mut Vec<TraceStep>,
) -> Result<Mor, TypeError> {
    let mut step = |tactic: &str, m: &Mor| {
        trace.push(TraceStep {
            tactic: format!("{tactic} ({side})"),
            term: m.to_string(),
        })
    };
    step("start", term);
    let simplified = cat_simpl(term, sig)?;
    step("cat_simpl", &simplified);
    let assoc = right_assoc_all(&simplified);
    step("right_assoc", &assoc);
    let foliated = weak_foliate(&assoc, sig)?;
    step("weak_foliate", &foliated);
    Ok(foliated)
}

/// Closes goals that hold by cancelling isomorphisms and identities,
/// reassociating and weakly foliating both sides.
pub fn cat_easy(t1: &Mor, t2: &Mor, sig: &Signature) -> Result<EasyOutcome, TacticError> {
    let ty1 = typecheck(t1, sig)?;
    let ty2 = typecheck(t2, sig)?;
    if ty1 != ty2 {
        return Err(TacticError::TypeMismatch {
            left: Box::new(ty1),
            right: Box::new(ty2),
        });
    }
    let mut trace = Vec::new();
    let lhs = easy_side("lhs", t1, sig, &mut trace)?;
    let rhs = easy_side("rhs", t2, sig, &mut trace)?;
    Ok(if lhs == rhs {
        trace.push(TraceStep {
            tactic: "reflexivity".into(),
            term: lhs.to_string(),
        });
        EasyOutcome::Proved(trace)
    } else {
        EasyOutcome::NotProved(trace)
    })
}
