use crate::error::TypeError;
use crate::term::{atom_type, Mor, Obj, Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StackKind {
    /// Identities around exactly one non-identity atom.
    Strong,
    /// Any tensor of atoms, as long as it contains no composition.
    Weak,
}

fn non_id_atoms(t: &Mor) -> Option<usize> {
    match t {
        Mor::Comp(..) => None,
        Mor::Tensor(a, b) => Some(non_id_atoms(a)? + non_id_atoms(b)?),
        Mor::Id(_) => Some(0),
        _ => Some(1),
    }
}

pub fn is_stack(t: &Mor, kind: StackKind) -> bool {
    match (non_id_atoms(t), kind) {
        (None, _) => false,
        (Some(n), StackKind::Strong) => n <= 1,
        (Some(_), StackKind::Weak) => true,
    }
}

/// Stacks of a term together with the objects between them:
/// `bounds[0]` is the domain and `bounds[i]` the codomain of stack `i`.
struct Stacks {
    stacks: Vec<Mor>,
    bounds: Vec<Obj>,
}

fn stacks(t: &Mor, sig: &Signature, kind: StackKind) -> Result<Stacks, TypeError> {
    Ok(match t {
        Mor::Id(a) => Stacks {
            stacks: Vec::new(),
            bounds: vec![a.clone()],
        },
        Mor::Comp(f, g) => {
            let mut first = stacks(f, sig, kind)?;
            let second = stacks(g, sig, kind)?;
            first.stacks.extend(second.stacks);
            first.bounds.extend(second.bounds.into_iter().skip(1));
            first
        }
        Mor::Tensor(x, y) => {
            let top = stacks(x, sig, kind)?;
            let bottom = stacks(y, sig, kind)?;
            match kind {
                StackKind::Strong => interleave(top, bottom),
                StackKind::Weak => zip(top, bottom),
            }
        }
        atom => {
            let ty = atom_type(atom, sig)?;
            Stacks {
                stacks: vec![atom.clone()],
                bounds: vec![ty.dom, ty.cod],
            }
        }
    })
}

/// Round-robin, top factor first: `X1 * id`, `id * Y1`, `X2 * id`, ...
fn interleave(top: Stacks, bottom: Stacks) -> Stacks {
    let (m, n) = (top.stacks.len(), bottom.stacks.len());
    let mut out = Stacks {
        stacks: Vec::with_capacity(m + n),
        bounds: vec![Obj::tensor(top.bounds[0].clone(), bottom.bounds[0].clone())],
    };
    let (mut i_top, mut i_bot) = (0, 0);
    for i in 0..m.max(n) {
        if i < m {
            let b = &bottom.bounds[i_bot];
            out.stacks.push(Mor::tensor(top.stacks[i].clone(), Mor::Id(b.clone())));
            i_top = i + 1;
            out.bounds.push(Obj::tensor(top.bounds[i_top].clone(), b.clone()));
        }
        if i < n {
            let a = &top.bounds[i_top];
            out.stacks.push(Mor::tensor(Mor::Id(a.clone()), bottom.stacks[i].clone()));
            i_bot = i + 1;
            out.bounds.push(Obj::tensor(a.clone(), bottom.bounds[i_bot].clone()));
        }
    }
    out
}

/// Pairwise: `Xi * Yi`, leftovers padded with the other side's last
/// boundary identity.
fn zip(top: Stacks, bottom: Stacks) -> Stacks {
    let (m, n) = (top.stacks.len(), bottom.stacks.len());
    let mut out = Stacks {
        stacks: Vec::with_capacity(m.max(n)),
        bounds: vec![Obj::tensor(top.bounds[0].clone(), bottom.bounds[0].clone())],
    };
    for i in 0..m.max(n) {
        let x = top
            .stacks
            .get(i)
            .cloned()
            .unwrap_or_else(|| Mor::Id(top.bounds[m].clone()));
        let y = bottom
            .stacks
            .get(i)
            .cloned()
            .unwrap_or_else(|| Mor::Id(bottom.bounds[n].clone()));
        out.stacks.push(Mor::tensor(x, y));
        out.bounds.push(Obj::tensor(
            top.bounds[(i + 1).min(m)].clone(),
            bottom.bounds[(i + 1).min(n)].clone(),
        ));
    }
    out
}

fn assemble(s: Stacks) -> Mor {
    let dom = s.bounds[0].clone();
    Mor::right_assoc(s.stacks).unwrap_or(Mor::Id(dom))
}

/// Rewrites a term as a right-associated composition of strong stacks.
pub fn foliate(term: &Mor, sig: &Signature) -> Result<Mor, TypeError> {
    Ok(assemble(stacks(term, sig, StackKind::Strong)?))
}

/// Like [`foliate`], but tensor factors advance in lockstep so a stack may
/// hold several non-identity atoms.
pub fn weak_foliate(term: &Mor, sig: &Signature) -> Result<Mor, TypeError> {
    Ok(assemble(stacks(term, sig, StackKind::Weak)?))
}
