//! Random signatures, terms and model instances shared by the integration
//! tests, plus small reference implementations used as oracles.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use moncat::parse::parse_signature;
use moncat::semantics::{CMatrix, MatrixInstance, RelInstance, Relation};
use moncat::{typecheck, Mor, Obj, Signature};
use num_complex::Complex64;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const MIXED_SIG: &str = "\
category symmetric
object A B C
mor f : A -> B
mor g : B -> C
mor h : C -> A
mor p : A * B -> C
mor q : C -> B * A
mor s : I -> A
mor e : B -> I
mor t : A -> A
iso u : A -> A
iso v : B * C -> C * B
";

pub fn mixed_sig() -> Signature {
    parse_signature(MIXED_SIG).unwrap()
}

pub const ATOMS: [&str; 3] = ["A", "B", "C"];

// ---------------------------------------------------------------- objects

/// Random binary bracketing of `leaves`.
pub fn bracket(rng: &mut impl Rng, leaves: &[Obj]) -> Obj {
    match leaves.len() {
        0 => Obj::Unit,
        1 => leaves[0].clone(),
        n => {
            let k = rng.random_range(1..n);
            Obj::tensor(bracket(rng, &leaves[..k]), bracket(rng, &leaves[k..]))
        }
    }
}

/// `wires` with up to `units` copies of `I` inserted, randomly bracketed.
pub fn random_obj_over(rng: &mut impl Rng, wires: &[String], units: usize) -> Obj {
    let mut leaves: Vec<Obj> = wires.iter().map(|w| Obj::gen(w.as_str())).collect();
    for _ in 0..rng.random_range(0..=units) {
        let at = rng.random_range(0..=leaves.len());
        leaves.insert(at, Obj::Unit);
    }
    bracket(rng, &leaves)
}

pub fn random_wires(rng: &mut impl Rng, max: usize) -> Vec<String> {
    (0..rng.random_range(0..=max))
        .map(|_| ATOMS.choose(rng).unwrap().to_string())
        .collect()
}

fn canon_of(wires: &[String]) -> Obj {
    match wires {
        [] => Obj::Unit,
        [w] => Obj::gen(w.as_str()),
        [w, rest @ ..] => Obj::tensor(Obj::gen(w.as_str()), canon_of(rest)),
    }
}

pub fn canon(x: &Obj) -> Obj {
    canon_of(&x.wires())
}

/// `ca * cb -> canon` for canonical `ca`, `cb`.
fn merge(ca: &Obj, cb: &Obj) -> Mor {
    match (ca, cb) {
        (Obj::Unit, _) => Mor::LUnit(cb.clone()),
        (_, Obj::Unit) => Mor::RUnit(ca.clone()),
        (Obj::Gen(_), _) => Mor::id(Obj::tensor(ca.clone(), cb.clone())),
        (Obj::Tensor(x, rest), _) => Mor::comp(
            Mor::Assoc((**x).clone(), (**rest).clone(), cb.clone()),
            Mor::tensor(Mor::id((**x).clone()), merge(rest, cb)),
        ),
    }
}

/// A random structural path `x -> canon(x)`.
pub fn to_canon(rng: &mut impl Rng, x: &Obj) -> Mor {
    match x {
        Obj::Unit | Obj::Gen(_) => Mor::id(x.clone()),
        Obj::Tensor(a, b) => {
            let (fa, fb) = (to_canon(rng, a), to_canon(rng, b));
            let (ca, cb) = (canon(a), canon(b));
            let both = match rng.random_range(0..3) {
                0 => Mor::tensor(fa, fb),
                1 => Mor::comp(
                    Mor::tensor(fa, Mor::id((**b).clone())),
                    Mor::tensor(Mor::id(ca.clone()), fb),
                ),
                _ => Mor::comp(
                    Mor::tensor(Mor::id((**a).clone()), fb),
                    Mor::tensor(fa, Mor::id(cb.clone())),
                ),
            };
            Mor::comp(both, merge(&ca, &cb))
        }
    }
}

/// Removes identity factors of compositions and fuses tensors of
/// identities; a deliberately naive local pass.
pub fn strip_ids(m: &Mor) -> Mor {
    match m {
        Mor::Comp(a, b) => match (strip_ids(a), strip_ids(b)) {
            (Mor::Id(_), y) => y,
            (x, Mor::Id(_)) => x,
            (x, y) => Mor::comp(x, y),
        },
        Mor::Tensor(a, b) => match (strip_ids(a), strip_ids(b)) {
            (Mor::Id(x), Mor::Id(y)) => Mor::Id(Obj::tensor(x, y)),
            (x, y) => Mor::tensor(x, y),
        },
        atom => atom.clone(),
    }
}

/// A random structural morphism `x -> y`; the two objects must have the
/// same wires.
pub fn structural_path(rng: &mut impl Rng, x: &Obj, y: &Obj) -> Mor {
    let there = to_canon(rng, x);
    let back = to_canon(rng, y).inverse().unwrap();
    let m = Mor::comp(there, back);
    if rng.random_bool(0.5) {
        strip_ids(&m)
    } else {
        m
    }
}

/// Two independently generated structural terms between the same random
/// boundary, each with at most `max_leaves` atoms.
pub fn structural_pair(rng: &mut impl Rng, max_leaves: usize) -> (Mor, Mor) {
    loop {
        let wires = random_wires(rng, 3);
        let x = random_obj_over(rng, &wires, 1);
        let y = random_obj_over(rng, &wires, 1);
        let t1 = structural_path(rng, &x, &y);
        let t2 = structural_path(rng, &x, &y);
        if t1.size() <= max_leaves && t2.size() <= max_leaves {
            return (t1, t2);
        }
    }
}

// ---------------------------------------------------------------- terms

fn atoms_from(rng: &mut impl Rng, sig: &Signature, dom: &Obj) -> Vec<Mor> {
    let mut out = vec![Mor::id(dom.clone())];
    for d in sig.morphisms() {
        if &d.dom == dom {
            out.push(Mor::gen(d.name.clone()));
        }
        if d.iso && &d.cod == dom {
            out.push(Mor::Inv(d.name.clone()));
        }
    }
    out.push(Mor::LUnitInv(dom.clone()));
    out.push(Mor::RUnitInv(dom.clone()));
    if let Obj::Tensor(a, b) = dom {
        out.push(Mor::Braid((**a).clone(), (**b).clone()));
        if let Obj::Tensor(x, y) = &**a {
            out.push(Mor::Assoc((**x).clone(), (**y).clone(), (**b).clone()));
        }
        if let Obj::Tensor(y, z) = &**b {
            out.push(Mor::AssocInv((**a).clone(), (**y).clone(), (**z).clone()));
        }
        if **a == Obj::Unit {
            out.push(Mor::LUnit((**b).clone()));
        }
        if **b == Obj::Unit {
            out.push(Mor::RUnit((**a).clone()));
        }
    }
    let gens: Vec<Mor> = out.iter().filter(|m| matches!(m, Mor::Gen(_) | Mor::Inv(_))).cloned().collect();
    if !gens.is_empty() && rng.random_bool(0.5) {
        return gens;
    }
    out
}

fn cod(m: &Mor, sig: &Signature) -> Obj {
    typecheck(m, sig).unwrap().cod
}

/// A random well-typed term out of `dom` with at most `budget` atoms.
pub fn term_from(rng: &mut impl Rng, sig: &Signature, dom: &Obj, budget: usize) -> Mor {
    let budget = budget.max(1);
    let choice = if budget == 1 { 0 } else { rng.random_range(0..5) };
    match (choice, dom) {
        (1 | 2, Obj::Tensor(a, b)) => {
            let k = rng.random_range(1..budget);
            Mor::tensor(term_from(rng, sig, a, k), term_from(rng, sig, b, budget - k))
        }
        (1..=4, _) => {
            let k = rng.random_range(1..budget);
            let f = term_from(rng, sig, dom, k);
            let g = term_from(rng, sig, &cod(&f, sig), budget - k);
            Mor::comp(f, g)
        }
        _ => atoms_from(rng, sig, dom).choose(rng).unwrap().clone(),
    }
}

/// A random small object built from the generating objects.
pub fn random_dom(rng: &mut impl Rng) -> Obj {
    let wires: Vec<String> = (0..rng.random_range(1..=3))
        .map(|_| ATOMS.choose(rng).unwrap().to_string())
        .collect();
    let units = usize::from(rng.random_bool(0.2));
    random_obj_over(rng, &wires, units)
}

pub fn random_term(rng: &mut impl Rng, sig: &Signature, max_leaves: usize) -> Mor {
    let dom = random_dom(rng);
    let budget = rng.random_range(1..=max_leaves);
    term_from(rng, sig, &dom, budget)
}

/// One rewrite that keeps the term equal in every symmetric monoidal
/// category, applied at a random position.
pub fn mutate(rng: &mut impl Rng, sig: &Signature, m: &Mor) -> Mor {
    let here = rng.random_bool(0.35) || m.is_atom();
    if !here {
        let (a, b) = match m {
            Mor::Comp(a, b) | Mor::Tensor(a, b) => (a, b),
            _ => unreachable!(),
        };
        let (a, b) = if rng.random_bool(0.5) {
            (mutate(rng, sig, a), (**b).clone())
        } else {
            ((**a).clone(), mutate(rng, sig, b))
        };
        return if matches!(m, Mor::Comp(..)) {
            Mor::comp(a, b)
        } else {
            Mor::tensor(a, b)
        };
    }
    let ty = typecheck(m, sig).unwrap();
    let id = |o: &Obj| Mor::id(o.clone());
    match rng.random_range(0..9) {
        0 => match m {
            Mor::Comp(x, yz) if matches!(**yz, Mor::Comp(..)) => {
                let Mor::Comp(y, z) = &**yz else { unreachable!() };
                Mor::comp(Mor::comp((**x).clone(), (**y).clone()), (**z).clone())
            }
            Mor::Comp(xy, z) if matches!(**xy, Mor::Comp(..)) => {
                let Mor::Comp(x, y) = &**xy else { unreachable!() };
                Mor::comp((**x).clone(), Mor::comp((**y).clone(), (**z).clone()))
            }
            _ => Mor::comp(m.clone(), id(&ty.cod)),
        },
        1 => Mor::comp(id(&ty.dom), m.clone()),
        2 => match m {
            Mor::Tensor(ab, cd) if matches!((&**ab, &**cd), (Mor::Comp(..), Mor::Comp(..))) => {
                let (Mor::Comp(a, b), Mor::Comp(c, d)) = (&**ab, &**cd) else { unreachable!() };
                Mor::comp(
                    Mor::tensor((**a).clone(), (**c).clone()),
                    Mor::tensor((**b).clone(), (**d).clone()),
                )
            }
            Mor::Comp(ac, bd) if matches!((&**ac, &**bd), (Mor::Tensor(..), Mor::Tensor(..))) => {
                let (Mor::Tensor(a, c), Mor::Tensor(b, d)) = (&**ac, &**bd) else { unreachable!() };
                let (ta, tc) = (typecheck(a, sig).unwrap(), typecheck(c, sig).unwrap());
                let (tb, td) = (typecheck(b, sig).unwrap(), typecheck(d, sig).unwrap());
                if ta.cod == tb.dom && tc.cod == td.dom {
                    Mor::tensor(
                        Mor::comp((**a).clone(), (**b).clone()),
                        Mor::comp((**c).clone(), (**d).clone()),
                    )
                } else {
                    m.clone()
                }
            }
            _ => m.clone(),
        },
        3 => Mor::comp(
            m.clone(),
            Mor::comp(Mor::LUnitInv(ty.cod.clone()), Mor::LUnit(ty.cod.clone())),
        ),
        4 => Mor::comp(
            Mor::LUnitInv(ty.dom.clone()),
            Mor::comp(Mor::tensor(id(&Obj::Unit), m.clone()), Mor::LUnit(ty.cod.clone())),
        ),
        5 => Mor::comp(
            Mor::RUnitInv(ty.dom.clone()),
            Mor::comp(Mor::tensor(m.clone(), id(&Obj::Unit)), Mor::RUnit(ty.cod.clone())),
        ),
        6 => match m {
            Mor::Tensor(xy, z) if matches!(**xy, Mor::Tensor(..)) => {
                let Mor::Tensor(x, y) = &**xy else { unreachable!() };
                let (tx, ty_, tz) = (
                    typecheck(x, sig).unwrap(),
                    typecheck(y, sig).unwrap(),
                    typecheck(z, sig).unwrap(),
                );
                Mor::comp(
                    Mor::Assoc(tx.dom, ty_.dom, tz.dom),
                    Mor::comp(
                        Mor::tensor((**x).clone(), Mor::tensor((**y).clone(), (**z).clone())),
                        Mor::AssocInv(tx.cod, ty_.cod, tz.cod),
                    ),
                )
            }
            _ => m.clone(),
        },
        7 => match m {
            Mor::Tensor(x, y) => {
                let (tx, ty_) = (typecheck(x, sig).unwrap(), typecheck(y, sig).unwrap());
                Mor::comp(
                    Mor::tensor((**x).clone(), id(&ty_.dom)),
                    Mor::tensor(id(&tx.cod), (**y).clone()),
                )
            }
            _ => m.clone(),
        },
        _ => match m {
            Mor::Comp(x, y) if x.is_id() => (**y).clone(),
            Mor::Comp(x, y) if y.is_id() => (**x).clone(),
            _ => m.clone(),
        },
    }
}

/// A term and a copy rewritten by a few equality-preserving mutations.
pub fn equal_pair(rng: &mut impl Rng, sig: &Signature, max_leaves: usize) -> (Mor, Mor) {
    let t1 = random_term(rng, sig, (max_leaves * 2 / 3).max(1));
    let mut t2 = t1.clone();
    for _ in 0..rng.random_range(1..=4) {
        let next = mutate(rng, sig, &t2);
        if next.size() <= max_leaves {
            t2 = next;
        }
    }
    (t1, t2)
}

/// Replaces the first `t` or `u` (both `A -> A`) with the other one, which
/// generally changes the meaning but never the type.
pub fn perturb(m: &Mor) -> Option<Mor> {
    match m {
        Mor::Gen(n) if n == "t" => Some(Mor::gen("u")),
        Mor::Gen(n) if n == "u" => Some(Mor::gen("t")),
        Mor::Comp(a, b) | Mor::Tensor(a, b) => {
            let rebuild = |a: Mor, b: Mor| {
                if matches!(m, Mor::Comp(..)) {
                    Mor::comp(a, b)
                } else {
                    Mor::tensor(a, b)
                }
            };
            perturb(a)
                .map(|a2| rebuild(a2, (**b).clone()))
                .or_else(|| perturb(b).map(|b2| rebuild((**a).clone(), b2)))
        }
        _ => None,
    }
}

// ---------------------------------------------------------------- models

/// A complex number uniformly distributed in the closed unit disk.
pub fn disk(rng: &mut impl Rng) -> Complex64 {
    let r = rng.random::<f64>().sqrt();
    Complex64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| disk(rng))
}

/// A permutation matrix with unit-modulus phases, together with its
/// inverse (the conjugate transpose).
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> (CMatrix, CMatrix) {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = CMatrix::zeros(n, n);
    for (col, &row) in perm.iter().enumerate() {
        m[(row, col)] = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
    }
    let inv = m.adjoint();
    (m, inv)
}

fn flat(dims: &BTreeMap<String, usize>, o: &Obj) -> usize {
    o.wires().iter().map(|w| dims[w]).product()
}

pub fn random_matrix_instance(rng: &mut impl Rng, sig: &Signature, max_dim: usize) -> MatrixInstance {
    let mut inst = MatrixInstance::default();
    for o in sig.objects() {
        inst.dims.insert(o.to_string(), rng.random_range(1..=max_dim));
    }
    for d in sig.morphisms() {
        let (rows, cols) = (flat(&inst.dims, &d.cod), flat(&inst.dims, &d.dom));
        if d.iso {
            assert_eq!(rows, cols, "iso generators need square matrices");
            let (m, inv) = random_unitary(rng, rows);
            inst.mats.insert(d.name.clone(), m);
            inst.inv_mats.insert(d.name.clone(), inv);
        } else {
            inst.mats.insert(d.name.clone(), random_matrix(rng, rows, cols));
        }
    }
    inst
}

pub fn random_relation(rng: &mut impl Rng, dom: usize, cod: usize) -> Relation {
    let mut pairs = BTreeSet::new();
    for x in 0..dom {
        for y in 0..cod {
            if rng.random_bool(0.4) {
                pairs.insert((x, y));
            }
        }
    }
    Relation { dom, cod, pairs }
}

pub fn random_rel_instance(rng: &mut impl Rng, sig: &Signature, max_size: usize) -> RelInstance {
    let mut inst = RelInstance::default();
    for o in sig.objects() {
        inst.sizes.insert(o.to_string(), rng.random_range(1..=max_size));
    }
    for d in sig.morphisms() {
        let (dom, cod) = (flat(&inst.sizes, &d.dom), flat(&inst.sizes, &d.cod));
        let rel = if d.iso {
            let mut perm: Vec<usize> = (0..dom).collect();
            perm.shuffle(rng);
            Relation {
                dom,
                cod,
                pairs: perm.into_iter().enumerate().collect(),
            }
        } else {
            random_relation(rng, dom, cod)
        };
        inst.rels.insert(d.name.clone(), rel);
    }
    inst
}

// ---------------------------------------------------------------- oracles

pub fn naive_mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    assert_eq!(a.ncols(), b.nrows());
    CMatrix::from_fn(a.nrows(), b.ncols(), |i, j| {
        (0..a.ncols()).map(|k| a[(i, k)] * b[(k, j)]).sum()
    })
}

pub fn naive_kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (p, q) = (b.nrows(), b.ncols());
    CMatrix::from_fn(a.nrows() * p, a.ncols() * q, |i, j| a[(i / p, j / q)] * b[(i % p, j % q)])
}

/// Commutation matrix built column by column from basis vectors:
/// column `e_i ⊗ e_j` is `e_j ⊗ e_i`.
pub fn commutation_oracle(m: usize, n: usize) -> CMatrix {
    let basis = |k: usize, size: usize| CMatrix::from_fn(size, 1, |r, _| if r == k { 1.0.into() } else { 0.0.into() });
    let mut out = CMatrix::zeros(m * n, m * n);
    for i in 0..m {
        for j in 0..n {
            let input = naive_kron(&basis(i, m), &basis(j, n));
            let col = input.iter().position(|x| x.re == 1.0).unwrap();
            let image = naive_kron(&basis(j, n), &basis(i, m));
            out.set_column(col, &image.column(0));
        }
    }
    out
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Relational composition by exhaustive search over the middle carrier.
pub fn brute_compose(r: &Relation, s: &Relation) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for x in 0..r.dom {
        for y in 0..r.cod {
            for z in 0..s.cod {
                if r.pairs.contains(&(x, y)) && s.pairs.contains(&(y, z)) {
                    out.insert((x, z));
                }
            }
        }
    }
    out
}
