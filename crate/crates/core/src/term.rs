//! Object and morphism terms, signatures and the dom/cod typechecker.
//!
//! Terms keep their parenthesization exactly as written: `(f ; g) ; h` and
//! `f ; (g ; h)` are different values, as are `(A * B) * C` and
//! `A * (B * C)`. Composition is diagrammatic, so `Comp(f, g)` runs `f`
//! first.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::TypeError;

/// Names that may not be declared as objects or morphisms.
pub const RESERVED: &[&str] = &[
    "I",
    "id",
    "alpha",
    "alpha_inv",
    "lunit",
    "lunit_inv",
    "runit",
    "runit_inv",
    "braid",
    "braid_inv",
    "inv",
];

/// An object expression over the unit, object generators and tensor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Obj {
    Unit,
    Gen(String),
    Tensor(Box<Obj>, Box<Obj>),
}

impl Obj {
    pub fn gen(name: impl Into<String>) -> Obj {
        Obj::Gen(name.into())
    }

    pub fn tensor(a: Obj, b: Obj) -> Obj {
        Obj::Tensor(Box::new(a), Box::new(b))
    }

    /// Object generator names in left-to-right order; units and bracketing
    /// are dropped.
    pub fn wires(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.push_wires(&mut out);
        out
    }

    fn push_wires(&self, out: &mut Vec<String>) {
        match self {
            Obj::Unit => {}
            Obj::Gen(n) => out.push(n.clone()),
            Obj::Tensor(a, b) => {
                a.push_wires(out);
                b.push_wires(out);
            }
        }
    }

    fn check(&self, sig: &Signature) -> Result<(), TypeError> {
        match self {
            Obj::Unit => sig.require(Level::Monoidal, "unit object"),
            Obj::Gen(n) if sig.has_object(n) => Ok(()),
            Obj::Gen(n) => Err(TypeError::UndeclaredName(n.clone())),
            Obj::Tensor(a, b) => {
                sig.require(Level::Monoidal, "tensor product")?;
                a.check(sig)?;
                b.check(sig)
            }
        }
    }
}

/// A morphism term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mor {
    Gen(String),
    Id(Obj),
    /// Diagrammatic composition: the first component is applied first.
    Comp(Box<Mor>, Box<Mor>),
    Tensor(Box<Mor>, Box<Mor>),
    Assoc(Obj, Obj, Obj),
    AssocInv(Obj, Obj, Obj),
    LUnit(Obj),
    LUnitInv(Obj),
    RUnit(Obj),
    RUnitInv(Obj),
    Braid(Obj, Obj),
    BraidInv(Obj, Obj),
    /// Inverse of a generator declared `iso`.
    Inv(String),
}

impl Mor {
    pub fn gen(name: impl Into<String>) -> Mor {
        Mor::Gen(name.into())
    }

    pub fn id(obj: Obj) -> Mor {
        Mor::Id(obj)
    }

    pub fn comp(f: Mor, g: Mor) -> Mor {
        Mor::Comp(Box::new(f), Box::new(g))
    }

    pub fn tensor(f: Mor, g: Mor) -> Mor {
        Mor::Tensor(Box::new(f), Box::new(g))
    }

    /// `self ; next`
    pub fn then(self, next: Mor) -> Mor {
        Mor::comp(self, next)
    }

    pub fn is_atom(&self) -> bool {
        !matches!(self, Mor::Comp(..) | Mor::Tensor(..))
    }

    pub fn is_id(&self) -> bool {
        matches!(self, Mor::Id(_))
    }

    /// True for terms built only from identities, associators, unitors and
    /// their inverses.
    pub fn is_structural(&self) -> bool {
        match self {
            Mor::Comp(a, b) | Mor::Tensor(a, b) => a.is_structural() && b.is_structural(),
            Mor::Id(_)
            | Mor::Assoc(..)
            | Mor::AssocInv(..)
            | Mor::LUnit(_)
            | Mor::LUnitInv(_)
            | Mor::RUnit(_)
            | Mor::RUnitInv(_) => true,
            Mor::Gen(_) | Mor::Braid(..) | Mor::BraidInv(..) | Mor::Inv(_) => false,
        }
    }

    /// Number of leaf atoms.
    pub fn size(&self) -> usize {
        match self {
            Mor::Comp(a, b) | Mor::Tensor(a, b) => a.size() + b.size(),
            _ => 1,
        }
    }

    /// Leaf atoms in left-to-right, top-to-bottom order.
    pub fn atoms(&self) -> Vec<&Mor> {
        let mut out = Vec::new();
        self.push_atoms(&mut out);
        out
    }

    fn push_atoms<'a>(&'a self, out: &mut Vec<&'a Mor>) {
        match self {
            Mor::Comp(a, b) | Mor::Tensor(a, b) => {
                a.push_atoms(out);
                b.push_atoms(out);
            }
            atom => out.push(atom),
        }
    }

    /// Maximal composition chain rooted here; non-compositions are a
    /// chain of one.
    pub fn chain(&self) -> Vec<&Mor> {
        let mut out = Vec::new();
        self.push_chain(&mut out);
        out
    }

    fn push_chain<'a>(&'a self, out: &mut Vec<&'a Mor>) {
        match self {
            Mor::Comp(a, b) => {
                a.push_chain(out);
                b.push_chain(out);
            }
            other => out.push(other),
        }
    }

    /// Builds a right-associated composition; `None` for an empty chain.
    pub fn right_assoc(chain: Vec<Mor>) -> Option<Mor> {
        let mut iter = chain.into_iter().rev();
        let last = iter.next()?;
        Some(iter.fold(last, |acc, m| Mor::comp(m, acc)))
    }

    /// Structural inverse of a term built from invertible atoms.
    pub fn inverse(&self) -> Option<Mor> {
        Some(match self {
            Mor::Comp(a, b) => Mor::comp(b.inverse()?, a.inverse()?),
            Mor::Tensor(a, b) => Mor::tensor(a.inverse()?, b.inverse()?),
            Mor::Id(a) => Mor::Id(a.clone()),
            Mor::Assoc(a, b, c) => Mor::AssocInv(a.clone(), b.clone(), c.clone()),
            Mor::AssocInv(a, b, c) => Mor::Assoc(a.clone(), b.clone(), c.clone()),
            Mor::LUnit(a) => Mor::LUnitInv(a.clone()),
            Mor::LUnitInv(a) => Mor::LUnit(a.clone()),
            Mor::RUnit(a) => Mor::RUnitInv(a.clone()),
            Mor::RUnitInv(a) => Mor::RUnit(a.clone()),
            Mor::Braid(a, b) => Mor::BraidInv(a.clone(), b.clone()),
            Mor::BraidInv(a, b) => Mor::Braid(a.clone(), b.clone()),
            Mor::Inv(g) => Mor::Gen(g.clone()),
            Mor::Gen(_) => return None,
        })
    }
}

/// How much structure a signature's category carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Plain,
    Monoidal,
    Braided,
    Symmetric,
}

impl FromStr for Level {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "plain" => Ok(Level::Plain),
            "monoidal" => Ok(Level::Monoidal),
            "braided" => Ok(Level::Braided),
            "symmetric" => Ok(Level::Symmetric),
            _ => Err(()),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Plain => "plain",
            Level::Monoidal => "monoidal",
            Level::Braided => "braided",
            Level::Symmetric => "symmetric",
        })
    }
}

/// Builtin operation an alias token can stand for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    Compose,
    Tensor,
    Id,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorDecl {
    pub name: String,
    pub dom: Obj,
    pub cod: Obj,
    pub iso: bool,
}

/// A `backend <kind>` block kept as raw lines; the semantics module
/// interprets it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BackendBlock {
    pub kind: String,
    /// `(1-based line number, text)`
    pub lines: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub level: Level,
    objects: BTreeSet<String>,
    morphisms: BTreeMap<String, MorDecl>,
    aliases: BTreeMap<String, Builtin>,
    backends: Vec<BackendBlock>,
}

impl Default for Signature {
    fn default() -> Self {
        Signature::new(Level::Symmetric)
    }
}

impl Signature {
    pub fn new(level: Level) -> Signature {
        Signature {
            level,
            objects: BTreeSet::new(),
            morphisms: BTreeMap::new(),
            aliases: BTreeMap::new(),
            backends: Vec::new(),
        }
    }

    fn check_fresh(&self, name: &str) -> Result<(), TypeError> {
        if RESERVED.contains(&name) {
            return Err(TypeError::ReservedName(name.to_string()));
        }
        if self.objects.contains(name)
            || self.morphisms.contains_key(name)
            || self.aliases.contains_key(name)
        {
            return Err(TypeError::DuplicateName(name.to_string()));
        }
        Ok(())
    }

    pub fn add_object(&mut self, name: impl Into<String>) -> Result<(), TypeError> {
        let name = name.into();
        self.check_fresh(&name)?;
        self.objects.insert(name);
        Ok(())
    }

    pub fn add_morphism(
        &mut self,
        name: impl Into<String>,
        dom: Obj,
        cod: Obj,
        iso: bool,
    ) -> Result<(), TypeError> {
        let name = name.into();
        self.check_fresh(&name)?;
        dom.check(self)?;
        cod.check(self)?;
        self.morphisms.insert(
            name.clone(),
            MorDecl {
                name,
                dom,
                cod,
                iso,
            },
        );
        Ok(())
    }

    pub fn add_alias(&mut self, token: impl Into<String>, target: Builtin) -> Result<(), TypeError> {
        let token = token.into();
        if self.objects.contains(&token)
            || self.morphisms.contains_key(&token)
            || self.aliases.contains_key(&token)
        {
            return Err(TypeError::DuplicateName(token));
        }
        self.aliases.insert(token, target);
        Ok(())
    }

    pub fn add_backend(&mut self, block: BackendBlock) {
        self.backends.push(block);
    }

    /// Builder shorthand used heavily by tests and examples.
    pub fn with_objects<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        for n in names {
            self.add_object(n).expect("fresh object name");
        }
        self
    }

    pub fn with_mor(mut self, name: &str, dom: Obj, cod: Obj) -> Self {
        self.add_morphism(name, dom, cod, false).expect("valid morphism declaration");
        self
    }

    pub fn with_iso(mut self, name: &str, dom: Obj, cod: Obj) -> Self {
        self.add_morphism(name, dom, cod, true).expect("valid morphism declaration");
        self
    }

    pub fn has_object(&self, name: &str) -> bool {
        self.objects.contains(name)
    }

    pub fn objects(&self) -> impl Iterator<Item = &str> {
        self.objects.iter().map(String::as_str)
    }

    pub fn morphism(&self, name: &str) -> Option<&MorDecl> {
        self.morphisms.get(name)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = &MorDecl> {
        self.morphisms.values()
    }

    pub fn aliases(&self) -> impl Iterator<Item = (&str, Builtin)> {
        self.aliases.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn backends(&self) -> &[BackendBlock] {
        &self.backends
    }

    pub fn backend(&self, kind: &str) -> Option<&BackendBlock> {
        self.backends.iter().find(|b| b.kind == kind)
    }

    fn require(&self, needed: Level, what: &str) -> Result<(), TypeError> {
        if self.level >= needed {
            Ok(())
        } else {
            Err(TypeError::LevelViolation {
                what: what.to_string(),
                needed,
                level: self.level,
            })
        }
    }

    /// Checks an object expression against this signature.
    pub fn check_obj(&self, obj: &Obj) -> Result<(), TypeError> {
        obj.check(self)
    }
}

/// `dom -> cod`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorType {
    pub dom: Obj,
    pub cod: Obj,
}

impl MorType {
    pub fn new(dom: Obj, cod: Obj) -> MorType {
        MorType { dom, cod }
    }

    pub fn flipped(self) -> MorType {
        MorType {
            dom: self.cod,
            cod: self.dom,
        }
    }
}

impl fmt::Display for MorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.dom, self.cod)
    }
}

fn t(a: &Obj, b: &Obj) -> Obj {
    Obj::tensor(a.clone(), b.clone())
}

/// Type of a single atom (anything but `Comp`/`Tensor`).
pub fn atom_type(atom: &Mor, sig: &Signature) -> Result<MorType, TypeError> {
    let checked = |objs: &[&Obj], needed: Level, what: &str| -> Result<(), TypeError> {
        sig.require(needed, what)?;
        objs.iter().try_for_each(|o| o.check(sig))
    };
    match atom {
        Mor::Gen(name) => sig
            .morphism(name)
            .map(|d| MorType::new(d.dom.clone(), d.cod.clone()))
            .ok_or_else(|| TypeError::UndeclaredName(name.clone())),
        Mor::Inv(name) => {
            let decl = sig
                .morphism(name)
                .ok_or_else(|| TypeError::UndeclaredName(name.clone()))?;
            if !decl.iso {
                return Err(TypeError::NotAnIso(name.clone()));
            }
            Ok(MorType::new(decl.cod.clone(), decl.dom.clone()))
        }
        Mor::Id(a) => {
            a.check(sig)?;
            Ok(MorType::new(a.clone(), a.clone()))
        }
        Mor::Assoc(a, b, c) => {
            checked(&[a, b, c], Level::Monoidal, "associator")?;
            Ok(MorType::new(t(&t(a, b), c), t(a, &t(b, c))))
        }
        Mor::AssocInv(a, b, c) => {
            checked(&[a, b, c], Level::Monoidal, "associator")?;
            Ok(MorType::new(t(a, &t(b, c)), t(&t(a, b), c)))
        }
        Mor::LUnit(a) => {
            checked(&[a], Level::Monoidal, "left unitor")?;
            Ok(MorType::new(t(&Obj::Unit, a), a.clone()))
        }
        Mor::LUnitInv(a) => {
            checked(&[a], Level::Monoidal, "left unitor")?;
            Ok(MorType::new(a.clone(), t(&Obj::Unit, a)))
        }
        Mor::RUnit(a) => {
            checked(&[a], Level::Monoidal, "right unitor")?;
            Ok(MorType::new(t(a, &Obj::Unit), a.clone()))
        }
        Mor::RUnitInv(a) => {
            checked(&[a], Level::Monoidal, "right unitor")?;
            Ok(MorType::new(a.clone(), t(a, &Obj::Unit)))
        }
        Mor::Braid(a, b) => {
            checked(&[a, b], Level::Braided, "braiding")?;
            Ok(MorType::new(t(a, b), t(b, a)))
        }
        Mor::BraidInv(a, b) => {
            checked(&[a, b], Level::Braided, "braiding")?;
            Ok(MorType::new(t(b, a), t(a, b)))
        }
        Mor::Comp(..) | Mor::Tensor(..) => unreachable!("atom_type called on a compound term"),
    }
}

/// Type of `f ; g` given the types of `f` and `g`.
pub fn compose_types(f: MorType, g: MorType) -> Result<MorType, TypeError> {
    if f.cod != g.dom {
        return Err(TypeError::CompositionMismatch {
            left_cod: f.cod,
            right_dom: g.dom,
        });
    }
    Ok(MorType::new(f.dom, g.cod))
}

/// Type of `f * g` given the types of `f` and `g`.
pub fn tensor_types(f: MorType, g: MorType, sig: &Signature) -> Result<MorType, TypeError> {
    sig.require(Level::Monoidal, "tensor product")?;
    Ok(MorType::new(
        Obj::tensor(f.dom, g.dom),
        Obj::tensor(f.cod, g.cod),
    ))
}

/// Computes `dom` and `cod` of a term; composition needs syntactically
/// equal middle objects.
pub fn typecheck(term: &Mor, sig: &Signature) -> Result<MorType, TypeError> {
    match term {
        Mor::Comp(f, g) => compose_types(typecheck(f, sig)?, typecheck(g, sig)?),
        Mor::Tensor(f, g) => tensor_types(typecheck(f, sig)?, typecheck(g, sig)?, sig),
        atom => atom_type(atom, sig),
    }
}

/// Atoms whose composite with `atom` (in either order) is an identity.
///
/// At the symmetric level `braid[A,B]` is also undone by `braid[B,A]`,
/// and likewise for `braid_inv`.
pub fn iso_inverse(atom: &Mor, sig: &Signature) -> Result<Vec<Mor>, TypeError> {
    let mut out = match atom {
        Mor::Gen(name) => match sig.morphism(name) {
            Some(d) if d.iso => vec![Mor::Inv(name.clone())],
            Some(_) => return Err(TypeError::NotInvertible(atom.clone())),
            None => return Err(TypeError::UndeclaredName(name.clone())),
        },
        Mor::Comp(..) | Mor::Tensor(..) => return Err(TypeError::NotInvertible(atom.clone())),
        other => vec![other.inverse().expect("non-generator atoms are invertible")],
    };
    if sig.level == Level::Symmetric {
        match atom {
            Mor::Braid(a, b) => out.push(Mor::Braid(b.clone(), a.clone())),
            Mor::BraidInv(a, b) => out.push(Mor::BraidInv(b.clone(), a.clone())),
            _ => {}
        }
    }
    Ok(out)
}

// Printing. `;` binds looser than `*`; both associate to the left, so a
// right-nested operand of the same operator gets parentheses. Operands of
// one operator that are built with the other are always parenthesized.

#[derive(Clone, Copy, PartialEq, Eq)]
enum Pos {
    Top,
    CompLeft,
    CompRight,
    TensorLeft,
    TensorRight,
}

fn fmt_obj(obj: &Obj, pos: Pos, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match obj {
        Obj::Unit => f.write_str("I"),
        Obj::Gen(n) => f.write_str(n),
        Obj::Tensor(a, b) => {
            let paren = pos == Pos::TensorRight;
            if paren {
                f.write_str("(")?;
            }
            fmt_obj(a, Pos::TensorLeft, f)?;
            f.write_str(" * ")?;
            fmt_obj(b, Pos::TensorRight, f)?;
            if paren {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_obj(self, Pos::Top, f)
    }
}

fn fmt_args(name: &str, objs: &[&Obj], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "{name}[")?;
    for (i, o) in objs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        fmt_obj(o, Pos::Top, f)?;
    }
    f.write_str("]")
}

fn fmt_mor(m: &Mor, pos: Pos, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match m {
        Mor::Comp(a, b) => {
            let paren = !matches!(pos, Pos::Top | Pos::CompLeft);
            if paren {
                f.write_str("(")?;
            }
            fmt_mor(a, Pos::CompLeft, f)?;
            f.write_str(" ; ")?;
            fmt_mor(b, Pos::CompRight, f)?;
            if paren {
                f.write_str(")")?;
            }
            Ok(())
        }
        Mor::Tensor(a, b) => {
            let paren = !matches!(pos, Pos::Top | Pos::TensorLeft);
            if paren {
                f.write_str("(")?;
            }
            fmt_mor(a, Pos::TensorLeft, f)?;
            f.write_str(" * ")?;
            fmt_mor(b, Pos::TensorRight, f)?;
            if paren {
                f.write_str(")")?;
            }
            Ok(())
        }
        Mor::Gen(n) => f.write_str(n),
        Mor::Inv(n) => write!(f, "inv({n})"),
        Mor::Id(a) => fmt_args("id", &[a], f),
        Mor::Assoc(a, b, c) => fmt_args("alpha", &[a, b, c], f),
        Mor::AssocInv(a, b, c) => fmt_args("alpha_inv", &[a, b, c], f),
        Mor::LUnit(a) => fmt_args("lunit", &[a], f),
        Mor::LUnitInv(a) => fmt_args("lunit_inv", &[a], f),
        Mor::RUnit(a) => fmt_args("runit", &[a], f),
        Mor::RUnitInv(a) => fmt_args("runit_inv", &[a], f),
        Mor::Braid(a, b) => fmt_args("braid", &[a, b], f),
        Mor::BraidInv(a, b) => fmt_args("braid_inv", &[a, b], f),
    }
}

impl fmt::Display for Mor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_mor(self, Pos::Top, f)
    }
}
