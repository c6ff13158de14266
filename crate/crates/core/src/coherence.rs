//! Deciding equality up to monoidal structure.
//!
//! A term is flattened into a [`Sheet`]: a sequence of layers over
//! unbracketed wire lists in which associators and unitors vanish. Boxes
//! are then slid left through identity wires until every box sits at its
//! earliest possible layer, and empty layers are dropped. Two terms whose
//! canonical sheets coincide are equal in every monoidal category.
//!
//! Braidings are kept as opaque boxes keyed by the flattened wires of
//! both factors, so braided equalities are not decided here.

use std::fmt;

use crate::error::{TacticError, TypeError};
use crate::term::{atom_type, typecheck, Mor, Obj, Signature};

pub type WireList = Vec<String>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoxSlot {
    pub label: String,
    pub inputs: WireList,
    pub outputs: WireList,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    Wire(String),
    Box(BoxSlot),
}

impl Slot {
    pub fn inputs(&self) -> &[String] {
        match self {
            Slot::Wire(w) => std::slice::from_ref(w),
            Slot::Box(b) => &b.inputs,
        }
    }

    pub fn outputs(&self) -> &[String] {
        match self {
            Slot::Wire(w) => std::slice::from_ref(w),
            Slot::Box(b) => &b.outputs,
        }
    }

    pub fn is_wire(&self) -> bool {
        matches!(self, Slot::Wire(_))
    }
}

/// One vertical slice; slots are ordered top to bottom.
pub type Layer = Vec<Slot>;

fn layer_outputs(layer: &Layer) -> WireList {
    layer.iter().flat_map(|s| s.outputs().iter().cloned()).collect()
}

fn layer_inputs(layer: &Layer) -> WireList {
    layer.iter().flat_map(|s| s.inputs().iter().cloned()).collect()
}

fn wire_layer(wires: &[String]) -> Layer {
    wires.iter().cloned().map(Slot::Wire).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sheet {
    pub input: WireList,
    pub layers: Vec<Layer>,
}

impl Sheet {
    pub fn output(&self) -> WireList {
        self.layers
            .last()
            .map(layer_outputs)
            .unwrap_or_else(|| self.input.clone())
    }

    /// Every layer consumes exactly what the previous one produced.
    pub fn is_consistent(&self) -> bool {
        let mut current = self.input.clone();
        for layer in &self.layers {
            if layer_inputs(layer) != current {
                return false;
            }
            current = layer_outputs(layer);
        }
        true
    }

    fn padded(mut self, len: usize) -> Sheet {
        let out = self.output();
        while self.layers.len() < len {
            self.layers.push(wire_layer(&out));
        }
        self
    }
}

/// Canonical sheet: no wire-only layers, every box at its earliest layer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub input: WireList,
    pub output: WireList,
    pub layers: Vec<Layer>,
}

impl NormalForm {
    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn box_count(&self) -> usize {
        self.layers
            .iter()
            .flatten()
            .filter(|s| !s.is_wire())
            .count()
    }

    /// Stable one-line rendering, e.g. `A,C => B,D : [f(A→B)|h(C→D)]`.
    pub fn dump(&self) -> String {
        self.to_string()
    }
}

fn fmt_wires(w: &[String]) -> String {
    if w.is_empty() {
        "I".to_string()
    } else {
        w.join(",")
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} => {} :", fmt_wires(&self.input), fmt_wires(&self.output))?;
        if self.layers.is_empty() {
            return f.write_str(" id");
        }
        for (i, layer) in self.layers.iter().enumerate() {
            f.write_str(if i == 0 { " [" } else { " ; [" })?;
            for (j, slot) in layer.iter().enumerate() {
                if j > 0 {
                    f.write_str("|")?;
                }
                match slot {
                    Slot::Wire(w) => write!(f, "wire({w})")?,
                    Slot::Box(b) => write!(
                        f,
                        "{}({}→{})",
                        b.label,
                        b.inputs.join(","),
                        b.outputs.join(",")
                    )?,
                }
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

/// Drops units and bracketing.
pub fn flatten_object(obj: &Obj) -> WireList {
    obj.wires()
}

fn single_box(label: String, inputs: WireList, outputs: WireList) -> Sheet {
    Sheet {
        input: inputs.clone(),
        layers: vec![vec![Slot::Box(BoxSlot {
            label,
            inputs,
            outputs,
        })]],
    }
}

fn braid_label(kind: &str, a: &Obj, b: &Obj) -> String {
    format!("{kind}({}|{})", a.wires().join(","), b.wires().join(","))
}

fn build(term: &Mor, sig: &Signature) -> Result<Sheet, TypeError> {
    Ok(match term {
        Mor::Id(a) => Sheet {
            input: a.wires(),
            layers: Vec::new(),
        },
        Mor::Assoc(..)
        | Mor::AssocInv(..)
        | Mor::LUnit(_)
        | Mor::LUnitInv(_)
        | Mor::RUnit(_)
        | Mor::RUnitInv(_) => Sheet {
            input: atom_type(term, sig)?.dom.wires(),
            layers: Vec::new(),
        },
        Mor::Gen(g) => {
            let ty = atom_type(term, sig)?;
            single_box(g.clone(), ty.dom.wires(), ty.cod.wires())
        }
        Mor::Inv(g) => {
            let ty = atom_type(term, sig)?;
            single_box(format!("inv:{g}"), ty.dom.wires(), ty.cod.wires())
        }
        Mor::Braid(a, b) => {
            let ty = atom_type(term, sig)?;
            single_box(braid_label("braid", a, b), ty.dom.wires(), ty.cod.wires())
        }
        Mor::BraidInv(a, b) => {
            let ty = atom_type(term, sig)?;
            single_box(braid_label("braid_inv", a, b), ty.dom.wires(), ty.cod.wires())
        }
        Mor::Comp(f, g) => {
            let mut first = build(f, sig)?;
            let second = build(g, sig)?;
            first.layers.extend(second.layers);
            first
        }
        Mor::Tensor(f, g) => {
            let top = build(f, sig)?;
            let bottom = build(g, sig)?;
            let len = top.layers.len().max(bottom.layers.len());
            let (top, bottom) = (top.padded(len), bottom.padded(len));
            let mut input = top.input;
            input.extend(bottom.input);
            let layers = top
                .layers
                .into_iter()
                .zip(bottom.layers)
                .map(|(mut t, b)| {
                    t.extend(b);
                    t
                })
                .collect();
            Sheet { input, layers }
        }
    })
}

/// Flattens a well-typed term into layers.
pub fn sheet_of_term(term: &Mor, sig: &Signature) -> Result<Sheet, TypeError> {
    typecheck(term, sig)?;
    build(term, sig)
}

/// Order in which [`canonicalize_with`] visits boxes within a pass. The
/// result does not depend on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanOrder {
    TopDown,
    BottomUp,
}

/// Index in `layer` where a box with outputs starting at `pos` and
/// covering `n` positions can land: `Some(start)` when those positions are
/// produced by `n` consecutive wires. For `n == 0` the position must be a
/// slot boundary; the box goes after any zero-output slots sitting there.
fn landing(layer: &Layer, pos: usize, n: usize) -> Option<usize> {
    let mut offset = 0;
    if n == 0 {
        let mut found = None;
        for (i, slot) in layer.iter().enumerate() {
            if offset == pos {
                found = Some(i);
            }
            offset += slot.outputs().len();
        }
        if offset == pos {
            found = Some(layer.len());
        }
        return found;
    }
    for (i, slot) in layer.iter().enumerate() {
        let len = slot.outputs().len();
        if offset == pos && len > 0 {
            let covered = layer.get(i..i + n)?;
            return covered.iter().all(Slot::is_wire).then_some(i);
        }
        if offset > pos || offset + len > pos {
            return None;
        }
        offset += len;
    }
    None
}

/// Tries to move the box at `cur[j]` into `prev`. Returns the number of
/// wires that replaced it.
fn try_slide(prev: &mut Layer, cur: &mut Layer, j: usize) -> Option<usize> {
    let Slot::Box(b) = &cur[j] else { return None };
    let pos: usize = cur[..j].iter().map(|s| s.inputs().len()).sum();
    let n = b.inputs.len();
    let at = landing(prev, pos, n)?;
    let Slot::Box(b) = cur.remove(j) else { unreachable!() };
    let m = b.outputs.len();
    cur.splice(j..j, wire_layer(&b.outputs));
    prev.splice(at..at + n, [Slot::Box(b)]);
    Some(m)
}

/// One sliding pass over layers `1..`; returns whether anything moved.
fn slide_pass(layers: &mut [Layer], order: ScanOrder) -> bool {
    let mut changed = false;
    for k in 1..layers.len() {
        let (before, after) = layers.split_at_mut(k);
        let prev = &mut before[k - 1];
        let cur = &mut after[0];
        match order {
            ScanOrder::TopDown => {
                let mut j = 0;
                while j < cur.len() {
                    match try_slide(prev, cur, j) {
                        Some(m) => {
                            changed = true;
                            j += m;
                        }
                        None => j += 1,
                    }
                }
            }
            ScanOrder::BottomUp => {
                for j in (0..cur.len()).rev() {
                    changed |= try_slide(prev, cur, j).is_some();
                }
            }
        }
    }
    changed
}

/// Slides every box to its earliest layer, then drops wire-only layers.
pub fn canonicalize(sheet: &Sheet) -> NormalForm {
    canonicalize_with(sheet, ScanOrder::TopDown)
}

pub fn canonicalize_with(sheet: &Sheet, order: ScanOrder) -> NormalForm {
    let mut layers = sheet.layers.clone();
    while slide_pass(&mut layers, order) {}
    let output = layers
        .last()
        .map(layer_outputs)
        .unwrap_or_else(|| sheet.input.clone());
    layers.retain(|l| !l.iter().all(Slot::is_wire));
    NormalForm {
        input: sheet.input.clone(),
        output,
        layers,
    }
}

/// Canonical form of a single term.
pub fn normal_form(term: &Mor, sig: &Signature) -> Result<NormalForm, TypeError> {
    Ok(canonicalize(&sheet_of_term(term, sig)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Equal(NormalForm),
    /// The normal forms differ. This does not mean the terms are unequal.
    NotDecided(NormalForm, NormalForm),
}

impl Decision {
    pub fn is_equal(&self) -> bool {
        matches!(self, Decision::Equal(_))
    }
}

/// Decides `t1 = t2` up to monoidal structure and identity sliding. Both
/// terms must have syntactically identical domain and codomain.
pub fn monoidal_eq(t1: &Mor, t2: &Mor, sig: &Signature) -> Result<Decision, TacticError> {
    let ty1 = typecheck(t1, sig)?;
    let ty2 = typecheck(t2, sig)?;
    if ty1 != ty2 {
        return Err(TacticError::TypeMismatch {
            left: Box::new(ty1),
            right: Box::new(ty2),
        });
    }
    let n1 = canonicalize(&build(t1, sig)?);
    let n2 = canonicalize(&build(t2, sig)?);
    Ok(if n1 == n2 {
        Decision::Equal(n1)
    } else {
        Decision::NotDecided(n1, n2)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expr;
    use crate::term::Level;

    fn sig() -> Signature {
        let o = Obj::gen;
        Signature::new(Level::Symmetric)
            .with_objects(["A", "B", "C", "D"])
            .with_mor("f", o("A"), o("B"))
            .with_mor("g", o("B"), o("C"))
            .with_mor("h", o("C"), o("D"))
            .with_mor("g2", o("A"), o("B"))
            .with_mor("f2", o("B"), o("C"))
            .with_mor("s", Obj::Unit, o("C"))
            .with_mor("e", o("A"), Obj::Unit)
            .with_mor("split", o("A"), Obj::tensor(o("B"), o("B")))
    }

    fn nf(text: &str) -> NormalForm {
        let s = sig();
        normal_form(&parse_expr(text, &s).unwrap(), &s).unwrap()
    }

    fn w(names: &[&str]) -> WireList {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn bx(label: &str, i: &[&str], o: &[&str]) -> Slot {
        Slot::Box(BoxSlot {
            label: label.into(),
            inputs: w(i),
            outputs: w(o),
        })
    }

    #[test]
    fn flatten() {
        let o = Obj::gen;
        assert_eq!(
            flatten_object(&Obj::tensor(Obj::tensor(o("A"), Obj::Unit), o("B"))),
            w(&["A", "B"])
        );
        assert!(flatten_object(&Obj::Unit).is_empty());
        assert_eq!(
            flatten_object(&Obj::tensor(o("A"), Obj::tensor(o("B"), o("C")))),
            flatten_object(&Obj::tensor(Obj::tensor(o("A"), o("B")), o("C")))
        );
    }

    #[test]
    fn sheets() {
        let s = sig();
        let sh = sheet_of_term(&parse_expr("alpha[A,B,C]", &s).unwrap(), &s).unwrap();
        assert_eq!(sh, Sheet { input: w(&["A", "B", "C"]), layers: vec![] });
        let sh = sheet_of_term(&parse_expr("f", &s).unwrap(), &s).unwrap();
        assert_eq!(sh.layers, vec![vec![bx("f", &["A"], &["B"])]]);
        let sh = sheet_of_term(&parse_expr("f * id[C]", &s).unwrap(), &s).unwrap();
        assert_eq!(
            sh.layers,
            vec![vec![bx("f", &["A"], &["B"]), Slot::Wire("C".into())]]
        );
        assert!(sh.is_consistent());
    }

    #[test]
    fn interchange_slides() {
        let expected = vec![vec![bx("f", &["A"], &["B"]), bx("h", &["C"], &["D"])]];
        assert_eq!(nf("(f * id[C]) ; (id[B] * h)").layers, expected);
        assert_eq!(nf("(id[A] * h) ; (f * id[D])").layers, expected);
        assert_eq!(nf("f * h").layers, expected);
    }

    #[test]
    fn association_is_invisible() {
        assert_eq!(nf("(f ; g) ; h"), nf("f ; (g ; h)"));
    }

    #[test]
    fn coherence_examples() {
        let s = sig();
        let eq = |a: &str, b: &str| {
            monoidal_eq(&parse_expr(a, &s).unwrap(), &parse_expr(b, &s).unwrap(), &s).unwrap()
        };
        let tri = eq("alpha[A,I,B] ; (id[A] * lunit[B])", "runit[A] * id[B]");
        assert!(tri.is_equal());
        if let Decision::Equal(n) = tri {
            assert!(n.is_empty());
        }
        assert!(eq(
            "(alpha[A,B,C] * id[D]) ; alpha[A,B * C,D] ; (id[A] * alpha[B,C,D])",
            "alpha[A * B,C,D] ; alpha[A,B,C * D]"
        )
        .is_equal());
        assert!(eq("lunit[A] ; f", "(id[I] * f) ; lunit[B]").is_equal());
        assert!(!eq("f ; f2", "g2 ; g").is_equal());
    }

    #[test]
    fn boundary_mismatch() {
        let s = sig();
        let err = monoidal_eq(&parse_expr("f", &s).unwrap(), &parse_expr("g", &s).unwrap(), &s)
            .unwrap_err();
        assert!(matches!(err, TacticError::TypeMismatch { .. }));
    }

    #[test]
    fn dump_format() {
        assert_eq!(nf("f * h").dump(), "A,C => B,D : [f(A→B)|h(C→D)]");
        assert_eq!(nf("alpha[A,B,C]").dump(), "A,B,C => A,B,C : id");
        assert_eq!(nf("runit_inv[A] ; runit[A] ; e").dump(), "A => I : [e(A→)]");
    }

    #[test]
    fn braids_are_keyed_by_split() {
        let s = sig();
        let a = nf("braid[A, A * A]");
        let b = nf("braid[A * A, A]");
        assert_ne!(a, b);
        let c = normal_form(&parse_expr("braid[A, (A * I) * A]", &s).unwrap(), &s).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn scalars_keep_their_anchor() {
        // a state below a wire slides to the first layer at the same height
        let n = nf("(f * id[I]) ; (id[B] * s)");
        assert_eq!(n.layers, vec![vec![bx("f", &["A"], &["B"]), bx("s", &[], &["C"])]]);
        // a state between outputs of one box cannot slide past it
        let n = nf("split ; (runit_inv[B] * id[B]) ; (id[B] * s * id[B])");
        assert_eq!(n.layers.len(), 2);
    }

    #[test]
    fn scan_order_does_not_matter() {
        let s = sig();
        for text in [
            "(f * id[C]) ; (id[B] * h) ; (g * id[D])",
            "split ; (runit_inv[B] * id[B]) ; (id[B] * s * id[B]) ; (f2 * id[C] * f2)",
            "(e * id[A]) ; (s * f) ; (id[C] * g)",
        ] {
            let sh = sheet_of_term(&parse_expr(text, &s).unwrap(), &s).unwrap();
            assert_eq!(
                canonicalize_with(&sh, ScanOrder::TopDown),
                canonicalize_with(&sh, ScanOrder::BottomUp),
                "{text}"
            );
        }
    }
}
