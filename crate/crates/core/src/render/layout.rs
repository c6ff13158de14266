use crate::error::TypeError;
use crate::term::{atom_type, typecheck, Mor, Obj, Signature};

use super::RenderConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructKind {
    Assoc,
    AssocInv,
    LUnit,
    LUnitInv,
    RUnit,
    RUnitInv,
}

impl StructKind {
    pub fn symbol(self) -> &'static str {
        match self {
            StructKind::Assoc => "α",
            StructKind::AssocInv => "α⁻¹",
            StructKind::LUnit => "λ",
            StructKind::LUnitInv => "λ⁻¹",
            StructKind::RUnit => "ρ",
            StructKind::RUnitInv => "ρ⁻¹",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    GenBox,
    IsoBox,
    /// An inverted generator: the generator's box plus a marker on its left.
    InverseBox,
    IdWire,
    Structural(StructKind),
    BraidCross,
    CompGroup,
    TensorGroup,
}

impl NodeKind {
    pub fn is_group(self) -> bool {
        matches!(self, NodeKind::CompGroup | NodeKind::TensorGroup)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rect {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

impl Rect {
    pub fn right(&self) -> f64 {
        self.x + self.w
    }

    pub fn bottom(&self) -> f64 {
        self.y + self.h
    }

    pub fn contains(&self, other: &Rect) -> bool {
        const EPS: f64 = 1e-9;
        other.x >= self.x - EPS
            && other.y >= self.y - EPS
            && other.right() <= self.right() + EPS
            && other.bottom() <= self.bottom() + EPS
    }

    pub fn overlaps(&self, other: &Rect) -> bool {
        const EPS: f64 = 1e-9;
        self.x < other.right() - EPS
            && other.x < self.right() - EPS
            && self.y < other.bottom() - EPS
            && other.y < self.bottom() - EPS
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Port {
    pub y: f64,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Wire {
    pub points: Vec<(f64, f64)>,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LayoutNode {
    pub kind: NodeKind,
    pub rect: Rect,
    pub label: String,
    /// Object subscript of structural boxes.
    pub sublabel: Option<String>,
    pub inputs: Vec<Port>,
    pub outputs: Vec<Port>,
    pub wires: Vec<Wire>,
    pub children: Vec<LayoutNode>,
}

impl LayoutNode {
    fn translate(&mut self, dx: f64, dy: f64) {
        self.rect.x += dx;
        self.rect.y += dy;
        for p in self.inputs.iter_mut().chain(self.outputs.iter_mut()) {
            p.y += dy;
        }
        for w in &mut self.wires {
            for pt in &mut w.points {
                pt.0 += dx;
                pt.1 += dy;
            }
        }
        for c in &mut self.children {
            c.translate(dx, dy);
        }
    }

    /// Pre-order traversal.
    pub fn walk(&self) -> Vec<&LayoutNode> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.walk());
        }
        out
    }

    /// Atom nodes, in term order.
    pub fn leaves(&self) -> Vec<&LayoutNode> {
        if self.kind.is_group() {
            self.children.iter().flat_map(LayoutNode::leaves).collect()
        } else {
            vec![self]
        }
    }
}

fn ports(y: f64, h: f64, labels: Vec<String>) -> Vec<Port> {
    let n = labels.len() as f64;
    labels
        .into_iter()
        .enumerate()
        .map(|(i, label)| Port {
            y: y + (i as f64 + 0.5) * h / n,
            label,
        })
        .collect()
}

fn text_width(text: &str, cfg: &RenderConfig) -> f64 {
    text.chars().count() as f64 * cfg.font_size * 0.6
}

fn leaf(kind: NodeKind, label: String, w: f64, dom: &Obj, cod: &Obj, cfg: &RenderConfig) -> LayoutNode {
    let (ins, outs) = (dom.wires(), cod.wires());
    let h = ins.len().max(outs.len()).max(1) as f64 * cfg.unit;
    LayoutNode {
        kind,
        rect: Rect { x: 0.0, y: 0.0, w, h },
        label,
        sublabel: None,
        inputs: ports(0.0, h, ins),
        outputs: ports(0.0, h, outs),
        wires: Vec::new(),
        children: Vec::new(),
    }
}

fn box_width(label: &str, cfg: &RenderConfig) -> f64 {
    (2.0 * cfg.unit).max(text_width(label, cfg) + 2.0 * cfg.padding)
}

/// Generator boxes also make room for the port labels printed inside.
fn gen_width(label: &str, dom: &Obj, cod: &Obj, cfg: &RenderConfig) -> f64 {
    let widest = dom
        .wires()
        .iter()
        .chain(&cod.wires())
        .map(|w| w.chars().count())
        .max()
        .unwrap_or(0);
    box_width(label, cfg) + 2.0 * widest as f64 * cfg.font_size * 0.45
}

fn atom_node(atom: &Mor, sig: &Signature, cfg: &RenderConfig) -> Result<LayoutNode, TypeError> {
    let ty = atom_type(atom, sig)?;
    let structural = |kind: StructKind, objs: &[&Obj]| {
        let sub = objs.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(",");
        let w = box_width(&sub, cfg).max(text_width(kind.symbol(), cfg) + 2.0 * cfg.padding);
        let mut n = leaf(NodeKind::Structural(kind), kind.symbol().into(), w, &ty.dom, &ty.cod, cfg);
        n.sublabel = Some(sub);
        n
    };
    Ok(match atom {
        Mor::Gen(name) => {
            let iso = sig.morphism(name).is_some_and(|d| d.iso);
            let kind = if iso { NodeKind::IsoBox } else { NodeKind::GenBox };
            leaf(kind, name.clone(), gen_width(name, &ty.dom, &ty.cod, cfg), &ty.dom, &ty.cod, cfg)
        }
        Mor::Inv(name) => {
            let marker = cfg.unit * 0.6;
            let w = gen_width(name, &ty.dom, &ty.cod, cfg);
            let mut inner = leaf(NodeKind::IsoBox, name.clone(), w, &ty.cod, &ty.dom, cfg);
            inner.translate(marker, 0.0);
            let mut n = leaf(NodeKind::InverseBox, name.clone(), marker + inner.rect.w, &ty.dom, &ty.cod, cfg);
            n.children.push(inner);
            n
        }
        Mor::Id(a) => {
            let w = 1.5 * cfg.unit;
            let mut n = leaf(NodeKind::IdWire, a.to_string(), w, a, a, cfg);
            n.wires = n
                .inputs
                .iter()
                .map(|p| Wire {
                    points: vec![(0.0, p.y), (w, p.y)],
                    label: p.label.clone(),
                })
                .collect();
            n
        }
        Mor::Assoc(a, b, c) => structural(StructKind::Assoc, &[a, b, c]),
        Mor::AssocInv(a, b, c) => structural(StructKind::AssocInv, &[a, b, c]),
        Mor::LUnit(a) => structural(StructKind::LUnit, &[a]),
        Mor::LUnitInv(a) => structural(StructKind::LUnitInv, &[a]),
        Mor::RUnit(a) => structural(StructKind::RUnit, &[a]),
        Mor::RUnitInv(a) => structural(StructKind::RUnitInv, &[a]),
        Mor::Braid(a, b) | Mor::BraidInv(a, b) => {
            let (m, n) = (a.wires().len(), b.wires().len());
            let w = 2.0 * cfg.unit;
            let label = if matches!(atom, Mor::Braid(..)) { "β" } else { "β⁻¹" };
            let mut node = leaf(NodeKind::BraidCross, label.into(), w, &ty.dom, &ty.cod, cfg);
            // input i goes to the output slot after swapping the two blocks
            let (first, second) = if matches!(atom, Mor::Braid(..)) { (m, n) } else { (n, m) };
            node.wires = node
                .inputs
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let target = if i < first { second + i } else { i - first };
                    Wire {
                        points: vec![(0.0, p.y), (w, node.outputs[target].y)],
                        label: p.label.clone(),
                    }
                })
                .collect();
            node
        }
        Mor::Comp(..) | Mor::Tensor(..) => unreachable!(),
    })
}

fn stub(x1: f64, x2: f64, p: &Port) -> Wire {
    Wire {
        points: vec![(x1, p.y), (x2, p.y)],
        label: p.label.clone(),
    }
}

fn connector(x1: f64, y1: f64, x2: f64, y2: f64, label: &str) -> Wire {
    let points = if (y1 - y2).abs() < 1e-9 {
        vec![(x1, y1), (x2, y2)]
    } else {
        let mid = (x1 + x2) / 2.0;
        vec![(x1, y1), (mid, y1), (mid, y2), (x2, y2)]
    };
    Wire {
        points,
        label: label.to_string(),
    }
}

fn node(term: &Mor, sig: &Signature, cfg: &RenderConfig) -> Result<LayoutNode, TypeError> {
    let pad = cfg.padding;
    match term {
        Mor::Comp(f, g) => {
            let mut a = node(f, sig, cfg)?;
            let mut b = node(g, sig, cfg)?;
            let h = a.rect.h.max(b.rect.h) + 2.0 * pad;
            let w = a.rect.w + b.rect.w + cfg.hgap + 2.0 * pad;
            a.translate(pad, (h - a.rect.h) / 2.0);
            b.translate(a.rect.right() + cfg.hgap, (h - b.rect.h) / 2.0);
            let mut wires: Vec<Wire> = a.inputs.iter().map(|p| stub(0.0, a.rect.x, p)).collect();
            wires.extend(
                a.outputs
                    .iter()
                    .zip(&b.inputs)
                    .map(|(o, i)| connector(a.rect.right(), o.y, b.rect.x, i.y, &o.label)),
            );
            wires.extend(b.outputs.iter().map(|p| stub(b.rect.right(), w, p)));
            Ok(LayoutNode {
                kind: NodeKind::CompGroup,
                rect: Rect { x: 0.0, y: 0.0, w, h },
                label: String::new(),
                sublabel: None,
                inputs: a.inputs.clone(),
                outputs: b.outputs.clone(),
                wires,
                children: vec![a, b],
            })
        }
        Mor::Tensor(f, g) => {
            let mut a = node(f, sig, cfg)?;
            let mut b = node(g, sig, cfg)?;
            let w = a.rect.w.max(b.rect.w) + 2.0 * pad;
            let h = a.rect.h + b.rect.h + cfg.vgap + 2.0 * pad;
            a.translate(pad, pad);
            b.translate(pad, a.rect.bottom() + cfg.vgap);
            let mut wires = Vec::new();
            for c in [&a, &b] {
                wires.extend(c.inputs.iter().map(|p| stub(0.0, c.rect.x, p)));
                wires.extend(c.outputs.iter().map(|p| stub(c.rect.right(), w, p)));
            }
            Ok(LayoutNode {
                kind: NodeKind::TensorGroup,
                rect: Rect { x: 0.0, y: 0.0, w, h },
                label: String::new(),
                sublabel: None,
                inputs: a.inputs.iter().chain(&b.inputs).cloned().collect(),
                outputs: a.outputs.iter().chain(&b.outputs).cloned().collect(),
                wires,
                children: vec![a, b],
            })
        }
        atom => atom_node(atom, sig, cfg),
    }
}

/// Lays out a term as nested boxes: composition side by side, tensor
/// stacked, every composite enclosed in its own group box.
pub fn layout(term: &Mor, sig: &Signature, cfg: &RenderConfig) -> Result<LayoutNode, TypeError> {
    typecheck(term, sig)?;
    node(term, sig, cfg)
}
