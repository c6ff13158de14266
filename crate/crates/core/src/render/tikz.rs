use std::fmt::Write;

use super::{name_color, num, LayoutNode, NodeKind, RenderConfig};

const SCALE: f64 = 0.5;

fn esc(text: &str) -> String {
    let mut out = String::new();
    for c in text.chars() {
        match c {
            '_' | '&' | '%' | '$' | '#' | '{' | '}' => {
                out.push('\\');
                out.push(c);
            }
            '\'' => out.push_str("{'}"),
            '?' => out.push_str("\\mathord{?}"),
            '⁻' => out.push_str("^{-"),
            '¹' => out.push_str("1}"),
            'α' => out.push_str("\\alpha"),
            'β' => out.push_str("\\beta"),
            'λ' => out.push_str("\\lambda"),
            'ρ' => out.push_str("\\rho"),
            c => out.push(c),
        }
    }
    out
}

fn pt(x: f64, y: f64) -> String {
    format!("({},{})", num(x), num(y))
}

struct Tikz<'a> {
    cfg: &'a RenderConfig,
    out: String,
}

impl Tikz<'_> {
    fn draw(&mut self, points: &[(f64, f64)]) {
        let path: Vec<String> = points.iter().map(|(x, y)| pt(*x, *y)).collect();
        writeln!(self.out, "\\draw[wire] {};", path.join(" -- ")).unwrap();
    }

    fn label(&mut self, x: f64, y: f64, anchor: &str, text: &str) {
        writeln!(self.out, "\\path {} node[port, anchor={anchor}] {{${}$}};", pt(x, y), esc(text)).unwrap();
    }

    fn box_node(&mut self, style: &str, n: &LayoutNode, text: &str) {
        let fill = if self.cfg.color && matches!(n.kind, NodeKind::GenBox | NodeKind::IsoBox) {
            let hex = name_color(&n.label);
            format!(", fill={{rgb,255:red,{};green,{};blue,{}}}",
                u8::from_str_radix(&hex[1..3], 16).unwrap(),
                u8::from_str_radix(&hex[3..5], 16).unwrap(),
                u8::from_str_radix(&hex[5..7], 16).unwrap())
        } else {
            String::new()
        };
        writeln!(
            self.out,
            "\\node[{style}, minimum width={}pt, minimum height={}pt{fill}] at {} {{${text}$}};",
            num(n.rect.w * SCALE),
            num(n.rect.h * SCALE),
            pt(n.rect.x + n.rect.w / 2.0, n.rect.y + n.rect.h / 2.0)
        )
        .unwrap();
    }

    fn port_labels(&mut self, n: &LayoutNode) {
        for p in &n.inputs {
            self.label(n.rect.x, p.y, "west", &p.label);
        }
        for p in &n.outputs {
            self.label(n.rect.right(), p.y, "east", &p.label);
        }
    }

    fn node(&mut self, n: &LayoutNode) {
        for c in &n.children {
            self.node(c);
        }
        for w in &n.wires {
            self.draw(&w.points);
        }
        match n.kind {
            NodeKind::GenBox => {
                self.box_node("box", n, &esc(&n.label));
                self.port_labels(n);
            }
            NodeKind::IsoBox => {
                self.box_node("iso", n, &esc(&n.label));
                self.port_labels(n);
            }
            NodeKind::InverseBox => {
                let w = n.children[0].rect.x - n.rect.x;
                let h = n.rect.h.min(self.cfg.unit);
                writeln!(
                    self.out,
                    "\\path[marker] {} rectangle {} node[midway, port] {{$-1$}};",
                    pt(n.rect.x, n.rect.y),
                    pt(n.rect.x + w, n.rect.y + h)
                )
                .unwrap();
            }
            NodeKind::Structural(_) => {
                let sub = esc(n.sublabel.as_deref().unwrap_or(""));
                self.box_node("structural", n, &format!("{}_{{{sub}}}", esc(&n.label)));
            }
            NodeKind::IdWire => {
                if n.inputs.is_empty() {
                    let (x, y) = (n.rect.x + n.rect.w / 2.0, n.rect.y + n.rect.h / 2.0);
                    self.label(x, y, "center", "I");
                } else {
                    self.port_labels(n);
                }
            }
            NodeKind::BraidCross => {}
            NodeKind::CompGroup | NodeKind::TensorGroup => {
                if self.cfg.group_boxes {
                    let style = if n.kind == NodeKind::CompGroup { "comp" } else { "tensor" };
                    writeln!(
                        self.out,
                        "\\path[{style}] {} rectangle {};",
                        pt(n.rect.x, n.rect.y),
                        pt(n.rect.right(), n.rect.bottom())
                    )
                    .unwrap();
                }
            }
        }
    }
}

/// A `tikzpicture` using the layout's coordinates, with the y axis
/// pointing down as in SVG. Wires are the only `\draw` commands.
pub fn emit_tikz(root: &LayoutNode, cfg: &RenderConfig) -> String {
    let mut t = Tikz {
        cfg,
        out: String::new(),
    };
    let s = num(SCALE);
    writeln!(
        t.out,
        "\\begin{{tikzpicture}}[x={s}pt, y=-{s}pt,\n  \
         wire/.style={{line width={w}pt}},\n  \
         box/.style={{draw, fill=white, rectangle, inner sep=0pt, line width={w}pt}},\n  \
         iso/.style={{box, line width={iso}pt}},\n  \
         structural/.style={{box, dashed}},\n  \
         marker/.style={{draw, fill=white}},\n  \
         comp/.style={{draw=gray, line width={g}pt}},\n  \
         tensor/.style={{draw=gray, dashed, line width={g}pt}},\n  \
         port/.style={{font=\\scriptsize, inner sep=1pt}}]",
        w = num(cfg.stroke * SCALE),
        iso = num(cfg.stroke * SCALE * 2.5),
        g = num(cfg.group_stroke * SCALE),
    )
    .unwrap();
    t.node(root);
    let stub = cfg.unit * 0.75;
    for p in &root.inputs {
        t.draw(&[(-stub, p.y), (0.0, p.y)]);
        t.label(-stub, p.y, "east", &p.label);
    }
    for p in &root.outputs {
        t.draw(&[(root.rect.w, p.y), (root.rect.w + stub, p.y)]);
        t.label(root.rect.w + stub, p.y, "west", &p.label);
    }
    if root.inputs.is_empty() {
        t.label(-stub, root.rect.h / 2.0, "east", "I");
    }
    if root.outputs.is_empty() {
        t.label(root.rect.w + stub, root.rect.h / 2.0, "west", "I");
    }
    t.out.push_str("\\end{tikzpicture}\n");
    t.out
}
