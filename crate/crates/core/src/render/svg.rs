use std::fmt::Write;

use super::{name_color, num, LayoutNode, NodeKind, RenderConfig};

fn esc(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

struct Svg<'a> {
    cfg: &'a RenderConfig,
    out: String,
}

impl Svg<'_> {
    fn text(&mut self, x: f64, y: f64, anchor: &str, class: &str, body: &str) {
        writeln!(
            self.out,
            r#"<text class="{class}" x="{}" y="{}" text-anchor="{anchor}">{body}</text>"#,
            num(x),
            num(y)
        )
        .unwrap();
    }

    fn wire(&mut self, points: &[(f64, f64)], label: &str) {
        let pts: Vec<String> = points.iter().map(|(x, y)| format!("{},{}", num(*x), num(*y))).collect();
        let stroke = if self.cfg.color {
            format!(r#" stroke="{}""#, name_color(&format!("wire:{label}")))
        } else {
            String::new()
        };
        writeln!(self.out, r#"<polyline class="wire" points="{}"{stroke}/>"#, pts.join(" ")).unwrap();
    }

    fn rect(&mut self, class: &str, r: &super::Rect, fill: Option<String>) {
        let fill = fill.map(|f| format!(r#" fill="{f}""#)).unwrap_or_default();
        writeln!(
            self.out,
            r#"<rect class="{class}" x="{}" y="{}" width="{}" height="{}"{fill}/>"#,
            num(r.x),
            num(r.y),
            num(r.w),
            num(r.h)
        )
        .unwrap();
    }

    fn port_labels(&mut self, n: &LayoutNode) {
        let inset = self.cfg.font_size * 0.2;
        let dy = self.cfg.font_size * 0.35;
        for p in &n.inputs {
            self.text(n.rect.x + inset, p.y + dy, "start", "port", &esc(&p.label));
        }
        for p in &n.outputs {
            self.text(n.rect.right() - inset, p.y + dy, "end", "port", &esc(&p.label));
        }
    }

    fn fill(&self, name: &str) -> Option<String> {
        self.cfg.color.then(|| name_color(name))
    }

    fn node(&mut self, n: &LayoutNode) {
        for c in &n.children {
            self.node(c);
        }
        for w in &n.wires {
            self.wire(&w.points, &w.label);
        }
        let cx = n.rect.x + n.rect.w / 2.0;
        let cy = n.rect.y + n.rect.h / 2.0 + self.cfg.font_size * 0.35;
        match n.kind {
            NodeKind::GenBox | NodeKind::IsoBox => {
                let class = if n.kind == NodeKind::IsoBox { "iso" } else { "box" };
                self.rect(class, &n.rect, self.fill(&n.label));
                self.text(cx, cy, "middle", "label", &esc(&n.label));
                self.port_labels(n);
            }
            NodeKind::InverseBox => {
                let marker = super::Rect {
                    w: n.children[0].rect.x - n.rect.x,
                    h: n.rect.h.min(self.cfg.unit),
                    ..n.rect
                };
                self.rect("marker", &marker, None);
                self.text(
                    marker.x + marker.w / 2.0,
                    marker.y + marker.h / 2.0 + self.cfg.font_size * 0.3,
                    "middle",
                    "sub",
                    "-1",
                );
            }
            NodeKind::Structural(_) => {
                self.rect("structural", &n.rect, None);
                let sub = n.sublabel.as_deref().unwrap_or("");
                writeln!(
                    self.out,
                    r#"<text class="label" x="{}" y="{}" text-anchor="middle">{}<tspan class="sub" dy="3">{}</tspan></text>"#,
                    num(cx),
                    num(cy),
                    esc(&n.label),
                    esc(sub)
                )
                .unwrap();
            }
            NodeKind::IdWire => {
                if n.inputs.is_empty() {
                    self.text(cx, cy, "middle", "port", "I");
                } else {
                    self.port_labels(n);
                }
            }
            NodeKind::BraidCross => {
                if n.label != "β" {
                    self.text(cx, n.rect.y + self.cfg.font_size, "middle", "sub", &esc(&n.label));
                }
            }
            NodeKind::CompGroup | NodeKind::TensorGroup => {
                if self.cfg.group_boxes {
                    let class = if n.kind == NodeKind::CompGroup { "comp" } else { "tensor" };
                    self.rect(class, &n.rect, None);
                }
            }
        }
    }
}

/// A standalone SVG document. Children are drawn before their parent's
/// border; the output depends only on the layout and the config.
pub fn emit_svg(root: &LayoutNode, cfg: &RenderConfig) -> String {
    let margin = cfg.unit * 1.5;
    let width = root.rect.w + 2.0 * margin;
    let height = root.rect.h + 2.0 * margin;
    let mut svg = Svg {
        cfg,
        out: String::new(),
    };
    writeln!(
        svg.out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(width),
        h = num(height)
    )
    .unwrap();
    let group_stroke = num(cfg.group_stroke);
    writeln!(
        svg.out,
        "<style>\n\
         .wire {{ fill: none; stroke: #000; stroke-width: {s}; }}\n\
         .box, .structural, .marker {{ fill: #fff; stroke: #000; stroke-width: {s}; }}\n\
         .iso {{ fill: #fff; stroke: #000; stroke-width: {iso}; }}\n\
         .structural {{ stroke-dasharray: 2 2; }}\n\
         .comp, .tensor {{ fill: none; stroke: #777; stroke-width: {group_stroke}; }}\n\
         .tensor {{ stroke-dasharray: 4 2; }}\n\
         text {{ font-family: serif; font-size: {f}px; }}\n\
         .port, .sub {{ font-size: {p}px; }}\n\
         </style>",
        s = num(cfg.stroke),
        iso = num(cfg.stroke * 2.5),
        f = num(cfg.font_size),
        p = num(cfg.font_size * 0.75),
    )
    .unwrap();
    writeln!(svg.out, r#"<g transform="translate({m},{m})">"#, m = num(margin)).unwrap();
    svg.node(root);
    let stub = cfg.unit * 0.75;
    let dy = cfg.font_size * 0.35;
    for p in &root.inputs {
        svg.wire(&[(-stub, p.y), (0.0, p.y)], &p.label);
        svg.text(-stub - 2.0, p.y + dy, "end", "port", &esc(&p.label));
    }
    for p in &root.outputs {
        svg.wire(&[(root.rect.w, p.y), (root.rect.w + stub, p.y)], &p.label);
        svg.text(root.rect.w + stub + 2.0, p.y + dy, "start", "port", &esc(&p.label));
    }
    let mid = root.rect.h / 2.0 + dy;
    if root.inputs.is_empty() {
        svg.text(-stub, mid, "end", "port", "I");
    }
    if root.outputs.is_empty() {
        svg.text(root.rect.w + stub, mid, "start", "port", "I");
    }
    svg.out.push_str("</g>\n</svg>\n");
    svg.out
}
