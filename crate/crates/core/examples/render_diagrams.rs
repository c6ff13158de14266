//! Writes SVG and TikZ diagrams for a few terms into a temporary directory.
//! Pass a directory as the first argument to keep the files.

use std::path::PathBuf;

use moncat::parse::{parse_expr, parse_signature};
use moncat::render::{emit_svg, emit_tikz, layout, RenderConfig};

fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("moncat-diagrams"));
    std::fs::create_dir_all(&dir).unwrap();

    let sig = parse_signature(include_str!("../data/worked.sig")).unwrap();
    let mut cfg: RenderConfig = include_str!("../data/render.conf").parse().unwrap();
    let terms = [
        ("left", "(f ; g) ; u"),
        ("right", "f ; (g ; u)"),
        ("interchange", "(f ; g) * h"),
        ("structure", "alpha[A',A,B] ; (id[A'] * braid[A,B]) ; alpha_inv[A',B,A]"),
        ("inverse", "runit_inv[C] ; (inv(u) * id[I]) ; runit[C]"),
    ];
    for (name, text) in terms {
        let t = parse_expr(text, &sig).unwrap();
        let node = layout(&t, &sig, &cfg).unwrap();
        std::fs::write(dir.join(format!("{name}.svg")), emit_svg(&node, &cfg)).unwrap();
        std::fs::write(dir.join(format!("{name}.tex")), emit_tikz(&node, &cfg)).unwrap();
        println!("{name:<12} {:>4} x {:<4} {text}", node.rect.w, node.rect.h);
    }
    cfg.group_boxes = false;
    let t = parse_expr("(f ; g) ; u", &sig).unwrap();
    std::fs::write(dir.join("plain.svg"), emit_svg(&layout(&t, &sig, &cfg).unwrap(), &cfg)).unwrap();
    println!("wrote diagrams to {}", dir.display());
}
