//! Rewriting with a rule `f ; g => h` where the redex is split across
//! parentheses, plus regrouping with `partner`.

use moncat::parse::{parse_expr, parse_rules, parse_signature};
use moncat::tactics::{assoc_rw, partner};

fn main() {
    let sig = parse_signature(include_str!("../data/rewrite.sig")).unwrap();
    let rules = parse_rules(include_str!("../data/rewrite.rules"), &sig).unwrap();
    let fuse = rules.get("fuse").unwrap();

    for text in ["i * (e ; f ; g)", "i * ((e ; f) ; g)"] {
        let t = parse_expr(text, &sig).unwrap();
        println!("{text}  ~>  {}", assoc_rw(&t, fuse, &sig).unwrap());
    }

    let t = parse_expr("(e ; f) ; g", &sig).unwrap();
    let f = parse_expr("f", &sig).unwrap();
    let g = parse_expr("g", &sig).unwrap();
    println!("partner f g in {t}:  {}", partner(&t, &f, &g, &sig).unwrap());
}
