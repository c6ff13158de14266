//! Deciding equalities that hold by structure alone.
//!
//! Run with `cargo run --example coherence`.

use moncat::coherence::{monoidal_eq, normal_form};
use moncat::parse::{parse_expr, parse_signature};

fn main() {
    let sig = parse_signature("object A B C D\nmor f : A -> B\nmor g : C -> D\n").unwrap();
    let goals = [
        ("alpha[A,B,C] ; alpha_inv[A,B,C]", "id[(A * B) * C]"),
        ("(f * id[C]) ; (id[B] * g)", "(id[A] * g) ; (f * id[D])"),
        ("lunit_inv[A] ; lunit[A] ; f", "f"),
        ("braid[A,C] ; braid[C,A]", "id[A * C]"),
    ];
    for (lhs, rhs) in goals {
        let (l, r) = (parse_expr(lhs, &sig).unwrap(), parse_expr(rhs, &sig).unwrap());
        let verdict = if monoidal_eq(&l, &r, &sig).unwrap().is_equal() {
            "equal"
        } else {
            "not decided"
        };
        println!("{lhs}  ==  {rhs}\n  {verdict}; normal form {}", normal_form(&l, &sig).unwrap().dump());
    }
}
